#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "interval.hpp"
#include "powerprod.hpp"
#include "util.hpp"

using namespace hc;

TEST_CASE("rational parsing") {
  CHECK(rat_from_string("3/4") == rat(3, 4));
  CHECK(rat_from_string("-7") == Rat(-7));
  CHECK(rat_from_string("1.25") == rat(5, 4));
  CHECK(rat_to_string(rat(-3, 9)) == "-1/3");
}

TEST_CASE("integer helpers") {
  CHECK(isqrt(Int(35)) == 5);
  CHECK(isqrt(Int(36)) == 6);
  CHECK(iroot(Int(80), 3) == 4);
  CHECK(floor_rat(rat(-7, 2)) == -4);
  CHECK(ceil_rat(rat(-7, 2)) == -3);
  CHECK(round_rat(rat(5, 2)) == 3);
  CHECK(round_rat(rat(-5, 2)) == -2);
}

TEST_CASE("factorization") {
  auto f = factor_integer(Int(360));
  CHECK(f[Int(2)] == 3);
  CHECK(f[Int(3)] == 2);
  CHECK(f[Int(5)] == 1);
  auto fr = factor_rational(rat(9, 20));
  CHECK(fr[Int(3)] == 2);
  CHECK(fr[Int(2)] == -2);
  CHECK(fr[Int(5)] == -1);
  CHECK(is_prime(Int("1000000007")));
  CHECK_FALSE(is_prime(Int(1)));
}

TEST_CASE("kronecker symbol") {
  // 5 is a QR mod 11 (4^2 = 16 = 5), so (5|11) = 1
  CHECK(kronecker_symbol(Int(5), Int(11)) == 1);
  CHECK(kronecker_symbol(Int(5), Int(7)) == -1);
  CHECK(kronecker_symbol(Int(-4), Int(5)) == 1);
  CHECK(kronecker_symbol(Int(-4), Int(7)) == -1);
}

TEST_CASE("interval arithmetic contains exact values") {
  Interval a(rat(1, 3), rat(1, 2));
  Interval b(rat(-2, 1), rat(3, 1));
  Interval p = a * b;
  // exact products of endpoints stay inside
  CHECK(p.contains(rat(1, 3) * Rat(-2)));
  CHECK(p.contains(rat(1, 2) * Rat(3)));
  Interval q = a / Interval(rat(2, 1), rat(5, 2));
  CHECK(q.contains(rat(1, 3) / rat(5, 2)));
  CHECK(q.contains(rat(1, 2) / Rat(2)));
}

TEST_CASE("sqrt log pi enclosures") {
  Interval s2 = int_sqrt(Interval(Rat(2)), 80);
  CHECK(s2.lo * s2.lo <= 2);
  CHECK(s2.hi * s2.hi >= 2);
  CHECK(s2.width() < rat(1, Int(1) << 60));

  Interval pi = int_pi(100);
  // 3.14159265358979 < pi < 3.14159265358980
  CHECK(pi.lo > rat_from_string("3.14159265358978"));
  CHECK(pi.hi < rat_from_string("3.14159265358980"));

  Interval l2 = int_log(Interval(Rat(2)), 90);
  CHECK(l2.lo > rat_from_string("0.693147180559944"));
  CHECK(l2.hi < rat_from_string("0.693147180559946"));
  // log(xy) = log x + log y inside enclosures
  Interval l6 = int_log(Interval(Rat(6)), 90);
  Interval l3 = int_log(Interval(Rat(3)), 90);
  CHECK(l6.overlaps(l2 + l3));

  Interval r = int_nth_root(Interval(Rat(5)), 4, 80);
  CHECK(r.power(4).contains(Rat(5)));
}

TEST_CASE("power products") {
  auto a = PowerProduct::from_rational(rat(8, 9));
  auto b = PowerProduct::from_rational(rat(3, 2));
  auto c = a * b * b;  // 8/9 * 9/4 = 2
  CHECK(c.is_rational());
  CHECK(c.to_rational() == 2);
  auto s5 = PowerProduct::prime_power(Int(5), rat(1, 2));
  CHECK(s5.cmp(Rat(2)) > 0);
  CHECK(s5.cmp(Rat(3)) < 0);
  CHECK((s5 * s5).cmp(Rat(5)) == 0);
  Interval v = s5.eval(80);
  CHECK(v.square().contains(Rat(5)));

  // negative values order correctly
  auto m = PowerProduct::from_rational(Rat(-3));
  CHECK(m.cmp(Rat(0)) < 0);
  CHECK(m.cmp(Rat(-2)) < 0);
  CHECK(m.cmp(Rat(-4)) > 0);
}

TEST_CASE("power sums compare exactly") {
  // 5^(1/2) + 2 == 2 + 5^(1/2), and differs from any rational
  PowerSum x(PowerProduct::prime_power(Int(5), rat(1, 2)));
  PowerSum y(Rat(2));
  CHECK(x + y == y + x);
  CHECK_FALSE((x + y).is_rational());
  PowerSum z = (x + y) * (x - y);  // 5 - 4 = 1
  CHECK(z.is_rational());
  CHECK(z.to_rational() == 1);
  // (5^(1/2))^2 folds into the rational part
  PowerSum sq = x * x;
  CHECK(sq.is_rational());
  CHECK(sq.to_rational() == 5);
  Interval ev = (x + y).eval(64);
  CHECK(ev.contains_zero() == false);
  CHECK(ev.lo > 4);
  CHECK(ev.hi < rat_from_string("4.2360679775"));
}

TEST_CASE("rng determinism") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; i++) CHECK(a.next() == b.next());
  Rng c(7);
  long inside = 0;
  for (int i = 0; i < 1000; i++)
    if (c.uniform() < 0.5) inside++;
  CHECK(inside > 400);
  CHECK(inside < 600);
}
