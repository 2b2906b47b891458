#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "ideal.hpp"

using namespace hc;

namespace {

Elem sqrt_elem(const OrderPtr& o) { return Elem{o, o->from_power({Rat(0), Rat(1)})}; }

Ideal random_integral_ideal(const OrderPtr& o, Rng& rng) {
  // a principal small ideal times a small prime, to keep norms factorable
  long d = o->degree();
  while (true) {
    QVec c(d);
    for (long i = 0; i < d; i++) c[i] = Rat(rng.range(-4, 4));
    Elem a{o, c};
    if (a.is_zero()) continue;
    long p = std::vector<long>{2, 3, 5, 7}[rng.below(4)];
    auto ps = factor_rational_prime(o, Int(p));
    Ideal out = Ideal::principal(a) * ps[rng.below(ps.size())].ideal;
    return out;
  }
}

}  // namespace

TEST_CASE("principal and unit ideals") {
  auto o = quadratic_order(5);
  Ideal unit = Ideal::from_generators({Elem::one(o)});
  CHECK(unit.is_whole());
  CHECK(unit.norm() == 1);
  // norm of sqrt5 O in the degree-8 field is 5^4
  auto o8 = appendix_field().order;
  auto s5 = appendix_field().monomials[4];  // mask for the sqrt5 generator
  CHECK((s5 * s5) == Elem::rational(o8, Rat(5)));
  Ideal i5 = Ideal::principal(s5);
  CHECK(i5.norm() == pow_rat_int(Rat(5), 4));
}

TEST_CASE("hnf is canonical across generating sets") {
  auto o = quadratic_order(2);
  Elem s2 = sqrt_elem(o);
  Elem a = Elem::rational(o, Rat(6)) + s2 * Rat(2);
  Elem b = Elem::rational(o, Rat(10));
  Ideal i1 = Ideal::from_generators({a, b});
  Ideal i2 = Ideal::from_generators({b, a, a + b, a * Elem::rational(o, Rat(3))});
  CHECK(i1 == i2);
}

TEST_CASE("ideal gcd") {
  auto q = rationals();
  Ideal six = Ideal::rational(q, Rat(6));
  Ideal ten = Ideal::rational(q, Rat(10));
  CHECK(six + ten == Ideal::rational(q, Rat(2)));
  auto o = quadratic_order(5);
  Ideal any = Ideal::principal(Elem::rational(o, Rat(9)) + sqrt_elem(o));
  CHECK(any + Ideal::whole(o) == Ideal::whole(o));
}

TEST_CASE("products intersections and inverses") {
  auto q = rationals();
  CHECK(Ideal::rational(q, Rat(4)).intersect(Ideal::rational(q, Rat(6))) ==
        Ideal::rational(q, Rat(12)));
  auto o = quadratic_order(2);
  Elem s2 = sqrt_elem(o);
  Ideal a = Ideal::principal(Elem::one(o) + s2 * Rat(3));  // norm |1-18| = 17
  CHECK(a.norm() == 17);
  CHECK(a.intersect(a) == a);
  Ideal ainv = a.inverse();
  CHECK(a * ainv == Ideal::whole(o));
  CHECK(ainv.norm() == rat(1, 17));
  // A*B subset A cap B for integral ideals; equality when coprime
  Ideal b = Ideal::principal(s2);
  CHECK((a * b).norm() == a.norm() * b.norm());
  CHECK(a.intersect(b) == a * b);  // coprime: norms 17 and 2
  CHECK((a.intersect(b)).contains(a * b));
}

TEST_CASE("prime splitting by min-poly factorization") {
  auto o = quadratic_order(2);
  // 5 inert in Q(sqrt2)
  auto p5 = factor_rational_prime(o, Int(5));
  REQUIRE(p5.size() == 1);
  CHECK(p5[0].ram_e == 1);
  CHECK(p5[0].res_f == 2);
  CHECK(p5[0].ideal.norm() == 25);
  // 7 splits: 3^2 = 2 mod 7
  auto p7 = factor_rational_prime(o, Int(7));
  REQUIRE(p7.size() == 2);
  CHECK(p7[0].res_f == 1);
  // 2 ramifies in Z[i]
  auto oi = quadratic_order(-1);
  auto p2 = factor_rational_prime(oi, Int(2));
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].ram_e == 2);
  CHECK(p2[0].res_f == 1);
}

TEST_CASE("appendix field: 5 O = P1^2 P2^2 with known two-element generators") {
  auto& mq = appendix_field();
  auto o = mq.order;
  auto ps = factor_rational_prime(o, Int(5));
  REQUIRE(ps.size() == 2);
  for (auto& p : ps) {
    CHECK(p.ram_e == 2);
    CHECK(p.res_f == 2);
    CHECK(p.ideal.norm() == 25);
  }
  Ideal prod = ps[0].ideal.pow(2) * ps[1].ideal.pow(2);
  CHECK(prod == Ideal::rational(o, Rat(5)));
  // ideal gcd picks out the common prime: (P1^2, P1 P2) = P1
  CHECK(ps[0].ideal.pow(2) + ps[0].ideal * ps[1].ideal == ps[0].ideal);
  // the element sqrt15 - sqrt10 + sqrt6 -+ 1 together with 5 generates each
  // prime (masks: sqrt2=1, sqrt3=2, sqrt5=4)
  Elem g = mq.monomials[2 | 4] - mq.monomials[1 | 4] + mq.monomials[1 | 2] - Elem::one(o);
  Ideal gen1 = Ideal::from_generators({Elem::rational(o, Rat(5)), g});
  Elem g2 = mq.monomials[2 | 4] - mq.monomials[1 | 4] + mq.monomials[1 | 2] + Elem::one(o);
  Ideal gen2 = Ideal::from_generators({Elem::rational(o, Rat(5)), g2});
  CHECK(((gen1 == ps[0].ideal && gen2 == ps[1].ideal) ||
         (gen1 == ps[1].ideal && gen2 == ps[0].ideal)));
  // sqrt5 O_K = P1 P2, so (sqrt5 O)^2 = 5 O
  Ideal s5 = Ideal::principal(mq.monomials[4]);
  CHECK(s5 == ps[0].ideal * ps[1].ideal);
}

TEST_CASE("valuations") {
  auto& mq = appendix_field();
  auto o = mq.order;
  auto ps = factor_rational_prime(o, Int(5));
  Ideal s5 = Ideal::principal(mq.monomials[4]);
  CHECK(valuation(s5, ps[0]) == 1);
  CHECK(valuation(s5.pow(2), ps[0]) == 2);
  CHECK(valuation(Ideal::whole(o), ps[0]) == 0);
  CHECK(valuation(ps[0].ideal.pow(3), ps[0]) == 3);
  CHECK(valuation(ps[0].ideal.inverse(), ps[0]) == -1);
  // v_P(AB) = v_P(A) + v_P(B) on random ideals
  Rng rng(5);
  auto o2 = quadratic_order(2);
  auto pr = factor_rational_prime(o2, Int(7));
  for (int t = 0; t < 10; t++) {
    Ideal a = random_integral_ideal(o2, rng);
    Ideal b = random_integral_ideal(o2, rng);
    CHECK(valuation(a * b, pr[0]) == valuation(a, pr[0]) + valuation(b, pr[0]));
  }
}

TEST_CASE("moebius and divisors") {
  auto& mq = appendix_field();
  auto o = mq.order;
  auto ps = factor_rational_prime(o, Int(5));
  CHECK(moebius_ideal(Ideal::whole(o)) == 1);
  CHECK(moebius_ideal(ps[0].ideal) == -1);
  CHECK(moebius_ideal(ps[0].ideal * ps[1].ideal) == 1);
  CHECK(moebius_ideal(ps[0].ideal.pow(2)) == 0);
  // divisors of sqrt5 O: O, P1, P2, P1 P2
  Ideal s5 = Ideal::principal(mq.monomials[4]);
  auto divs = divisors(s5);
  REQUIRE(divs.size() == 4);
  CHECK(divs[0].is_whole());
  CHECK(divs[3] == s5);
  auto q = rationals();
  auto dq = divisors(Ideal::rational(q, Rat(5)));
  REQUIRE(dq.size() == 2);
  // divisors(O) = [O]
  CHECK(divisors(Ideal::whole(o)).size() == 1);
}

TEST_CASE("up and down maps") {
  auto q = rationals();
  auto& mq = appendix_field();
  auto o = mq.order;
  auto ext = extension_between(q, o);
  auto ps = factor_rational_prime(o, Int(5));
  // down(P1) = 5Z
  CHECK(contract_down(ps[0].ideal, ext) == Ideal::rational(q, Rat(5)));
  // up(5Z) = P1^2 P2^2
  CHECK(extend_up(Ideal::rational(q, Rat(5)), ext) == ps[0].ideal.pow(2) * ps[1].ideal.pow(2));
  // down(up B) = B and up(AB) = up A up B on random rational ideals
  Rng rng(17);
  for (int t = 0; t < 20; t++) {
    Rat r1 = rat(rng.range(1, 400), rng.range(1, 60));
    Rat r2 = rat(rng.range(1, 400), rng.range(1, 60));
    Ideal b1 = Ideal::rational(q, r1);
    Ideal b2 = Ideal::rational(q, r2);
    CHECK(contract_down(extend_up(b1, ext), ext) == b1);
    CHECK(extend_up(b1 * b2, ext) == extend_up(b1, ext) * extend_up(b2, ext));
  }
  // A subseteq up(down A), and down distributes over ideal gcd with ups
  Rng rng2(23);
  for (int t = 0; t < 25; t++) {
    Ideal A = random_integral_ideal(o, rng2);
    Ideal B = Ideal::rational(q, Rat(rng2.range(1, 90)));
    CHECK(A.contains(extend_up(contract_down(A, ext), ext)));
    CHECK(contract_down(A + extend_up(B, ext), ext) == contract_down(A, ext) + B);
    // divisibility transfer: A | up(B) iff down(A) | B
    bool lhs = A.divides(extend_up(B, ext));
    bool rhs = contract_down(A, ext).divides(B);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("down for ramified quadratic") {
  auto q = rationals();
  auto o5 = quadratic_order(5);
  auto ext = extension_between(q, o5);
  Elem s5 = sqrt_elem(o5);
  Ideal p = Ideal::principal(s5);  // the ramified prime over 5
  CHECK(contract_down(p, ext) == Ideal::rational(q, Rat(5)));
}

TEST_CASE("crt consistency") {
  auto o = quadratic_order(2);
  auto p7 = factor_rational_prime(o, Int(7));
  REQUIRE(p7.size() == 2);
  Ideal a = p7[0].ideal.pow(2);
  Ideal b = p7[1].ideal.pow(3);
  CHECK((a + b).is_whole());
  CHECK(a.intersect(b) == a * b);
}

TEST_CASE("part over a rational prime") {
  auto& mq = appendix_field();
  auto o = mq.order;
  auto ps = factor_rational_prime(o, Int(5));
  Ideal s5 = Ideal::principal(mq.monomials[4]);
  Ideal mixed = s5 * Ideal::rational(o, Rat(2));
  CHECK(part_over(mixed, Int(5)) == s5);
}

TEST_CASE("index divisor without override is rejected") {
  // build a copy of the degree-8 order without its overrides
  auto& mq = appendix_field();
  auto o = mq.order;
  auto bare = Order::create("bare8", o->min_poly(), o->basis(), o->invariants(), {});
  CHECK_THROWS_AS(factor_rational_prime(bare, Int(2)), Error);
  try {
    factor_rational_prime(bare, Int(2));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexDivisorNoFixture);
  }
}

TEST_CASE("norm multiplicativity on random ideals") {
  auto o = quadratic_order(5);
  Rng rng(29);
  for (int t = 0; t < 100; t++) {
    Ideal a = random_integral_ideal(o, rng);
    Ideal b = random_integral_ideal(o, rng);
    CHECK((a * b).norm() == a.norm() * b.norm());
  }
}

TEST_CASE("ideal enumeration by norm") {
  auto q = rationals();
  auto all = ideals_up_to_norm(q, 10, false);
  CHECK(all.size() == 10);  // nZ for n = 1..10
  auto sf = ideals_up_to_norm(q, 10, true);
  CHECK(sf.size() == 7);  // squarefree n in 1..10: 1,2,3,5,6,7,10
  auto oi = quadratic_order(-1);
  auto gi = ideals_up_to_norm(oi, 5, false);
  // norms: 1, 2, 4, 5, 5, 4(=2^2)... count ideals of Z[i] with norm <= 5:
  // O (1), (1+i) (2), (2) (4), (1+i)^2=(2i) same as (2)... careful: (1+i)^2 = 2 O
  // distinct: O, (1+i), (1+i)^2, (2+i), (2-i) -> 5
  CHECK(gi.size() == 5);
}

TEST_CASE("gcd contraction identities for shipped thetas") {
  // down(theta O, up B) = B for every divisor B of down(theta O)
  auto q = rationals();
  struct Case {
    OrderPtr top;
    Elem theta;
  };
  std::vector<Case> cases;
  {
    auto o2 = quadratic_order(2);
    cases.push_back({o2, Elem{o2, o2->from_power({Rat(0), Rat(1)})}});
    auto o5 = quadratic_order(5);
    cases.push_back({o5, Elem{o5, o5->from_power({Rat(0), Rat(1)})}});
    cases.push_back({o5, Elem::rational(o5, Rat(6)) + Elem{o5, o5->from_power({Rat(0), Rat(1)})}});
    auto oi = quadratic_order(-1);
    cases.push_back({oi, Elem::rational(oi, Rat(2)) + Elem{oi, oi->from_power({Rat(0), Rat(1)})}});
  }
  for (auto& cs : cases) {
    auto ext = extension_between(q, cs.top);
    Ideal d_top = Ideal::principal(cs.theta);
    Ideal d_base = contract_down(d_top, ext);
    for (auto& b : divisors(d_base)) {
      CHECK(contract_down(d_top + extend_up(b, ext), ext) == b);
    }
  }
  // down(A, up B) = (down A, B) on 100 random pairs
  auto& mq = appendix_field();
  auto ext8 = extension_between(q, mq.order);
  Rng rng(97);
  for (int t = 0; t < 100; t++) {
    Ideal a = random_integral_ideal(mq.order, rng);
    Ideal b = Ideal::rational(q, Rat(rng.range(1, 120)));
    CHECK(contract_down(a + extend_up(b, ext8), ext8) == contract_down(a, ext8) + b);
  }
}

TEST_CASE("gcd and lcm multiply to the product") {
  // (A + B)(A cap B) = A B in a Dedekind domain
  for (long m : {5L, -1L, 2L}) {
    auto o = quadratic_order(m);
    Rng rng(1000 + m);
    for (int t = 0; t < 30; t++) {
      Ideal a = random_integral_ideal(o, rng);
      Ideal b = random_integral_ideal(o, rng);
      CHECK((a + b) * a.intersect(b) == a * b);
    }
  }
  auto& mq = appendix_field();
  Rng rng(77);
  for (int t = 0; t < 10; t++) {
    Ideal a = random_integral_ideal(mq.order, rng);
    Ideal b = random_integral_ideal(mq.order, rng);
    CHECK((a + b) * a.intersect(b) == a * b);
  }
}

TEST_CASE("contraction round trips over an imaginary quadratic base") {
  auto qi = quadratic_order(-1);
  auto& mq = gaussian_sqrt_field(3);
  auto ext = extension_between(qi, mq.order);
  Rng rng(31);
  for (int t = 0; t < 25; t++) {
    Ideal b = random_integral_ideal(qi, rng);
    CHECK(contract_down(extend_up(b, ext), ext) == b);
    Ideal a = random_integral_ideal(mq.order, rng);
    CHECK(a.contains(extend_up(contract_down(a, ext), ext)));
    CHECK(contract_down(a + extend_up(b, ext), ext) == contract_down(a, ext) + b);
  }
}
