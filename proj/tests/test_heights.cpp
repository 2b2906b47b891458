#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heights.hpp"

using namespace hc;

namespace {
Elem sqrt_elem(const OrderPtr& o) { return Elem{o, o->from_power({Rat(0), Rat(1)})}; }
}

TEST_CASE("finite absolute values") {
  auto& mq = appendix_field();
  auto o = mq.order;
  auto ps = factor_rational_prime(o, Int(5));
  // |sqrt5|_P = 25^(-1/4) at each prime over 5 (v = 1, d_w = 4)
  PowerProduct v = finite_abs(mq.monomials[4], ps[0]);
  CHECK(v == PowerProduct::prime_power(Int(5), rat(-1, 2)));
  // |1|_P = 1
  CHECK(finite_abs(Elem::one(o), ps[0]).is_one());
  // inert prime in a quadratic field: |p|_P = p^-1
  auto o2 = quadratic_order(2);
  auto p5 = factor_rational_prime(o2, Int(5));
  CHECK(finite_abs(Elem::rational(o2, Rat(5)), p5[0]) ==
        PowerProduct::prime_power(Int(5), Rat(-1)));
  // multiplicative in the element
  Elem a = Elem::rational(o2, Rat(10));
  Elem b = Elem::rational(o2, rat(1, 5));
  CHECK(finite_abs(a * b, p5[0]) == finite_abs(a, p5[0]) * finite_abs(b, p5[0]));
}

TEST_CASE("weil heights over Q") {
  auto q = rationals();
  // H(1/2) = 2
  HeightPow h = weil_height_pow_affine({Elem::rational(q, rat(1, 2))});
  CHECK(h.cmp_height(Rat(2)) == 0);
  CHECK(h.cmp_height(rat(19, 10)) > 0);
  CHECK(h.cmp_height(rat(21, 10)) < 0);
  // H(0) = 1 (affine height of the zero tuple is the height of (1:0))
  HeightPow h0 = weil_height_pow_affine({Elem::zero(q)});
  CHECK(h0.cmp_height(Rat(1)) == 0);
  // the elementary max(|a|,b) oracle agrees on 100 samples
  Rng rng(42);
  for (int t = 0; t < 100; t++) {
    Rat x = rat(rng.range(-60, 60), rng.range(1, 40));
    HeightPow hp = weil_height_pow_affine({Elem::rational(q, x)});
    Rat expect = rational_height(x);
    CHECK(hp.cmp_height(expect) == 0);
  }
}

TEST_CASE("height of sqrt p") {
  auto o5 = quadratic_order(5);
  Elem s5 = sqrt_elem(o5);
  HeightPow h = weil_height_pow_affine({s5});
  // H(sqrt5)^2 = 5
  CHECK(h.deg == 2);
  CHECK(h.arch2_exact);
  Rat h4 = h.finite * h.finite * h.arch2;  // H^(2*2)
  CHECK(h4 == 25);
  Interval hv = h.height(64);
  CHECK(hv.square().contains(Rat(5)));
}

TEST_CASE("projective scaling invariance") {
  auto q = rationals();
  Rng rng(9);
  for (int t = 0; t < 30; t++) {
    Rat a = rat(rng.range(-30, 30), rng.range(1, 10));
    Rat b = rat(rng.range(-30, 30), rng.range(1, 10));
    if (a == 0 && b == 0) continue;
    Rat c = rat(rng.range(1, 20), rng.range(1, 20));
    HeightPow h1 = weil_height_pow_projective({Elem::rational(q, a), Elem::rational(q, b)});
    HeightPow h2 =
        weil_height_pow_projective({Elem::rational(q, a * c), Elem::rational(q, b * c)});
    REQUIRE(h1.arch2_exact);
    REQUIRE(h2.arch2_exact);
    CHECK(h1.finite * h1.finite * h1.arch2 == h2.finite * h2.finite * h2.arch2);
  }
}

TEST_CASE("H(alpha) = H(1/alpha)") {
  auto q = rationals();
  Rng rng(10);
  for (int t = 0; t < 30; t++) {
    Rat x = rat(rng.range(1, 50), rng.range(1, 50));
    HeightPow h1 = weil_height_pow_affine({Elem::rational(q, x)});
    HeightPow h2 = weil_height_pow_affine({Elem::rational(q, Rat(1) / x)});
    CHECK(h1.finite * h1.finite * h1.arch2 == h2.finite * h2.finite * h2.arch2);
  }
}

TEST_CASE("gaussian heights are exact") {
  auto oi = quadratic_order(-1);
  Elem i{oi, oi->from_power({Rat(0), Rat(1)})};
  // H(i) = 1
  HeightPow h = weil_height_pow_affine({i});
  CHECK(h.arch2_exact);
  CHECK(h.cmp_height(Rat(1)) == 0);
  // H((3+4i)/5): |.| = 1 at the complex place, finite part 5
  Elem a = (Elem::rational(oi, Rat(3)) + i * Rat(4)) * rat(1, 5);
  HeightPow ha = weil_height_pow_affine({a});
  CHECK(ha.arch2_exact);
  // H((3+4i)/5) = sqrt5: finite part 5, archimedean part 1
  CHECK(ha.finite * ha.finite * ha.arch2 == 25);
  CHECK(ha.cmp_height(rat(22, 10)) > 0);
  CHECK(ha.cmp_height(rat(9, 4)) < 0);
}

TEST_CASE("theta system constants for sqrt p") {
  auto o5 = quadratic_order(5);
  Elem s5 = sqrt_elem(o5);
  auto sys = LipschitzSystem::theta(o5, 1, s5);
  // C_fin = C_inf = sqrt5
  PowerProduct cf = sys.c_fin();
  CHECK(cf == PowerProduct::prime_power(Int(5), rat(1, 2)));
  Interval ci = sys.c_inf(80);
  CHECK(ci.square().contains(Rat(5)));
  // F consists of P^-1, O, P
  auto fn = sys.gauge_ideal_classes();
  CHECK(fn.size() == 3);
  bool has_whole = false;
  for (auto& f : fn)
    if (f.is_whole()) has_whole = true;
  CHECK(has_whole);
}

TEST_CASE("max norm system is the weil height") {
  auto q = rationals();
  auto sys = LipschitzSystem::max_norm(q, 1);
  CHECK(sys.c_fin().is_one());
  CHECK(sys.c_inf(64).contains(Rat(1)));
  CHECK(sys.gauge_ideal_classes().size() == 1);
  Rng rng(11);
  for (int t = 0; t < 20; t++) {
    Rat a = rat(rng.range(-30, 30), rng.range(1, 10));
    Rat b = rat(rng.range(-30, 30), rng.range(1, 10));
    if (a == 0 && b == 0) continue;
    std::vector<Elem> om{Elem::rational(q, a), Elem::rational(q, b)};
    HeightPow h1 = lipschitz_height_pow(sys, om);
    HeightPow h2 = weil_height_pow_projective(om);
    CHECK(h1.finite == h2.finite);
    CHECK(h1.arch2 == h2.arch2);
  }
}

TEST_CASE("theta system gauge ideal") {
  // i(omega) = omega_0 O + theta omega_1 O; at (1,1) over K = Q(sqrt5): O
  auto q = rationals();
  auto o5 = quadratic_order(5);
  auto ext = extension_between(q, o5);
  Elem s5 = sqrt_elem(o5);
  auto sys = LipschitzSystem::theta(o5, 1, s5);
  std::vector<Elem> om{Elem::one(o5), Elem::one(o5)};
  CHECK(sys.gauge_ideal(om).is_whole());
  // omega = (0, 1): i = theta O
  std::vector<Elem> om2{Elem::zero(o5), Elem::one(o5)};
  CHECK(sys.gauge_ideal(om2) == Ideal::principal(s5));
  // i(omega) = O_K(omega) * F with F in the class set (random sampling)
  Rng rng(21);
  auto fn = sys.gauge_ideal_classes();
  for (int t = 0; t < 30; t++) {
    std::vector<Elem> om3{ext->embed(Elem::rational(q, rat(rng.range(-9, 9), rng.range(1, 5)))),
                          ext->embed(Elem::rational(q, rat(rng.range(-9, 9), rng.range(1, 5))))};
    if (om3[0].is_zero() && om3[1].is_zero()) continue;
    Ideal i = sys.gauge_ideal(om3);
    Ideal c = sys.coordinate_ideal(om3);
    Ideal f = i / c;
    bool in_class = false;
    for (auto& g : fn)
      if (g == f) in_class = true;
    CHECK(in_class);
  }
}

TEST_CASE("appendix system") {
  auto& mq = appendix_field();
  auto o = mq.order;
  Elem s2 = mq.monomials[1], s3 = mq.monomials[2], s5 = mq.monomials[4];
  Elem z = Elem::zero(o), one = Elem::one(o);
  auto sys = LipschitzSystem::linear_forms(
      o, 2, {{one, z, z}, {z, one, z}, {z, z, one}, {z, s2 / s5, s3 / s5}});
  // C_fin = sqrt5
  CHECK(sys.c_fin() == PowerProduct::prime_power(Int(5), rat(1, 2)));
  // F: ideals between (sqrt5)^-1 O and sqrt5 O supported at the primes over 5
  auto fn = sys.gauge_ideal_classes();
  CHECK(fn.size() == 9);
  Ideal s5O = Ideal::principal(s5);
  for (auto& f : fn) {
    CHECK(s5O.inverse().contains(f));
    CHECK(f.contains(s5O));
  }
  // i((1:0:0)) = O; height 1
  std::vector<Elem> e0{one, z, z};
  CHECK(sys.gauge_ideal(e0).is_whole());
  HeightPow h = lipschitz_height_pow(sys, e0);
  CHECK(h.cmp_height(Rat(1)) == 0);
  // i((1,1,1)) lands inside (sqrt5)^-1 O
  std::vector<Elem> ones{one, one, one};
  Ideal i111 = sys.gauge_ideal(ones);
  CHECK(s5O.inverse().contains(i111));
  // c_inf encloses (sqrt2+sqrt3)/sqrt5 = 1.40688...
  Interval ci = sys.c_inf(80);
  CHECK(ci.lo > rat_from_string("1.4070521"));
  CHECK(ci.hi < rat_from_string("1.4070523"));
}

TEST_CASE("height comparison sandwich for a lipschitz system") {
  // (C_fin C_inf)^-1 H <= H_N <= C_fin C_inf H on random gaussian points
  auto oi = quadratic_order(-1);
  Elem i{oi, oi->from_power({Rat(0), Rat(1)})};
  Elem theta = Elem::rational(oi, Rat(2)) + i;  // 2 + i
  auto sys = LipschitzSystem::theta(oi, 1, theta);
  PowerProduct cf = sys.c_fin();
  Interval ci = sys.c_inf(96);
  Interval cc = cf.eval(96) * ci;
  Rng rng(31);
  for (int t = 0; t < 25; t++) {
    std::vector<Elem> om{
        Elem{oi, {Rat(rng.range(-5, 5)), Rat(rng.range(-5, 5))}},
        Elem{oi, {Rat(rng.range(-5, 5)), Rat(rng.range(-5, 5))}}};
    if (om[0].is_zero() && om[1].is_zero()) continue;
    Interval hn = lipschitz_height_pow(sys, om).height(96);
    Interval hw = weil_height_pow_projective(om).height(96);
    CHECK((hn / hw).lo <= cc.hi);
    CHECK((hw / hn).lo <= cc.hi);
  }
}

TEST_CASE("product formula") {
  // prod over all places |a|^(d_w) = 1 for nonzero a
  auto o5 = quadratic_order(5);
  Rng rng(17);
  for (int t = 0; t < 25; t++) {
    Elem a{o5, {rat(rng.range(-9, 9), rng.range(1, 4)), rat(rng.range(-9, 9), rng.range(1, 4))}};
    if (a.is_zero()) continue;
    // finite: prod = 1/N(aO) ... together with arch = |N(a)|
    Rat fin = Rat(1) / Ideal::principal(a).norm();
    Rat n = a.norm();
    if (n < 0) n = -n;
    CHECK(fin * n == 1);
  }
}

TEST_CASE("theta system height equals the scaled affine height on the line") {
  // H_sys((1 : alpha)) = H(sqrt p alpha) for rational alpha
  auto q = rationals();
  auto o5 = quadratic_order(5);
  auto ext = extension_between(q, o5);
  Elem s5 = sqrt_elem(o5);
  auto sys = LipschitzSystem::theta(o5, 1, s5);
  for (Rat a : {Rat(1), rat(3, 2), rat(-7, 5)}) {
    std::vector<Elem> point{Elem::one(o5), ext->embed(Elem::rational(q, a))};
    HeightPow hn = lipschitz_height_pow(sys, point);
    HeightPow hw = weil_height_pow_affine({s5 * a});
    REQUIRE(hn.arch2_exact);
    REQUIRE(hw.arch2_exact);
    CHECK(hn.finite * hn.finite * hn.arch2 == hw.finite * hw.finite * hw.arch2);
  }
}

TEST_CASE("heights of sqrt5 multiples over the sqrt2 field stay above sqrt5") {
  // p = 5 is inert in Q(sqrt2); H(sqrt5 alpha) >= sqrt5 for alpha in k*
  auto o2 = quadratic_order(2);
  Multiquadratic mq = multiquadratic_order({2, 5});
  auto ext = extension_between(o2, mq.order);
  Elem s5 = Elem::zero(mq.order);
  for (size_t mask = 1; mask < mq.monomials.size(); mask++)
    if (mq.monomials[mask] * mq.monomials[mask] == Elem::rational(mq.order, Rat(5)))
      s5 = mq.monomials[mask];
  REQUIRE_FALSE(s5.is_zero());
  Rng rng(88);
  Rat bound_sq = Rat(5) - rat(1, Int(1) << 40);
  for (int t = 0; t < 30; t++) {
    Elem a{o2, {rat(rng.range(-9, 9), rng.range(1, 5)), rat(rng.range(-9, 9), rng.range(1, 5))}};
    if (a.is_zero()) continue;
    Elem beta = s5 * ext->embed(a);
    // H(beta)^2 >= 5: compare exactly via the squared comparison
    int c = height_cmp({Elem::one(mq.order), beta}, bound_sq, /*squared=*/true);
    CHECK(c >= 0);
  }
}
