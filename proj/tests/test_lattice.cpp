#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "lattice.hpp"

#include <numeric>

using namespace hc;

namespace {

QMat qm(std::vector<std::vector<long>> rows) {
  QMat out;
  for (auto& r : rows) {
    QVec v;
    for (long x : r) v.push_back(Rat(x));
    out.push_back(v);
  }
  return out;
}

Lattice random_lattice(long d, Rng& rng) {
  while (true) {
    QMat b = q_zero(d, d);
    for (long i = 0; i < d; i++)
      for (long j = 0; j < d; j++) b[i][j] = Rat(rng.range(-6, 6));
    if (q_det(b) != 0) return Lattice::standard(b);
  }
}

}  // namespace

TEST_CASE("determinants") {
  Lattice z3 = Lattice::standard(q_identity(3));
  CHECK(z3.det2() == 1);
  Lattice dg = Lattice::standard(qm({{2, 0}, {0, 3}}));
  CHECK(dg.det2() == 36);
  CHECK(dg.det().cmp(Rat(6)) == 0);
  auto o5 = quadratic_order(5);
  Lattice l5 = ideal_lattice(Ideal::whole(o5));
  CHECK(l5.det2() == 5);  // covolume sqrt5
  auto oi = quadratic_order(-1);
  Lattice li = ideal_lattice(Ideal::whole(oi));
  CHECK(li.det2() == 1);  // 2^-1 sqrt|coeff disc -4| = 1
}

TEST_CASE("lll reduces a skewed basis") {
  Lattice l = Lattice::standard(qm({{1, 0}, {1000, 1}}));
  Lattice r = l.lll();
  CHECK(r.same_lattice(l));
  CHECK(r.gram()[0][0] == 1);
  CHECK(r.gram()[1][1] == 1);
  Rng rng(5);
  for (int t = 0; t < 10; t++) {
    QMat u = q_identity(3);
    for (int step = 0; step < 12; step++) {
      long i = rng.range(0, 2), j = rng.range(0, 2);
      if (i == j) continue;
      Rat f = Rat(rng.range(-3, 3));
      for (int c = 0; c < 3; c++) u[i][c] += f * u[j][c];
    }
    Lattice s = Lattice::standard(u);
    Lattice rs = s.lll();
    CHECK(rs.same_lattice(s));
    auto mins = rs.successive_minima(3);
    for (auto& m : mins) CHECK(m.value2 == 1);
  }
}

TEST_CASE("successive minima basics") {
  Lattice z2 = Lattice::standard(q_identity(2));
  auto m = z2.successive_minima(2);
  CHECK(m[0].value2 == 1);
  CHECK(m[1].value2 == 1);
  Lattice dg = Lattice::standard(qm({{3, 0}, {0, 7}}));
  auto md = dg.successive_minima(2);
  CHECK(md[0].value2 == 9);
  CHECK(md[1].value2 == 49);
}

TEST_CASE("product lattice minima") {
  Rng rng(77);
  for (int t = 0; t < 25; t++) {
    Lattice a = random_lattice(2, rng);
    Lattice b = random_lattice(2, rng);
    Lattice prod = Lattice::product(a, b);
    auto ma = a.successive_minima(1);
    auto mb = b.successive_minima(1);
    auto mp = prod.successive_minima(3);
    Rat expect = std::min(ma[0].value2, mb[0].value2);
    CHECK(mp[0].value2 == expect);
    CHECK(mp[2].value2 >= std::max(ma[0].value2, mb[0].value2));
  }
}

TEST_CASE("ideal lattice first minimum bound") {
  auto o5 = quadratic_order(5);
  Rng rng(11);
  for (int t = 0; t < 20; t++) {
    QVec c{Rat(rng.range(-6, 6)), Rat(rng.range(-6, 6))};
    Elem a{o5, c};
    if (a.is_zero()) continue;
    Ideal ia = Ideal::principal(a);
    Lattice la = ideal_lattice(ia);
    auto m = la.successive_minima(1);
    CHECK(m[0].value2 >= ia.norm());  // lambda1 >= N^(1/d), squared, d = 2
  }
}

TEST_CASE("counting in balls and boxes") {
  Lattice z2 = Lattice::standard(q_identity(2));
  CHECK(count_lattice_points(z2, Body::ball(rat(25, 4))) == 21);
  Body nozero = Body::ball(rat(25, 4));
  nozero.exclude_zero = true;
  CHECK(count_lattice_points(z2, nozero) == 20);
  Body small = Body::ball(rat(1, 2));
  small.exclude_zero = true;
  CHECK(count_lattice_points(z2, small) == 0);
  Lattice z1 = Lattice::standard(q_identity(1));
  CHECK(count_lattice_points(z1, Body::cube({{rat(-7, 2), rat(7, 2)}})) == 7);
  CHECK(count_lattice_points(z1, Body::cube({{rat(1, 2), rat(9, 2)}})) == 4);
}

TEST_CASE("minkowski bounds") {
  Rng rng(3);
  Interval pi = int_pi(64);
  for (int t = 0; t < 10; t++) {
    Lattice l = random_lattice(3, rng);
    auto m = l.successive_minima(3);
    Interval vol = pi * rat(4, 3);  // vol(B_3)
    Interval lhs = int_sqrt(Interval(m[0].value2), 64).power(3) * vol;
    Interval det = l.det_interval(64);
    CHECK(lhs.lo <= (det * Rat(8)).hi);
    Interval prod = int_sqrt(Interval(m[0].value2 * m[1].value2 * m[2].value2), 64);
    CHECK((prod * vol).lo <= (det * Rat(8)).hi);
  }
}

TEST_CASE("condition lattices for a theta system") {
  auto q = rationals();
  auto o5 = quadratic_order(5);
  auto ext = extension_between(q, o5);
  Elem s5{o5, o5->from_power({Rat(0), Rat(1)})};
  std::vector<std::vector<Elem>> rows{{Elem::one(o5), Elem::zero(o5)},
                                      {Elem::zero(o5), s5}};
  auto cl = build_condition_lattice(ext, rows, Ideal::whole(o5), Ideal::whole(q), 1);
  CHECK(cl.lattice.det2() == 1);
  // omega_0 in sqrt5 O cap Q = 5Z, theta omega_1 in sqrt5 O <=> omega_1 in Z
  auto cl2 = build_condition_lattice(ext, rows, Ideal::principal(s5), Ideal::whole(q), 1);
  CHECK(cl2.lattice.det2() == 25);
  auto cl3 = build_condition_lattice(ext, rows, Ideal::whole(o5), Ideal::rational(q, Rat(3)), 1);
  CHECK(cl3.lattice.det2() == 81);  // >= (2^-0 * 3)^2 squared
}

TEST_CASE("appendix condition lattice determinants") {
  auto& mq = appendix_field();
  auto o = mq.order;
  auto q = rationals();
  auto ext = extension_between(q, o);
  Elem s2 = mq.monomials[1], s3 = mq.monomials[2], s5 = mq.monomials[4];
  Elem z = Elem::zero(o), one = Elem::one(o);
  std::vector<std::vector<Elem>> rows{
      {one, z, z}, {z, one, z}, {z, z, one}, {z, s2 / s5, s3 / s5}};
  auto ps = factor_rational_prime(o, Int(5));
  Ideal s5inv = Ideal::principal(s5).inverse();
  for (long n : {1L, 2L, 5L, 10L}) {
    Ideal nz = Ideal::rational(q, Rat(n));
    long lcm5n = 5 * n / std::gcd(5L, n);
    for (int i = 0; i < 2; i++) {
      auto cl = build_condition_lattice(ext, rows, s5inv * ps[i].ideal, nz, 2);
      Rat d = q_det(cl.lattice.basis());
      if (d < 0) d = -d;
      CHECK(d == Rat(n) * Rat(n) * Rat(lcm5n));
    }
    auto cl12 = build_condition_lattice(ext, rows, s5inv * ps[0].ideal * ps[1].ideal, nz, 2);
    Rat d12 = q_det(cl12.lattice.basis());
    if (d12 < 0) d12 = -d12;
    CHECK(d12 == Rat(n) * Rat(lcm5n) * Rat(lcm5n));
    auto clb = build_condition_lattice(ext, rows, s5inv * ps[0].ideal.pow(2), nz, 2);
    Rat db = q_det(clb.lattice.basis());
    if (db < 0) db = -db;
    CHECK(db == pow_rat_int(Rat(lcm5n), 3));
  }
}

TEST_CASE("counting error respects the shell bound as the body dilates") {
  Rng rng(123);
  Interval pi = int_pi(80);
  for (int t = 0; t < 4; t++) {
    Lattice l = random_lattice(3, rng);
    Lattice red = l.lll();
    Interval c(Rat(0));
    for (int i = 0; i < 3; i++) c = c + int_sqrt(Interval(red.gram()[i][i]), 64);
    c = c * rat(1, 2);  // covering bound: half the sum of reduced basis lengths
    Interval det = l.det_interval(64);
    for (long T : {4L, 8L, 16L, 32L}) {
      Rat r = Rat(T);
      long cnt = count_lattice_points(l, Body::ball(r * r));
      Interval vol = pi * rat(4, 3) * pow_rat_int(r, 3);
      Interval err = Interval(Rat(cnt)) - vol / det;
      Interval rp = Interval(r) + c * Rat(2);
      Interval rm = Interval(r) - c * Rat(2);
      if (rm.lo < 0) rm = Interval(Rat(0), std::max(Rat(0), rm.hi));
      Interval shell = pi * rat(4, 3) * (rp.power(3) - rm.power(3)) / det;
      CHECK(err.abs().lo <= shell.hi);
    }
  }
}

TEST_CASE("rank caps") {
  Lattice big = Lattice::standard(q_identity(13));
  CHECK_THROWS_AS(big.successive_minima(1), Error);
  Lattice seven = Lattice::standard(q_identity(7));
  CHECK_THROWS_AS(count_lattice_points(seven, Body::ball(Rat(1))), Error);
}

TEST_CASE("star body counting with exact membership") {
  // region: max(|x|, 3|y|) * max(|x|, |y|/2) < T, a bounded star body
  Lattice z2 = Lattice::standard(q_identity(2));
  auto member_at = [](const Rat& t) {
    return [t](const QVec& v) {
      Rat a = v[0] < 0 ? Rat(-v[0]) : Rat(v[0]);
      Rat b = v[1] < 0 ? Rat(-v[1]) : Rat(v[1]);
      Rat m1 = std::max(a, Rat(Rat(3) * b));
      Rat m2 = std::max(a, Rat(b / 2));
      return m1 * m2 < t * t ? 1 : -1;
    };
  };
  for (long t : {3L, 6L, 12L}) {
    Body star;
    star.kind = Body::Kind::Star;
    star.star_member = member_at(Rat(t));
    // |x| < t and 3|y| * |x| < t^2-ish: crude bounding ball radius
    star.star_radius2 = Rat(16 * t * t + 16 * t * t * t * t);
    long fast = count_lattice_points(z2, star);
    // direct double loop
    long direct = 0;
    long range = 4 * t * t + 1;
    auto f = member_at(Rat(t));
    for (long x = -range; x <= range; x++)
      for (long y = -range; y <= range; y++)
        if (f(QVec{Rat(x), Rat(y)}) > 0) direct++;
    CHECK(fast == direct);
  }
}

TEST_CASE("reduced bases satisfy a short-vector envelope") {
  // every LLL basis vector obeys |u_i| <= c(D) det / lambda_1^(D-1); asserted
  // in the exact squared form with c(D) = 2^(2D)
  Rng rng(2024);
  for (long dim : {2L, 3L, 4L}) {
    for (int t = 0; t < 8; t++) {
      QMat b = q_zero(dim, dim);
      for (long i = 0; i < dim; i++)
        for (long j = 0; j < dim; j++) b[i][j] = Rat(rng.range(-9, 9));
      if (q_det(b) == 0) continue;
      Lattice l = Lattice::standard(b);
      Lattice red = l.lll();
      Rat l1 = red.successive_minima(1)[0].value2;
      Rat det2 = l.det2();
      Rat cap = pow_rat_int(Rat(2), 4 * dim) * det2 / pow_rat_int(l1, dim - 1);
      for (long i = 0; i < dim; i++) {
        Rat len2 = red.gram()[i][i];
        CHECK(len2 * pow_rat_int(l1, dim - 1) <= pow_rat_int(Rat(2), 4 * dim) * det2);
        (void)cap;
      }
    }
  }
}
