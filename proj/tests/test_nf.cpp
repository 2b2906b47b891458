#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

using namespace hc;

TEST_CASE("rational field fixture") {
  auto q = rationals();
  CHECK(q->degree() == 1);
  CHECK(q->real_places() == 1);
  CHECK(q->complex_places() == 0);
  CHECK(q->invariants().disc == 1);
  Elem half = Elem::rational(q, rat(1, 2));
  CHECK(half.norm() == rat(1, 2));
}

TEST_CASE("golden ratio order") {
  auto o = quadratic_order(5);
  CHECK(o->invariants().disc == 5);
  CHECK(o->real_places() == 2);
  CHECK(o->complex_places() == 0);
  QVec s5 = o->from_power({Rat(0), Rat(1)});
  Elem e{o, s5};
  CHECK(e.norm() == -5);
  CHECK(e.trace() == 0);
}

TEST_CASE("degree-8 fixture loads with validated basis") {
  auto& mq = appendix_field();
  auto o = mq.order;
  CHECK(o->degree() == 8);
  CHECK(o->real_places() == 8);
  CHECK(o->complex_places() == 0);
  CHECK(o->invariants().disc == Int("3317760000", 10));
  // expressed against the surd monomials, the basis has denominators up to 4
  QMat mono = q_zero(8, 8);
  for (int i = 0; i < 8; i++)
    for (int j = 0; j < 8; j++) mono[i][j] = mq.monomials[i].c[j];
  QMat inv = q_inverse(mono);
  Int l = 1;
  for (auto& row : o->basis()) {
    QVec bc = o->from_power(QVec(row.begin(), row.end()));
    for (auto& x : q_vec_mul(bc, inv)) l = l * den(x) / gcd(l, den(x));
  }
  CHECK(l == 4);
  CHECK(validate_order_report(o).size() > 0);
}

TEST_CASE("element arithmetic in Z[sqrt2]") {
  auto o = quadratic_order(2);
  Elem one = Elem::one(o);
  QVec s2c = o->from_power({Rat(0), Rat(1)});
  Elem s2{o, s2c};
  // (1+sqrt2)(-1+sqrt2) = 1
  Elem a = one + s2;
  Elem b = -one + s2;
  CHECK(a * b == one);
  // 1/(1+sqrt2) = -1+sqrt2
  CHECK(one / a == b);
  Rng rng(1);
  for (int t = 0; t < 50; t++) {
    Elem r{o, {Rat(rng.range(-9, 9)), Rat(rng.range(-9, 9))}};
    CHECK(r * one == r);
  }
  CHECK_THROWS_AS(one / Elem::zero(o), Error);
}

TEST_CASE("norm and trace") {
  auto o = quadratic_order(2);
  QVec s2c = o->from_power({Rat(0), Rat(1)});
  Elem s2{o, s2c};
  Elem a = Elem::one(o) + s2;
  CHECK(a.norm() == -1);
  CHECK(a.trace() == 2);
  CHECK(Elem::rational(o, Rat(7)).norm() == 49);
  auto o8 = appendix_field().order;
  CHECK(Elem::rational(o8, Rat(7)).norm() == pow_rat_int(Rat(7), 8));
  Rng rng(7);
  for (int t = 0; t < 100; t++) {
    Elem x{o, {Rat(rng.range(-9, 9)), Rat(rng.range(-9, 9))}};
    Elem y{o, {Rat(rng.range(-9, 9)), Rat(rng.range(-9, 9))}};
    CHECK((x * y).norm() == x.norm() * y.norm());
  }
}

TEST_CASE("archimedean absolute values") {
  auto o = quadratic_order(2);
  QVec s2c = o->from_power({Rat(0), Rat(1)});
  Rat target = rat(1, Int(1) << 42);
  Interval v0 = o->abs_embedding(s2c, 0, target);
  Interval v1 = o->abs_embedding(s2c, 1, target);
  CHECK(v0.square().contains(Rat(2)));
  CHECK(v1.square().contains(Rat(2)));
  CHECK(v0.width() <= target);
  Interval z = o->abs_embedding(QVec{Rat(0), Rat(0)}, 0, target);
  CHECK(z.lo == 0);
  CHECK(z.hi == 0);
  // place 0 sends sqrt2 to the negative root: |1+sqrt2| = 0.41421... there
  Elem a = Elem::one(o) + Elem{o, s2c};
  Interval w0 = o->abs_embedding(a.c, 0, target);
  CHECK(w0.lo > rat_from_string("0.414213"));
  CHECK(w0.hi < rat_from_string("0.414214"));
  Interval w1 = o->abs_embedding(a.c, 1, target);
  CHECK(w1.lo > rat_from_string("2.414213"));
  CHECK(w1.hi < rat_from_string("2.414214"));
}

TEST_CASE("product of embedding absolute values recovers the norm") {
  auto o = cubic_field_2();  // signature (1,1)
  Rng rng(11);
  Rat target = rat(1, Int(1) << 40);
  for (int t = 0; t < 20; t++) {
    QVec c{Rat(rng.range(-5, 5)), Rat(rng.range(-5, 5)), Rat(rng.range(-5, 5))};
    Elem a{o, c};
    if (a.is_zero()) continue;
    Interval prod(Rat(1));
    for (long i = 0; i < o->num_places(); i++) {
      Interval v = o->abs_embedding(c, i, target);
      prod = prod * (o->place(i).real ? v : v.square());
    }
    Rat n = a.norm();
    if (n < 0) n = -n;
    CHECK(prod.contains(n));
  }
}

TEST_CASE("complex embeddings of the gaussian field") {
  auto o = quadratic_order(-1);
  REQUIRE(o->complex_places() == 1);
  QVec ic = o->from_power({Rat(0), Rat(1)});
  Interval v = o->abs_embedding(ic, 0, rat(1, 1 << 30));
  CHECK(v.contains(Rat(1)));  // |i| = 1
}

TEST_CASE("extension embedding is a ring homomorphism with compatible norms") {
  auto q = rationals();
  auto q5 = quadratic_order(5);
  auto ext = extension_between(q, q5);
  CHECK(ext->relative_degree() == 2);
  Elem five = Elem::rational(q, Rat(5));
  CHECK(ext->embed(five) == Elem::rational(q5, Rat(5)));
  CHECK(ext->embed(Elem::one(q)) == Elem::one(q5));
  Rng rng(3);
  for (int t = 0; t < 20; t++) {
    Elem a = Elem::rational(q, rat(rng.range(-20, 20), rng.range(1, 9)));
    if (a.is_zero()) continue;
    CHECK(ext->embed(a).norm() == pow_rat_int(a.norm(), 2));
  }
}

TEST_CASE("quadratic into degree-8 field") {
  auto q5 = quadratic_order(5);
  auto& mq = appendix_field();
  auto ext = extension_between(q5, mq.order);
  CHECK(ext->relative_degree() == 4);
  Rng rng(13);
  for (int t = 0; t < 20; t++) {
    Elem a{q5, {Rat(rng.range(-9, 9)), Rat(rng.range(-9, 9))}};
    Elem b{q5, {Rat(rng.range(-9, 9)), Rat(rng.range(-9, 9))}};
    CHECK(ext->embed(a * b) == ext->embed(a) * ext->embed(b));
    if (!a.is_zero()) CHECK(ext->embed(a).norm() == pow_rat_int(a.norm(), 4));
  }
  auto cover = ext->place_cover();
  long c0 = 0, c1 = 0;
  for (long v : cover) (v == 0 ? c0 : c1)++;
  CHECK(c0 == 4);
  CHECK(c1 == 4);
}

TEST_CASE("bad fixtures are rejected") {
  OrderInvariants inv;
  inv.disc = 5;
  CHECK_THROWS_AS(Order::create("bad", ZPoly{Int(-4), Int(0), Int(1)},
                                QMat{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, inv),
                  Error);
  OrderInvariants inv2;
  inv2.disc = 5;  // wrong for Z[sqrt2]
  CHECK_THROWS_AS(Order::create("bad2", ZPoly{Int(-2), Int(0), Int(1)},
                                QMat{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, inv2),
                  Error);
  OrderInvariants inv3;
  inv3.disc = 8;  // basis {1, sqrt2/3} is not closed
  CHECK_THROWS_AS(Order::create("bad3", ZPoly{Int(-2), Int(0), Int(1)},
                                QMat{{Rat(1), Rat(0)}, {Rat(0), rat(1, 3)}}, inv3),
                  Error);
}

TEST_CASE("json round trip") {
  auto o = quadratic_order(5);
  std::string text = order_to_json_text(o);
  auto o2 = order_from_json_text(text);
  CHECK(o2->degree() == 2);
  CHECK(o2->invariants().disc == 5);
  CHECK(o2->basis() == o->basis());
  auto& mq = appendix_field();
  auto o8 = order_from_json_text(order_to_json_text(mq.order));
  CHECK(o8->invariants().disc == mq.order->invariants().disc);
  CHECK(o8->overrides().size() == mq.order->overrides().size());
}

TEST_CASE("signature via sturm matches fixtures") {
  CHECK(quadratic_order(2)->real_places() == 2);
  CHECK(quadratic_order(-7)->complex_places() == 1);
  CHECK(cubic_field_2()->real_places() == 1);
  CHECK(appendix_field().order->real_places() == 8);
}

TEST_CASE("norm compatibility into a relative quadratic extension") {
  auto o5 = quadratic_order(5);
  Multiquadratic mq = multiquadratic_order({5, 2});
  auto ext = extension_between(o5, mq.order);
  CHECK(ext->relative_degree() == 2);
  Rng rng(321);
  for (int t = 0; t < 20; t++) {
    Elem a{o5, {rat(rng.range(-9, 9), rng.range(1, 4)), rat(rng.range(-9, 9), rng.range(1, 4))}};
    if (a.is_zero()) continue;
    CHECK(ext->embed(a).norm() == pow_rat_int(a.norm(), 2));
  }
}
