#include "counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace hc {

std::vector<Rat> enumerate_rationals(const Rat& bound) {
  std::vector<Rat> out{Rat(0)};
  long b = (long)floor_rat(bound).get_si();
  for (long q = 1; q <= b; q++)
    for (long p = 1; p <= b; p++) {
      if (std::gcd(p, q) != 1) continue;
      out.push_back(rat(p, q));
      out.push_back(rat(-p, q));
    }
  return out;
}

std::vector<Elem> enumerate_field(const OrderPtr& k, const Rat& bound) {
  if (k->degree() == 1) {
    std::vector<Elem> out;
    for (auto& r : enumerate_rationals(bound)) out.push_back(Elem::rational(k, r));
    return out;
  }
  if (k->degree() != 2 || k->complex_places() != 1)
    fail(Errc::UnsupportedField, "enumeration needs Q or an imaginary quadratic field");
  if (k->invariants().class_number != 1)
    fail(Errc::UnsupportedField, "enumeration needs class number one");
  // integers of norm <= bound^2 via the positive-definite norm form
  Rat b2 = bound * bound;
  auto norm_form = [&](long x, long y) {
    QVec c{Rat(x), Rat(y)};
    Elem e{k, c};
    return e.norm();
  };
  // coefficient bounds: N(x,y) = a x^2 + b x y + c y^2
  Rat a = norm_form(1, 0);
  Rat bb = norm_form(1, 1) - norm_form(1, 0) - norm_form(0, 1);
  Rat cc = norm_form(0, 1);
  Rat disc_form = bb * bb - a * cc * 4;  // negative
  std::vector<Elem> ints;
  long ymax = (long)floor_rat(int_sqrt(Interval(b2 * a * Rat(4) / (-disc_form)), 32).hi).get_si();
  for (long y = -ymax; y <= ymax; y++) {
    // a x^2 + b x y + (c y^2 - b2) <= 0
    Rat discq = bb * bb * Rat(y * y) - Rat(4) * a * (cc * Rat(y * y) - b2);
    if (discq < 0) continue;
    Rat sq = int_sqrt(Interval(discq), 48).hi;
    long xlo = (long)ceil_rat((-bb * Rat(y) - sq) / (2 * a)).get_si() - 1;
    long xhi = (long)floor_rat((-bb * Rat(y) + sq) / (2 * a)).get_si() + 1;
    for (long x = xlo; x <= xhi; x++) {
      if (x == 0 && y == 0) continue;
      if (norm_form(x, y) <= b2) ints.push_back(Elem{k, {Rat(x), Rat(y)}});
    }
  }
  // alpha = num/den over all pairs, deduplicated by exact value; the height
  // filter runs once per distinct value
  std::set<QVec> seen;
  std::vector<Elem> out{Elem::zero(k)};
  for (auto& den_e : ints) {
    Elem dinv = Elem::one(k) / den_e;
    for (auto& num_e : ints) {
      Elem alpha = num_e * dinv;
      if (!seen.insert(alpha.c).second) continue;
      if (height_cmp({Elem::one(k), alpha}, bound) > 0) continue;
      out.push_back(alpha);
    }
  }
  return out;
}

bool respects_counting_caps(long count, long degree, const Rat& x) {
  // 5 * 2^d X^(3d) + 1 always; 17 X^2 for d = 1; 68 d log d X^(2d) for d > 1
  Rat evertse = Rat(5) * pow_rat_int(Rat(2), degree) * pow_rat_int(x, 3 * degree) + 1;
  if (Rat(count) > evertse) return false;
  if (degree == 1) {
    if (Rat(count) > Rat(17) * x * x) return false;
  } else {
    Interval lg = int_log(Interval(Rat(degree)), 48);
    Interval lm = Interval(Rat(68 * degree)) * lg * pow_rat_int(x, 2 * degree);
    if (Rat(count) > lm.lo && Rat(count) > lm.hi) return false;
  }
  return true;
}

CountResult count_theta(const Elem& theta_top, const ExtensionPtr& ext, long n, const Rat& x,
                        long budget, bool with_prediction) {
  const OrderPtr& k = ext->base();
  const OrderPtr& K = ext->top();
  CountResult res;
  res.x = x;
  if (x < 1) {
    res.predicted = Interval(Rat(0));
    res.ratio = Interval(Rat(0));
    return res;
  }
  // search bound: H(alpha) <= x H(theta)
  HeightPow ht = weil_height_pow_affine({theta_top});
  Rat hbound = ht.height(48).hi * x + 1;
  auto candidates = enumerate_field(k, hbound);
  if ((long)candidates.size() > budget) fail(Errc::BudgetExceeded, "candidate list too large");

  // embed once
  std::vector<Elem> embedded;
  embedded.reserve(candidates.size());
  for (auto& a : candidates) embedded.push_back(ext->embed(a));

  if (n == 1) {
    for (auto& a : embedded) {
      std::vector<Elem> gens{Elem::one(K), theta_top * a};
      if (a.is_zero()) gens[1] = Elem::zero(K);
      int c = height_cmp(gens, x);
      if (c == 2)
        res.undecided++;
      else if (c <= 0)
        res.count++;
    }
  } else if (n == 2) {
    // coordinates range over the n = 1 solution set
    std::vector<Elem> sol;
    for (auto& a : embedded) {
      std::vector<Elem> gens{Elem::one(K), theta_top * a};
      int c = height_cmp(gens, x);
      if (c <= 0) sol.push_back(a);
    }
    if ((long)sol.size() * (long)sol.size() > budget)
      fail(Errc::BudgetExceeded, "pair enumeration too large");
    for (auto& a1 : sol)
      for (auto& a2 : sol) {
        std::vector<Elem> gens{Elem::one(K), theta_top * a1, theta_top * a2};
        int c = height_cmp(gens, x);
        if (c == 2)
          res.undecided++;
        else if (c <= 0)
          res.count++;
      }
  } else {
    fail(Errc::BudgetExceeded, "counting shipped for n <= 2");
  }
  if (!respects_counting_caps(res.count, k->degree(), x))
    fail(Errc::BudgetExceeded, "count exceeds the uniform caps; counting bug");
  if (with_prediction) {
    GConstant g = g_theta(theta_top, ext, n, GConstant::Method::Product, rat(1, Int(1) << 40));
    Interval s = schanuel_constant(k, n, rat(1, Int(1) << 40));
    res.predicted =
        (g.value * s * pow_rat_int(x, k->degree() * (n + 1))).round_out(64);
    if (res.predicted.lo > 0) res.ratio = (Interval(Rat(res.count)) / res.predicted).round_out(64);
  }
  return res;
}

CountResult count_lipschitz(const LipschitzSystem& sys, const ExtensionPtr& ext, const Rat& x,
                            long budget, bool with_prediction, long mc_samples,
                            uint64_t mc_seed) {
  const OrderPtr& k = ext->base();
  const OrderPtr& K = ext->top();
  long n = sys.dim();
  CountResult res;
  res.x = x;
  // Weil height bound: H(P) <= C_fin C_inf x
  Interval cc = sys.c_fin().eval(64) * sys.c_inf(64);
  Rat weil_bound = (cc * x).hi;
  if (k->degree() == 1) {
    long b = (long)floor_rat(weil_bound).get_si() + 1;
    // signed double-precision prefilter (totally real top fields only)
    long places = K->num_places();
    bool prefilter = K->complex_places() == 0;
    std::vector<std::vector<std::vector<double>>> coeff(places);
    if (prefilter) {
      Rat w = rat(1, Int(1) << 52);
      for (long wp = 0; wp < places; wp++)
        for (auto& r : sys.rows()) {
          std::vector<double> row;
          for (auto& cf : r)
            row.push_back(cf.is_zero() ? 0.0 : K->embedding_box(cf.c, wp, w).re.mid().get_d());
          coeff[wp].push_back(row);
        }
    }
    // smallest possible finite-part factor: 1/N(largest gauge class)
    Rat fin_min = 1;
    for (auto& f : sys.gauge_ideal_classes()) fin_min = std::min(fin_min, Rat(Rat(1) / f.norm()));
    double fin_min_d = fin_min.get_d();
    double xslack = pow_rat_int(x, K->degree()).get_d() * (1 + 1e-6);
    std::vector<long> tuple(n + 1);
    long tested = 0;
    std::function<void(long, bool)> walk = [&](long pos, bool all_zero) {
      if (pos > n) {
        if (all_zero) return;
        long g = 0;
        for (long v : tuple) g = std::gcd(g, std::labs(v));
        if (g != 1) return;
        if (++tested > budget) fail(Errc::BudgetExceeded, "tuple budget exceeded");
        if (prefilter) {
          double arch = 1;
          for (long wp = 0; wp < places; wp++) {
            double m = 0;
            for (auto& row : coeff[wp]) {
              double v = 0;
              for (long j = 0; j <= n; j++)
                if (tuple[j]) v += row[j] * double(tuple[j]);
              m = std::max(m, std::fabs(v));
            }
            arch *= m;
          }
          if (arch * fin_min_d > xslack) return;
        }
        std::vector<Elem> om;
        for (long j = 0; j <= n; j++) om.push_back(Elem::rational(K, Rat(tuple[j])));
        int c = height_cmp(sys.generators(om), x);
        if (c == 2)
          res.undecided++;
        else if (c <= 0)
          res.count++;
        return;
      }
      // one representative per +- pair: the first nonzero coordinate positive
      long lo = all_zero ? 0 : -b;
      for (long v = lo; v <= b; v++) {
        tuple[pos] = v;
        walk(pos + 1, all_zero && v == 0);
      }
      tuple[pos] = 0;
    };
    walk(0, true);
  } else if (k->degree() == 2 && k->complex_places() == 1 && n == 1) {
    // projective line over an imaginary quadratic field: coprime pairs up to units
    if (k->invariants().class_number != 1)
      fail(Errc::UnsupportedField, "projective enumeration needs class number one");
    Rat b2 = weil_bound * weil_bound + 1;
    std::vector<Elem> ints;
    {
      long ymax = (long)floor_rat(int_sqrt(Interval(b2), 32).hi).get_si() + 1;
      for (long y = -ymax; y <= ymax; y++)
        for (long xx = -ymax; xx <= ymax; xx++) {
          if (xx == 0 && y == 0) continue;
          Elem e{k, {Rat(xx), Rat(y)}};
          if (e.norm() <= b2) ints.push_back(e);
        }
    }
    std::set<std::pair<QVec, QVec>> seen;
    // torsion units for the dedupe
    std::vector<Elem> units;
    {
      // unit group of an imaginary quadratic order: roots of unity
      std::vector<Elem> cands;
      for (auto& e : ints)
        if (e.norm() == 1) cands.push_back(e);
      units = cands;
    }
    for (auto& w0 : ints)
      for (auto& w1 : ints) {
        if (!Ideal::from_generators({w0, w1}).is_whole()) continue;
        // canonical representative under unit scaling
        std::pair<QVec, QVec> best{w0.c, w1.c};
        for (auto& u : units) {
          std::pair<QVec, QVec> cand{(w0 * u).c, (w1 * u).c};
          if (cand < best) best = cand;
        }
        if (seen.count(best)) continue;
        seen.insert(best);
        std::vector<Elem> om{ext->embed(w0), ext->embed(w1)};
        int c = height_cmp(sys.generators(om), x);
        if (c == 2)
          res.undecided++;
        else if (c <= 0)
          res.count++;
      }
  } else {
    fail(Errc::UnsupportedField, "projective enumeration shipped for Q (any n) and Q(i) (n=1)");
  }
  if (with_prediction) {
    auto cfg = default_config(sys, ext);
    Interval coeff =
        counting_coefficient(sys, ext, cfg, rat(1, Int(1) << 40), mc_samples, mc_seed);
    res.predicted = (coeff * pow_rat_int(x, k->degree() * (n + 1))).round_out(64);
    if (res.predicted.lo > 0) res.ratio = (Interval(Rat(res.count)) / res.predicted).round_out(64);
  }
  return res;
}

InertPrimes inert_primes(const OrderPtr& k, long bound) {
  InertPrimes out;
  out.field = k;
  out.bound = bound;
  long d = k->degree();
  for (long p : primes_upto(bound)) {
    bool inert;
    if (d == 2) {
      inert = kronecker_symbol(k->invariants().disc, Int(p)) == -1;
    } else {
      auto ps = factor_rational_prime(k, Int(p));
      inert = ps.size() == 1 && ps[0].ram_e == 1 && ps[0].res_f == d;
    }
    if (inert) out.primes.push_back(p);
  }
  return out;
}

SqrtPResult count_sqrtp(const OrderPtr& k, const Rat& x, long budget) {
  if (k->degree() != 2 || k->complex_places() != 1)
    fail(Errc::UnsupportedField, "sqrt-prime counting shipped for imaginary quadratic fields");
  SqrtPResult out;
  out.total.x = x;
  out.total.count = 1;  // the element 0
  long pbound = (long)floor_rat(x * x).get_si();
  long m = -(k->min_poly()[0].get_si());  // k = Q(sqrt m)
  for (long p : inert_primes(k, pbound).primes) {
    // top field k(sqrt p), built on the fly
    const Multiquadratic& mq = (m == -1) ? gaussian_sqrt_field(p) : multiquadratic_order({m, p});
    auto ext = extension_between(k, mq.order);
    // theta = sqrt p: the monomial whose square is p
    Elem theta = Elem::zero(mq.order);
    bool found = false;
    for (size_t mask = 1; mask < mq.monomials.size(); mask++) {
      Elem cand = mq.monomials[mask];
      if (cand * cand == Elem::rational(mq.order, Rat(p))) {
        theta = cand;
        found = true;
        break;
      }
    }
    if (!found) fail(Errc::BadFixture, "sqrt p missing from the generated field");
    CountResult inner = count_theta(theta, ext, 1, x, budget, false);
    long inner_star = inner.count - 1;  // drop alpha = 0
    out.per_prime.emplace_back(p, inner_star);
    out.total.count += inner_star;
    out.total.undecided += inner.undecided;
  }
  // reference main term (d = 2 branch): S_k(1) X^4 log log X
  Interval s = schanuel_constant(k, 1, rat(1, Int(1) << 36));
  if (x > 3) {
    Interval llx = int_log(int_log(Interval(x), 64), 64);
    out.total.predicted = (s * pow_rat_int(x, 4) * llx).round_out(48);
    if (out.total.predicted.lo > 0)
      out.total.ratio = (Interval(Rat(out.total.count)) / out.total.predicted).round_out(48);
  }
  return out;
}

Interval thm14_coefficient(const OrderPtr& k, long prime_bound) {
  long d = k->degree();
  if (d <= 2) fail(Errc::UnsupportedShape, "the series diverges for degree <= 2");
  Interval sum(Rat(0));
  for (long p : inert_primes(k, prime_bound).primes) {
    // 2 p^(d/2) / (p^d + 1)
    Interval pd2 = d % 2 == 0 ? Interval(pow_rat_int(Rat(p), d / 2))
                              : int_sqrt(Interval(pow_rat_int(Rat(p), d)), 96);
    sum = (sum + pd2 * Rat(2) / (pow_rat_int(Rat(p), d) + 1)).round_out(128);
  }
  // tail: each term <= 2 p^(-d/2); sum over integers m > bound of 2 m^(-d/2)
  // <= 2 bound^(1 - d/2) / (d/2 - 1)
  Rat half_dm1 = rat(d, 2) - 1;
  Interval tail_top = int_pow(Interval(Rat(prime_bound)), Rat(1) - rat(d, 2), 64);
  Interval tail = tail_top * Rat(2) / half_dm1;
  return Interval(sum.lo, (sum + tail).hi);
}

long square_class_count(const Rat& gamma, const Rat& x, long budget) {
  if (gamma == 0) fail(Errc::ZeroTheta, "square class of zero");
  if (x < 1) return 0;
  auto q = rationals();
  // N(gamma (Q*)^2, x) = (N(sqrt gamma Q, sqrt x) - 1)/2: count H(sqrt gamma a)
  // <= sqrt x, i.e. H(...)^2 <= x
  Rat g = gamma > 0 ? gamma : Rat(-gamma);
  // theta = sqrt(g): rational if g is a square
  Int sq_num, sq_den;
  bool num_sq = is_perfect_square(num(g), &sq_num);
  bool den_sq = is_perfect_square(den(g), &sq_den);
  OrderPtr K;
  Elem theta = Elem::zero(q);
  ExtensionPtr ext;
  if (num_sq && den_sq) {
    K = q;
    ext = Extension::identity(q);
    theta = Elem::rational(q, rat(sq_num, sq_den));
  } else {
    // K = Q(sqrt m) for the squarefree part m of g
    Rat m = g;
    Int lsq = 1;
    // squarefree part of numerator * denominator
    Int nd = num(g) * den(g);
    Int sf = 1;
    for (auto& [p, e] : factor_integer(nd)) {
      if (e % 2) sf *= p;
    }
    K = quadratic_order(sf.get_si());
    ext = extension_between(q, K);
    // sqrt(g) = sqrt(sf) * sqrt(g / sf), the cofactor is rational
    Rat cof = g / Rat(sf);
    Int cnum, cden;
    is_perfect_square(num(cof), &cnum);
    is_perfect_square(den(cof), &cden);
    theta = Elem{K, K->from_power({Rat(0), Rat(1)})} * rat(cnum, cden);
  }
  // enumerate alpha with H(alpha) <= sqrt(x) H(theta) and test H(theta a)^2 <= x
  HeightPow ht = weil_height_pow_affine({theta});
  Rat hbound = ht.height(48).hi * int_sqrt(Interval(x), 48).hi + 1;
  long cnt = 0;
  for (auto& a : enumerate_rationals(hbound)) {
    std::vector<Elem> gens{Elem::one(K), theta * a};
    int c = height_cmp(gens, x, /*squared=*/true);
    if (c == 2) fail(Errc::UndecidableComparison, "square class boundary undecided");
    if (c <= 0) cnt++;
  }
  return (cnt - 1) / 2;
}

}  // namespace hc
