#include "heights.hpp"

#include <algorithm>
#include <functional>

namespace hc {

namespace {

// invert a square system of forms over K by Gaussian elimination; returns
// false if singular
bool invert_forms(const OrderPtr& K, std::vector<std::vector<Elem>> mat,
                  std::vector<std::vector<Elem>>& sink) {
  long n = (long)mat.size();
  std::vector<std::vector<Elem>> inv(n, std::vector<Elem>(n, Elem::zero(K)));
  for (long i = 0; i < n; i++) inv[i][i] = Elem::one(K);
  for (long c = 0; c < n; c++) {
    long piv = -1;
    for (long i = c; i < n; i++)
      if (!mat[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return false;
    std::swap(mat[piv], mat[c]);
    std::swap(inv[piv], inv[c]);
    Elem f = Elem::one(K) / mat[c][c];
    for (long j = 0; j < n; j++) {
      mat[c][j] = mat[c][j] * f;
      inv[c][j] = inv[c][j] * f;
    }
    for (long i = 0; i < n; i++) {
      if (i == c || mat[i][c].is_zero()) continue;
      Elem g = mat[i][c];
      for (long j = 0; j < n; j++) {
        mat[i][j] = mat[i][j] - g * mat[c][j];
        inv[i][j] = inv[i][j] - g * inv[c][j];
      }
    }
  }
  sink = inv;
  return true;
}

// rows of some left inverse of the (m x (n+1)) form matrix
std::vector<std::vector<Elem>> left_inverse_rows(const OrderPtr& K,
                                                 const std::vector<std::vector<Elem>>& rows,
                                                 long n) {
  long m = (long)rows.size();
  std::vector<std::vector<Elem>> out;
  std::vector<long> acc;
  std::function<bool(long)> pick = [&](long start) -> bool {
    if ((long)acc.size() == n + 1) {
      std::vector<std::vector<Elem>> sq;
      for (long i : acc) sq.push_back(rows[i]);
      return invert_forms(K, sq, out);
    }
    for (long i = start; i < m; i++) {
      acc.push_back(i);
      if (pick(i + 1)) return true;
      acc.pop_back();
    }
    return false;
  };
  if (!pick(0)) fail(Errc::UnsupportedVariant, "no invertible subsystem of forms");
  return out;
}

}  // namespace

LipschitzSystem LipschitzSystem::theta(const OrderPtr& K, long n, Elem theta_value) {
  if (theta_value.is_zero()) fail(Errc::ZeroTheta, "theta must be nonzero");
  if (theta_value.order != K) fail(Errc::OrderMismatch, "theta not in the system field");
  LipschitzSystem s;
  s.field_ = K;
  s.n_ = n;
  s.variant_ = Variant::Theta;
  s.theta_ = theta_value;
  s.rows_.assign(n + 1, std::vector<Elem>(n + 1, Elem::zero(K)));
  s.rows_[0][0] = Elem::one(K);
  for (long i = 1; i <= n; i++) s.rows_[i][i] = theta_value;
  s.compute_defects();
  return s;
}

LipschitzSystem LipschitzSystem::linear_forms(const OrderPtr& K, long n,
                                              std::vector<std::vector<Elem>> rows) {
  LipschitzSystem s;
  s.field_ = K;
  s.n_ = n;
  s.variant_ = Variant::LinearForms;
  s.theta_ = Elem::zero(K);
  if ((long)rows.size() < n + 1) fail(Errc::UnsupportedVariant, "need at least n+1 forms");
  for (auto& r : rows)
    if ((long)r.size() != n + 1) fail(Errc::UnsupportedVariant, "form of wrong arity");
  s.rows_ = std::move(rows);
  // full column rank is certified by finding an invertible square subsystem
  (void)left_inverse_rows(K, s.rows_, n);
  s.compute_defects();
  return s;
}

LipschitzSystem LipschitzSystem::max_norm(const OrderPtr& K, long n) {
  LipschitzSystem s;
  s.field_ = K;
  s.n_ = n;
  s.variant_ = Variant::MaxNorm;
  s.theta_ = Elem::zero(K);
  s.rows_.assign(n + 1, std::vector<Elem>(n + 1, Elem::zero(K)));
  for (long i = 0; i <= n; i++) s.rows_[i][i] = Elem::one(K);
  return s;
}

void LipschitzSystem::compute_defects() {
  // c_w = N(P)^(-a_P/d_w): the entries of the forms bound the gauge above,
  // the entries of a left inverse bound it below
  const OrderPtr& K = field_;
  std::vector<Elem> entries;
  for (auto& r : rows_)
    for (auto& x : r)
      if (!x.is_zero()) entries.push_back(x);
  std::vector<Elem> inv_entries;
  for (auto& r : left_inverse_rows(K, rows_, n_))
    for (auto& x : r)
      if (!x.is_zero()) inv_entries.push_back(x);
  std::map<Int, bool> primes;
  auto collect = [&](const Elem& x) {
    Rat n = x.norm();
    if (n < 0) n = -n;
    for (auto& [p, e] : factor_rational(n)) primes[p] = true;
  };
  for (auto& x : entries) collect(x);
  for (auto& x : inv_entries) collect(x);
  defects_.clear();
  for (auto& [p, unused] : primes) {
    (void)unused;
    for (auto& pi : factor_rational_prime(K, p)) {
      long a = 0;
      for (auto& x : entries) a = std::max(a, -valuation_elem(x, pi));
      for (auto& x : inv_entries) a = std::max(a, -valuation_elem(x, pi));
      if (a > 0) defects_.push_back({pi, a});
    }
  }
}

std::vector<Elem> LipschitzSystem::generators(const std::vector<Elem>& omega) const {
  if ((long)omega.size() != n_ + 1) fail(Errc::ZeroTuple, "tuple of wrong arity");
  bool allzero = true;
  for (auto& x : omega)
    if (!x.is_zero()) allzero = false;
  if (allzero) fail(Errc::ZeroTuple, "zero tuple");
  std::vector<Elem> out;
  for (auto& r : rows_) {
    Elem acc = Elem::zero(field_);
    for (long j = 0; j <= n_; j++)
      if (!r[j].is_zero() && !omega[j].is_zero()) acc = acc + r[j] * omega[j];
    out.push_back(acc);
  }
  return out;
}

Ideal LipschitzSystem::gauge_ideal(const std::vector<Elem>& omega) const {
  return Ideal::from_generators(generators(omega));
}

Ideal LipschitzSystem::coordinate_ideal(const std::vector<Elem>& omega) const {
  return Ideal::from_generators(omega);
}

PowerProduct LipschitzSystem::c_fin() const {
  PowerProduct out;
  long deg = field_->degree();
  for (auto& d : defects_)
    out = out * PowerProduct::prime_power(d.prime.under_p, rat(d.prime.res_f * d.bound, deg));
  return out;
}

Interval LipschitzSystem::c_inf(long bits) const {
  // at an infinite place the gauge is sandwiched between row sums of the form
  // matrix and of a left inverse: N_w(z) <= (max row sum) max|z| and
  // max|z| <= (max inverse row sum) N_w(z)
  const OrderPtr& K = field_;
  Rat target = rat(1, Int(1) << (bits + 8));
  Interval best(Rat(1));
  auto consider_rows = [&](const std::vector<std::vector<Elem>>& mat) {
    for (long w = 0; w < K->num_places(); w++) {
      for (auto& r : mat) {
        Interval rowsum(Rat(0));
        for (auto& x : r)
          if (!x.is_zero()) rowsum = rowsum + K->abs_embedding(x.c, w, target);
        best = best.max(rowsum);
      }
    }
  };
  consider_rows(rows_);
  if (variant_ != Variant::MaxNorm) consider_rows(left_inverse_rows(K, rows_, n_));
  return best.round_out(bits);
}

std::vector<Ideal> LipschitzSystem::gauge_ideal_classes() const {
  std::vector<Ideal> out{Ideal::whole(field_)};
  for (auto& d : defects_) {
    std::vector<Ideal> next;
    for (long b = -d.bound; b <= d.bound; b++) {
      Ideal pb = d.prime.ideal.pow(b);
      for (auto& x : out) next.push_back(x * pb);
    }
    out = next;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Interval HeightPow::total(long bits) const {
  if (arch2_exact) {
    Interval a2 = int_sqrt(Interval(arch2), bits + 8);
    return (a2 * finite).round_out(bits);
  }
  return (arch * finite).round_out(bits);
}

Interval HeightPow::height(long bits) const {
  Interval t = total(bits + 8);
  if (t.lo < 0) t.lo = 0;
  return int_nth_root(t, (unsigned long)deg, bits);
}

int HeightPow::cmp_height(const Rat& x) const {
  if (x <= 0) return 1;
  if (arch2_exact) {
    // compare finite^2 * arch2 against x^(2 deg), all exact
    Rat lhs = finite * finite * arch2;
    Rat rhs = pow_rat_int(x, 2 * deg);
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
  }
  Rat xp = pow_rat_int(x, deg);
  Interval v = arch * finite;
  if (v.hi < xp) return -1;
  if (v.lo > xp) return 1;
  return 0;
}

namespace {

// exact rational square of |sigma_w(g)| when available (forward declaration)
bool exact_abs_square(const OrderPtr& K, const Elem& g, long w, Rat* out);

// the place-wise winning generator, decided exactly
std::vector<long> classify_argmax(const std::vector<Elem>& gens) {
  const OrderPtr& K = gens.at(0).order;
  long places = K->num_places();
  std::vector<long> argmax(places, -1);
  // fast path: if every generator has a rational squared magnitude at every
  // place, the winner comparison is exact rational arithmetic
  {
    bool all_exact = true;
    std::vector<std::vector<Rat>> sq(places, std::vector<Rat>(gens.size(), Rat(0)));
    for (long w = 0; w < places && all_exact; w++)
      for (size_t i = 0; i < gens.size() && all_exact; i++) {
        if (gens[i].is_zero()) {
          sq[w][i] = -1;  // never the max of a nonzero tuple
          continue;
        }
        Rat c;
        if (exact_abs_square(K, gens[i], w, &c))
          sq[w][i] = c;
        else
          all_exact = false;
      }
    if (all_exact) {
      for (long w = 0; w < places; w++) {
        long best = 0;
        for (size_t i = 1; i < gens.size(); i++)
          if (sq[w][i] > sq[w][best]) best = (long)i;
        argmax[w] = best;
      }
      return argmax;
    }
  }
  for (long w = 0; w < places; w++) {
    Rat t = rat(1, Int(1) << 24);
    std::vector<size_t> alive;
    for (size_t i = 0; i < gens.size(); i++)
      if (!gens[i].is_zero()) alive.push_back(i);
    long rounds = 0;
    while (alive.size() > 1) {
      if (++rounds > 24) fail(Errc::UndecidableComparison, "generator magnitudes inseparable");
      std::vector<Interval> vals;
      for (size_t i : alive) vals.push_back(K->abs_embedding(gens[i].c, w, t));
      std::vector<size_t> next;
      for (size_t a = 0; a < alive.size(); a++) {
        bool drop = false;
        for (size_t b = 0; b < alive.size() && !drop; b++) {
          if (a == b) continue;
          if (vals[a].hi < vals[b].lo) drop = true;  // strictly smaller
          if (!drop && a > b) {
            // exact ties: g_a = +- g_b, or |g_a/g_b| = 1 certified through the
            // conjugation automorphism
            const Elem& x = gens[alive[a]];
            const Elem& y = gens[alive[b]];
            if ((x - y).is_zero() || (x + y).is_zero()) {
              drop = true;
            } else if (K->has_conj() && vals[a].overlaps(vals[b])) {
              Elem r = x / y;
              Elem q = r * Elem{K, K->conj(r.c)};
              if (q == Elem::one(K)) drop = true;
            }
          }
        }
        if (!drop) next.push_back(alive[a]);
      }
      alive = next;
      t /= 65536;
    }
    argmax[w] = (long)alive[0];
  }
  return argmax;
}

// exact rational square of |sigma_w(g)| when available
bool exact_abs_square(const OrderPtr& K, const Elem& g, long w, Rat* out) {
  if (K->place(w).real) {
    Elem g2 = g * g;
    // sigma_w(g^2) is rational iff g^2 is a rational element
    Elem diff = g2 - Elem::rational(K, Rat(0));
    QVec one = K->coords_of_one();
    // g^2 = c * 1?
    Rat c;
    bool found = false;
    for (long i = 0; i < K->degree(); i++) {
      if (one[i] != 0) {
        c = g2.c[i] / one[i];
        found = true;
        break;
      }
    }
    if (!found) return false;
    Elem test = Elem::rational(K, c);
    if (test == g2 && c >= 0) {
      *out = c;
      return true;
    }
    return false;
  }
  if (!K->has_conj()) return false;
  Elem q = g * Elem{K, K->conj(g.c)};
  QVec one = K->coords_of_one();
  Rat c;
  bool found = false;
  for (long i = 0; i < K->degree(); i++) {
    if (one[i] != 0) {
      c = q.c[i] / one[i];
      found = true;
      break;
    }
  }
  if (!found) return false;
  if (Elem::rational(K, c) == q && c >= 0) {
    *out = c;
    return true;
  }
  return false;
}

}  // namespace

HeightPow height_pow_from_generators(const std::vector<Elem>& gens) {
  const OrderPtr& K = gens.at(0).order;
  bool allzero = true;
  for (auto& g : gens)
    if (!g.is_zero()) allzero = false;
  if (allzero) fail(Errc::ZeroTuple, "all generators vanish");
  HeightPow hp;
  hp.deg = K->degree();
  hp.finite = Rat(1) / Ideal::from_generators(gens).norm();
  auto argmax = classify_argmax(gens);
  long places = K->num_places();
  // try the fully exact route: every winning |g|^2 rational
  bool exact = true;
  Rat arch2 = 1;
  for (long w = 0; w < places && exact; w++) {
    Rat c;
    if (exact_abs_square(K, gens[argmax[w]], w, &c)) {
      long dw = K->place(w).local_degree();
      // contributes |g|^(2 dw)
      arch2 *= dw == 1 ? c : c * c;
    } else {
      exact = false;
    }
  }
  if (exact) {
    hp.arch2_exact = true;
    hp.arch2 = arch2;
    hp.arch = int_sqrt(Interval(arch2), 96);
    return hp;
  }
  hp.arch2_exact = false;
  Rat t = rat(1, Int(1) << 140);
  Interval prod(Rat(1));
  for (long w = 0; w < places; w++) {
    Interval v = K->abs_embedding(gens[argmax[w]].c, w, t);
    long dw = K->place(w).local_degree();
    prod = prod * (dw == 1 ? v : v.square());
  }
  hp.arch = prod.round_out(128);
  return hp;
}

int height_cmp(const std::vector<Elem>& gens, const Rat& x, bool squared, long cap_bits) {
  if (x <= 0) return 1;
  const OrderPtr& K = gens.at(0).order;
  long deg = K->degree();
  Rat fin = Rat(1) / Ideal::from_generators(gens).norm();
  auto argmax = classify_argmax(gens);
  long places = K->num_places();
  bool exact = true;
  Rat arch2 = 1;
  for (long w = 0; w < places && exact; w++) {
    Rat c;
    if (exact_abs_square(K, gens[argmax[w]], w, &c)) {
      long dw = K->place(w).local_degree();
      arch2 *= dw == 1 ? c : c * c;
    } else {
      exact = false;
    }
  }
  // H^(2 deg) = fin^2 arch2 compared against x^(2 deg) (or x^deg for H^2)
  Rat target = squared ? pow_rat_int(x, deg) : pow_rat_int(x, 2 * deg);
  if (exact) {
    Rat lhs = fin * fin * arch2;
    if (lhs < target) return -1;
    if (lhs > target) return 1;
    return 0;
  }
  Rat scaled = target / (fin * fin);
  for (long bits = 96; bits <= cap_bits; bits *= 2) {
    Rat t = rat(1, Int(1) << bits);
    Interval prod(Rat(1));
    for (long w = 0; w < places; w++) {
      Interval v = K->abs_embedding(gens[argmax[w]].c, w, t);
      long dw = K->place(w).local_degree();
      prod = prod * (dw == 1 ? v : v.square());
    }
    Interval a2 = prod.square();
    if (a2.hi < scaled) return -1;
    if (a2.lo > scaled) return 1;
  }
  return 2;
}

HeightPow weil_height_pow_affine(const std::vector<Elem>& omega) {
  std::vector<Elem> gens{Elem::one(omega.at(0).order)};
  for (auto& x : omega) gens.push_back(x);
  return height_pow_from_generators(gens);
}

HeightPow weil_height_pow_projective(const std::vector<Elem>& omega) {
  return height_pow_from_generators(omega);
}

HeightPow lipschitz_height_pow(const LipschitzSystem& sys, const std::vector<Elem>& omega) {
  return height_pow_from_generators(sys.generators(omega));
}

PowerProduct finite_abs(const Elem& a, const PrimeIdeal& p) {
  if (a.is_zero()) fail(Errc::ZeroElement, "finite absolute value of zero");
  long v = valuation_elem(a, p);
  long dw = p.ram_e * p.res_f;
  return PowerProduct::prime_power(p.under_p, rat(-p.res_f * v, dw));
}

Rat rational_height(const Rat& x) {
  if (x == 0) return Rat(1);
  Int a = num(x), b = den(x);
  if (a < 0) a = -a;
  return Rat(std::max(a, b));
}

}  // namespace hc
