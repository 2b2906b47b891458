#include "lattice.hpp"

#include <algorithm>

namespace hc {

void Lattice::refresh() {
  size_t d = basis_.size();
  QMat bf = q_mul(basis_, form_);
  gram_ = q_mul(bf, q_transpose(basis_));
  if (q_det(gram_) == 0) fail(Errc::SingularBasis, "lattice basis is singular");
  (void)d;
}

Lattice Lattice::standard(QMat basis) {
  Lattice l;
  l.basis_ = std::move(basis);
  l.form_ = q_identity(l.basis_.empty() ? 0 : l.basis_[0].size());
  l.refresh();
  return l;
}

Lattice Lattice::with_form(QMat basis, QMat form) {
  Lattice l;
  l.basis_ = std::move(basis);
  l.form_ = std::move(form);
  l.refresh();
  return l;
}

Rat Lattice::det2() const { return q_det(gram_); }

PowerProduct Lattice::det() const { return PowerProduct::from_rational(det2()).pow(rat(1, 2)); }

Interval Lattice::det_interval(long bits) const { return det().eval(bits); }

Rat Lattice::length2(const ZVec& x) const {
  size_t n = x.size();
  Rat v = 0;
  for (size_t i = 0; i < n; i++) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < n; j++) {
      if (x[j] == 0) continue;
      v += Rat(x[i] * x[j]) * gram_[i][j];
    }
  }
  return v;
}

QVec Lattice::ambient(const ZVec& x) const {
  QVec y(basis_[0].size(), Rat(0));
  for (size_t i = 0; i < x.size(); i++) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < y.size(); j++) y[j] += Rat(x[i]) * basis_[i][j];
  }
  return y;
}

Lattice Lattice::lll(const Rat& delta) const {
  long n = rank();
  QMat b = basis_;
  // Gram-Schmidt data over the form
  auto dot = [&](const QVec& x, const QVec& y) {
    QVec fx = q_vec_mul(x, form_);
    Rat s = 0;
    for (size_t i = 0; i < fx.size(); i++) s += fx[i] * y[i];
    return s;
  };
  QMat mu = q_zero(n, n);
  QVec bstar2(n, Rat(0));
  std::vector<QVec> bstar(n);
  auto recompute = [&]() {
    for (long i = 0; i < n; i++) {
      bstar[i] = b[i];
      for (long j = 0; j < i; j++) {
        mu[i][j] = dot(b[i], bstar[j]) / bstar2[j];
        for (size_t t = 0; t < bstar[i].size(); t++) bstar[i][t] -= mu[i][j] * bstar[j][t];
      }
      bstar2[i] = dot(bstar[i], bstar[i]);
    }
  };
  recompute();
  long k = 1;
  long guard = 0;
  while (k < n) {
    if (++guard > 100000) fail(Errc::PrecisionUnreachable, "LLL iteration cap");
    // size reduction
    for (long j = k - 1; j >= 0; j--) {
      Int q = round_rat(mu[k][j]);
      if (q != 0) {
        for (size_t t = 0; t < b[k].size(); t++) b[k][t] -= Rat(q) * b[j][t];
        recompute();
      }
    }
    if (bstar2[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar2[k - 1]) {
      k++;
    } else {
      std::swap(b[k], b[k - 1]);
      recompute();
      k = std::max(k - 1, 1L);
    }
  }
  Lattice out;
  out.basis_ = b;
  out.form_ = form_;
  out.refresh();
  return out;
}

namespace {

// floor of sqrt(p/q) for p, q > 0
Int floor_sqrt_rat(const Rat& v) {
  if (v < 0) fail(Errc::UnsupportedShape, "sqrt of negative");
  return floor_div(isqrt(num(v) * den(v)), den(v));
}

// largest integer m with m + c <= sqrt(u)  (u >= 0)
Int upper_index(const Rat& u, const Rat& c) {
  Int m = floor_sqrt_rat(u) - ceil_rat(c);
  auto ok = [&](const Int& t) {
    Rat tc = Rat(t) + c;
    if (tc <= 0) return true;
    return tc * tc <= u;
  };
  while (ok(m + 1)) m += 1;
  while (!ok(m)) m -= 1;
  return m;
}

// smallest integer m with m + c >= -sqrt(u)
Int lower_index(const Rat& u, const Rat& c) {
  Int m = -floor_sqrt_rat(u) - floor_rat(c) - 2;
  auto ok = [&](const Int& t) {
    Rat tc = Rat(t) + c;
    if (tc >= 0) return true;
    return tc * tc <= u;
  };
  while (!ok(m)) m += 1;
  while (ok(m - 1)) m -= 1;
  return m;
}

struct GSData {
  long n;
  QMat mu;
  QVec b2;
};

GSData gram_schmidt(const QMat& gram) {
  long n = (long)gram.size();
  GSData g;
  g.n = n;
  g.mu = q_zero(n, n);
  g.b2.assign(n, Rat(0));
  for (long i = 0; i < n; i++) {
    for (long j = 0; j < i; j++) {
      Rat acc = gram[i][j];
      for (long t = 0; t < j; t++) acc -= g.mu[i][t] * g.mu[j][t] * g.b2[t];
      g.mu[i][j] = acc / g.b2[j];
    }
    Rat acc = gram[i][i];
    for (long t = 0; t < i; t++) acc -= g.mu[i][t] * g.mu[i][t] * g.b2[t];
    g.b2[i] = acc;
    if (g.b2[i] <= 0) fail(Errc::SingularBasis, "Gram matrix not positive definite");
  }
  return g;
}

// enumerate all x != 0 with Q(x) <= c2; if half_only, one representative per
// +-pair (the last nonzero coordinate positive)
void enumerate(const GSData& g, const Rat& c2, bool half_only, long cap,
               const std::function<void(const ZVec&, const Rat&)>& emit) {
  long n = g.n;
  ZVec x(n, Int(0));
  long emitted = 0;
  std::function<void(long, const Rat&)> rec = [&](long i, const Rat& rem) {
    if (i < 0) {
      bool zero = true;
      for (auto& v : x)
        if (v != 0) zero = false;
      if (zero) return;
      if (++emitted > cap) fail(Errc::BudgetExceeded, "lattice enumeration cap");
      emit(x, c2 - rem);
      return;
    }
    // center c_i = sum_{j > i} mu_{j,i} x_j
    Rat c = 0;
    for (long j = i + 1; j < n; j++) c += g.mu[j][i] * Rat(x[j]);
    Rat u = rem / g.b2[i];
    Int lo = lower_index(u, c);
    Int hi = upper_index(u, c);
    for (Int v = lo; v <= hi; v += 1) {
      x[i] = v;
      Rat term = g.b2[i] * (Rat(v) + c) * (Rat(v) + c);
      if (term > rem) continue;
      if (half_only && v < 0) {
        bool higher_zero = true;
        for (long j = i + 1; j < n; j++)
          if (x[j] != 0) higher_zero = false;
        if (higher_zero) continue;  // one representative per +- pair
      }
      rec(i - 1, rem - term);
    }
    x[i] = 0;
  };
  rec(n - 1, c2);
}

}  // namespace

std::vector<ZVec> Lattice::shorter_than(const Rat& c2, long cap) const {
  auto g = gram_schmidt(gram_);
  std::vector<ZVec> out;
  enumerate(g, c2, true, cap, [&](const ZVec& x, const Rat&) { out.push_back(x); });
  return out;
}

std::vector<Lattice::Minimum> Lattice::successive_minima(long upto) const {
  long n = rank();
  if (n > 12) fail(Errc::RankCap, "successive minima supported up to rank 12");
  upto = std::min(upto, n);
  Lattice red = lll();
  // LLL basis vectors give an upper bound for every successive minimum
  Rat c2 = 0;
  for (long i = 0; i < n; i++) c2 = std::max(c2, Rat(red.gram_[i][i]));
  auto g = gram_schmidt(red.gram_);
  std::vector<std::pair<Rat, ZVec>> all;
  enumerate(g, c2, true, 4000000, [&](const ZVec& x, const Rat& q) { all.emplace_back(q, x); });
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // greedy linear independence over Q
  std::vector<Minimum> out;
  QMat chosen;
  for (auto& [q, x] : all) {
    if ((long)out.size() == upto) break;
    QVec amb(n, Rat(0));
    for (long i = 0; i < n; i++)
      for (long j = 0; j < n; j++) amb[j] += Rat(x[i]) * red.basis_[i][j];
    QMat test = chosen;
    test.push_back(amb);
    // rank check
    QMat m = test;
    long rank = 0;
    size_t cols = m[0].size();
    for (size_t c = 0; c < cols && rank < (long)m.size(); c++) {
      long p = -1;
      for (long i = rank; i < (long)m.size(); i++)
        if (m[i][c] != 0) {
          p = i;
          break;
        }
      if (p < 0) continue;
      std::swap(m[p], m[rank]);
      for (long i = 0; i < (long)m.size(); i++) {
        if (i == rank || m[i][c] == 0) continue;
        Rat f = m[i][c] / m[rank][c];
        for (size_t j = 0; j < cols; j++) m[i][j] -= f * m[rank][j];
      }
      rank++;
    }
    if (rank == (long)test.size()) {
      chosen = test;
      out.push_back({q, amb});
    }
  }
  if ((long)out.size() < upto) fail(Errc::PrecisionUnreachable, "minima search exhausted");
  return out;
}

Lattice Lattice::product(const Lattice& a, const Lattice& b) {
  long na = a.rank(), nb = b.rank();
  size_t ca = a.basis_[0].size(), cb = b.basis_[0].size();
  QMat basis = q_zero(na + nb, ca + cb);
  for (long i = 0; i < na; i++)
    for (size_t j = 0; j < ca; j++) basis[i][j] = a.basis_[i][j];
  for (long i = 0; i < nb; i++)
    for (size_t j = 0; j < cb; j++) basis[na + i][ca + j] = b.basis_[i][j];
  QMat form = q_zero(ca + cb, ca + cb);
  for (size_t i = 0; i < ca; i++)
    for (size_t j = 0; j < ca; j++) form[i][j] = a.form_[i][j];
  for (size_t i = 0; i < cb; i++)
    for (size_t j = 0; j < cb; j++) form[ca + i][ca + j] = b.form_[i][j];
  return with_form(basis, form);
}

bool Lattice::same_lattice(const Lattice& o) const {
  if (rank() != o.rank()) return false;
  // same row span over Z: solve each basis vector in the other basis
  QMat inv = q_inverse(o.basis_);
  for (auto& row : basis_) {
    QVec y = q_vec_mul(row, inv);
    for (auto& v : y)
      if (den(v) != 1) return false;
  }
  QMat inv2 = q_inverse(basis_);
  for (auto& row : o.basis_) {
    QVec y = q_vec_mul(row, inv2);
    for (auto& v : y)
      if (den(v) != 1) return false;
  }
  return true;
}

QMat minkowski_form(const OrderPtr& o) {
  long d = o->degree();
  if (o->complex_places() == 0) return o->trace_form();
  if (d == 2 && o->real_places() == 0) {
    // imaginary quadratic: <x, y> = Re(sigma x * conj(sigma y)) = Tr(x * ybar)/2
    // conj sends gamma to -a1 - gamma (the other root of x^2 + a1 x + a0)
    Rat a1 = Rat(o->min_poly()[1]);
    QMat conj_power = q_zero(2, 2);  // action on power coords (1, gamma)
    conj_power[0][0] = 1;
    conj_power[1][0] = -a1;
    conj_power[1][1] = -1;
    QMat form = q_zero(2, 2);
    for (long i = 0; i < 2; i++)
      for (long j = 0; j < 2; j++) {
        QVec pj = o->to_power(QVec{j == 0 ? Rat(1) : Rat(0), j == 1 ? Rat(1) : Rat(0)});
        QVec pj_conj = q_vec_mul(pj, conj_power);
        QVec bj = o->from_power(pj_conj);
        QVec ei(2, Rat(0));
        ei[i] = 1;
        QVec prod = o->mul(ei, bj);
        form[i][j] = o->trace_of(prod) / 2;
      }
    return form;
  }
  fail(Errc::UnsupportedShape, "exact Minkowski form needs totally real or imaginary quadratic");
}

Lattice ideal_lattice(const Ideal& a) {
  const OrderPtr& o = a.order();
  long d = o->degree();
  QMat basis = q_zero(d, d);
  for (long i = 0; i < d; i++)
    for (long j = 0; j < d; j++) basis[i][j] = rat(a.numer()[i][j], a.denom());
  return Lattice::with_form(basis, minkowski_form(o));
}

Body Body::ball(const Rat& r2, bool exclude_zero) {
  Body b;
  b.kind = Kind::Ball;
  b.radius2 = r2;
  b.exclude_zero = exclude_zero;
  return b;
}

Body Body::cube(const std::vector<std::pair<Rat, Rat>>& bounds) {
  Body b;
  b.kind = Kind::Box;
  b.box = bounds;
  return b;
}

long count_lattice_points(const Lattice& l, const Body& body) {
  if (l.rank() > 6) fail(Errc::RankCap, "point counting supported up to rank 6");
  Rat r2;
  switch (body.kind) {
    case Body::Kind::Ball:
      r2 = body.radius2;
      break;
    case Body::Kind::Box: {
      // bounding ball of the box in the Euclidean form
      bool ident = true;
      for (size_t i = 0; i < l.form().size(); i++)
        for (size_t j = 0; j < l.form().size(); j++)
          if (l.form()[i][j] != Rat(i == j ? 1 : 0)) ident = false;
      if (!ident) fail(Errc::UnsupportedShape, "box bodies need the standard form");
      r2 = 0;
      for (auto& [lo, hi] : body.box) r2 += std::max(lo * lo, hi * hi);
      break;
    }
    case Body::Kind::Star:
      r2 = body.star_radius2;
      break;
  }
  auto g = gram_schmidt(l.gram());
  long count = 0;
  enumerate(g, r2, true, 50000000, [&](const ZVec& x, const Rat& q) {
    // the enumeration walks one representative per +-pair; test both signs
    for (int sgn = 0; sgn < 2; sgn++) {
      ZVec v = x;
      if (sgn) {
        bool zero = true;
        for (auto& t : v)
          if (t != 0) zero = false;
        if (zero) continue;
        for (auto& t : v) t = -t;
      }
      bool in = false;
      switch (body.kind) {
        case Body::Kind::Ball:
          in = q <= body.radius2;
          break;
        case Body::Kind::Box: {
          QVec y = l.ambient(v);
          in = true;
          for (size_t i = 0; i < y.size(); i++)
            if (y[i] < body.box[i].first || y[i] > body.box[i].second) in = false;
          break;
        }
        case Body::Kind::Star: {
          int m = body.star_member(l.ambient(v));
          if (m == 0) fail(Errc::UndecidableMembership, "star body membership undecided");
          in = m > 0;
          break;
        }
      }
      if (in) count++;
    }
  });
  // zero vector
  bool zero_in = false;
  if (!body.exclude_zero) {
    switch (body.kind) {
      case Body::Kind::Ball:
        zero_in = body.radius2 >= 0;
        break;
      case Body::Kind::Box: {
        zero_in = true;
        for (auto& [lo, hi] : body.box)
          if (lo > 0 || hi < 0) zero_in = false;
        break;
      }
      case Body::Kind::Star: {
        QVec z(l.basis()[0].size(), Rat(0));
        int m = body.star_member(z);
        if (m == 0) fail(Errc::UndecidableMembership, "star body membership undecided at 0");
        zero_in = m > 0;
        break;
      }
    }
  }
  return count + (zero_in ? 1 : 0);
}

ConditionLattice build_condition_lattice(const ExtensionPtr& ext,
                                         const std::vector<std::vector<Elem>>& rows,
                                         const Ideal& target, const Ideal& coord, long n) {
  const OrderPtr& k = ext->base();
  const OrderPtr& K = ext->top();
  long dk = k->degree(), dK = K->degree();
  long N = dk * (n + 1);
  if (coord.order() != k) fail(Errc::OrderMismatch, "coordinate ideal not over the base");
  if (target.order() != K) fail(Errc::OrderMismatch, "target ideal not over the top");
  // parametrize omega_j = y_j * (coord basis); conditions: each generator form
  // lands in the target ideal
  QMat coordbasis = q_zero(dk, dk);
  for (long i = 0; i < dk; i++)
    for (long j = 0; j < dk; j++) coordbasis[i][j] = rat(coord.numer()[i][j], coord.denom());
  QMat tgt_inv = q_inverse(q_from_z(target.numer()));
  // conditions matrix: (#rows * dK) x N, mapping y to target-inverse coords
  QMat cond = q_zero(rows.size() * dK, N);
  for (size_t r = 0; r < rows.size(); r++) {
    for (long j = 0; j <= n; j++) {
      const Elem& coeff = rows[r][j];
      if (coeff.order != K) fail(Errc::OrderMismatch, "form coefficient not in the top field");
      if (coeff.is_zero()) continue;
      for (long t = 0; t < dk; t++) {
        // contribution of y_{j,t}: coeff * embed(coord basis elem t)
        Elem base_elem{k, QVec(coordbasis[t])};
        Elem img = ext->embed(base_elem);
        Elem prod = img * coeff;
        // membership coords in target: den_target * prod * num^-1
        QVec w(prod.c);
        for (auto& v : w) v *= target.denom();
        QVec m = q_vec_mul(w, tgt_inv);
        for (long s = 0; s < dK; s++) cond[r * dK + s][j * dk + t] = m[s];
      }
    }
  }
  Int q;
  ZMat condz = z_from_q(cond, &q);
  ZMat y = z_mod_kernel_lattice(condz, q);
  // basis in omega coordinates: y rows times blockdiag(coordbasis)
  QMat basis = q_zero(N, N);
  for (long i = 0; i < N; i++)
    for (long j = 0; j <= n; j++)
      for (long t = 0; t < dk; t++) {
        if (y[i][j * dk + t] == 0) continue;
        for (long s = 0; s < dk; s++)
          basis[i][j * dk + s] += Rat(y[i][j * dk + t]) * coordbasis[t][s];
      }
  QMat kform = minkowski_form(k);
  QMat form = q_zero(N, N);
  for (long j = 0; j <= n; j++)
    for (long a = 0; a < dk; a++)
      for (long b = 0; b < dk; b++) form[j * dk + a][j * dk + b] = kform[a][b];
  ConditionLattice out;
  out.lattice = Lattice::with_form(basis, form);
  out.target = target;
  out.coord = coord;
  out.n = n;
  return out;
}

Rat condition_lattice_index(const ExtensionPtr& ext, const std::vector<std::vector<Elem>>& rows,
                            const Ideal& target, const Ideal& coord, const Ideal& e) {
  long n = (long)rows[0].size() - 1;
  ConditionLattice big = build_condition_lattice(ext, rows, target, coord, n);
  ConditionLattice small = build_condition_lattice(ext, rows, target, coord * e, n);
  // the form is shared, so the index is the ratio of coordinate determinants
  Rat idx = q_det(small.lattice.basis()) / q_det(big.lattice.basis());
  if (idx < 0) idx = -idx;
  return idx;
}

}  // namespace hc
