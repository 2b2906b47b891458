#include "nf.hpp"

#include <algorithm>
#include <complex>
#include <sstream>

namespace hc {

namespace {

// power sums of the roots of a monic integer polynomial (Newton identities)
std::vector<Rat> power_sums(const ZPoly& f, long upto) {
  long d = (long)f.size() - 1;
  std::vector<Rat> c(d);  // c[j] = coefficient of x^j
  for (long j = 0; j < d; j++) c[j] = Rat(f[j]);
  std::vector<Rat> p(upto + 1, Rat(0));
  p[0] = d;
  for (long k = 1; k <= upto; k++) {
    Rat acc = 0;
    for (long i = 1; i < k && i <= d; i++) acc += c[d - i] * p[k - i];
    if (k <= d) acc += Rat(k) * c[d - k];
    p[k] = -acc;
  }
  return p;
}

QPoly poly_mod_minpoly(QPoly a, const ZPoly& f) {
  QPoly q, r;
  qp_divmod(a, qp_from_z(f), q, r);
  return r;
}

std::vector<std::complex<double>> durand_kerner(const std::vector<double>& c) {
  // c are monic coefficients low->high, c.back() == 1
  long d = (long)c.size() - 1;
  auto eval = [&](std::complex<double> z) {
    std::complex<double> v = 0;
    for (long i = d; i >= 0; i--) v = v * z + c[i];
    return v;
  };
  double bound = 1;
  for (long i = 0; i < d; i++) bound = std::max(bound, std::abs(c[i]));
  bound += 1;
  std::vector<std::complex<double>> z(d);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> cur = 1;
  for (long i = 0; i < d; i++) {
    cur *= seed;
    z[i] = cur * bound / std::abs(cur);
    z[i] *= (0.3 + 0.6 * (i + 1.0) / d);
  }
  for (int iter = 0; iter < 500; iter++) {
    double moved = 0;
    for (long i = 0; i < d; i++) {
      std::complex<double> denom = 1;
      for (long j = 0; j < d; j++)
        if (j != i) denom *= (z[i] - z[j]);
      if (std::abs(denom) < 1e-300) denom = 1e-300;
      std::complex<double> delta = eval(z[i]) / denom;
      z[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

Rat rat_of_double(double x) {
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

}  // namespace

bool roots_of_unity_count_plausible(long w, long degree, long real_places) {
  if (w < 2 || w % 2 != 0) return false;
  if (real_places > 0 && w != 2) return false;
  // phi(w) must divide the degree
  long phi = 1;
  long m = w;
  for (long p = 2; p * p <= m; p++) {
    if (m % p) continue;
    long pk = 1;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    phi *= pk - pk / p;
  }
  if (m > 1) phi *= m - 1;
  return degree % phi == 0;
}

OrderPtr Order::create(std::string name, ZPoly min_poly, QMat basis, OrderInvariants inv,
                       std::vector<PrimeOverride> overrides, QMat conj_map) {
  auto o = std::shared_ptr<Order>(new Order());
  o->name_ = std::move(name);
  o->min_poly_ = std::move(min_poly);
  long d = (long)o->min_poly_.size() - 1;
  o->d_ = d;
  if (d < 1 || o->min_poly_.back() != 1)
    fail(Errc::BadFixture, "minimal polynomial must be monic of degree >= 1");
  if (d > 1 && !z_is_irreducible(o->min_poly_)) fail(Errc::ReducibleMinPoly, o->name_);

  if ((long)basis.size() != d) fail(Errc::BadFixture, "integral basis has wrong rank");
  for (auto& row : basis) {
    if ((long)row.size() != d) fail(Errc::BadFixture, "integral basis row of wrong length");
  }
  o->basis_ = basis;
  o->basis_inv_ = q_inverse(basis);  // throws SingularBasis on degenerate input
  o->inv_ = inv;

  // structure constants in the integral basis; closure demands integers
  o->mult_.assign(d * d, ZVec(d));
  for (long i = 0; i < d; i++) {
    QPoly bi(basis[i].begin(), basis[i].end());
    for (long j = 0; j < d; j++) {
      QPoly bj(basis[j].begin(), basis[j].end());
      QPoly prod = poly_mod_minpoly(qp_mul(qp_normalize(bi), qp_normalize(bj)), o->min_poly_);
      prod.resize(d, Rat(0));
      QVec coords = q_vec_mul(QVec(prod.begin(), prod.end()), o->basis_inv_);
      for (long k = 0; k < d; k++) {
        if (den(coords[k]) != 1)
          fail(Errc::ClosureError, o->name_ + ": basis product leaves the module");
        o->mult_[i * d + j][k] = num(coords[k]);
      }
    }
  }
  // associativity on basis triples and unitality
  {
    QVec onep(d, Rat(0));
    onep[0] = 1;  // the element 1 in power coordinates
    QVec one_coords = q_vec_mul(onep, o->basis_inv_);
    for (auto& x : one_coords)
      if (den(x) != 1) fail(Errc::ClosureError, o->name_ + ": 1 is not in the module");
    o->one_ = one_coords;
    for (long i = 0; i < d && d <= 8; i++)
      for (long j = 0; j < d; j++)
        for (long k = 0; k < d; k++) {
          QVec ij(d), jk(d);
          for (long t = 0; t < d; t++) {
            ij[t] = Rat(o->mult_[i * d + j][t]);
            jk[t] = Rat(o->mult_[j * d + k][t]);
          }
          QVec ek(d, Rat(0)), ei(d, Rat(0));
          ek[k] = 1;
          ei[i] = 1;
          if (o->mul(ij, ek) != o->mul(ei, jk))
            fail(Errc::ClosureError, o->name_ + ": multiplication not associative");
        }
    QVec e0(d, Rat(0));
    e0[0] = 1;
    if (o->mul(o->one_, e0) != e0)
      fail(Errc::ClosureError, o->name_ + ": unit law fails");
  }

  // trace form determinant must reproduce the declared discriminant
  {
    auto psums = power_sums(o->min_poly_, 2 * d);
    auto trace_power = [&](const QPoly& a) {
      Rat t = 0;
      for (size_t i = 0; i < a.size(); i++) t += a[i] * psums[i];
      return t;
    };
    o->trace_form_ = q_zero(d, d);
    for (long i = 0; i < d; i++) {
      QPoly bi(basis[i].begin(), basis[i].end());
      for (long j = 0; j < d; j++) {
        QPoly bj(basis[j].begin(), basis[j].end());
        QPoly prod = poly_mod_minpoly(qp_mul(qp_normalize(bi), qp_normalize(bj)), o->min_poly_);
        o->trace_form_[i][j] = trace_power(prod);
      }
    }
    Rat dt = q_det(o->trace_form_);
    if (dt != Rat(inv.disc)) fail(Errc::DiscMismatch, o->name_);
    // index^2 = disc(min_poly) / disc(O)
    Rat pd = qp_discriminant(qp_from_z(o->min_poly_));
    Rat ratio = pd / dt;
    if (den(ratio) != 1) fail(Errc::DiscMismatch, o->name_ + ": basis not containing Z[gamma]");
    Int isq = num(ratio);
    Int idx;
    if (!is_perfect_square(isq, &idx))
      fail(Errc::DiscMismatch, o->name_ + ": disc(min_poly)/disc not a square");
    o->index_sq_ = isq;
  }

  // signature
  o->r_ = sturm_count_all(qp_from_z(o->min_poly_));
  if ((d - o->r_) % 2 != 0) fail(Errc::BadFixture, "impossible signature");
  o->s_ = (d - o->r_) / 2;
  if (!roots_of_unity_count_plausible(inv.roots_of_unity, d, o->r_))
    fail(Errc::BadFixture, o->name_ + ": roots-of-unity count impossible for this signature");

  o->overrides_ = std::move(overrides);
  if (!conj_map.empty()) {
    // conjugation must be an involutive ring automorphism fixing 1
    o->conj_ = conj_map;
    auto apply = [&](const QVec& v) { return q_vec_mul(v, o->conj_); };
    QVec one2 = apply(o->one_);
    if (one2 != o->one_) fail(Errc::BadFixture, "conjugation does not fix 1");
    for (long i = 0; i < d; i++) {
      QVec ei(d, Rat(0));
      ei[i] = 1;
      if (apply(apply(ei)) != ei) fail(Errc::BadFixture, "conjugation is not an involution");
      for (long j = 0; j < d; j++) {
        QVec ej(d, Rat(0));
        ej[j] = 1;
        if (apply(o->mul(ei, ej)) != o->mul(apply(ei), apply(ej)))
          fail(Errc::BadFixture, "conjugation is not a ring map");
      }
    }
  }

  // Archimedean enclosures
  {
    QPoly f = qp_from_z(o->min_poly_);
    auto iso = isolate_real_roots(f);
    if ((long)iso.size() != o->r_) fail(Errc::PrecisionUnreachable, "real root isolation failed");
    Rat w0 = rat(1, Int(1) << 32);
    for (auto& [lo, hi] : iso) {
      Place pl;
      pl.real = true;
      auto [l2, h2] = refine_root(f, lo, hi, w0);
      pl.x = Interval(l2, h2);
      o->places_.push_back(pl);
    }
    if (o->s_ > 0) {
      std::vector<double> cd(o->min_poly_.size());
      for (size_t i = 0; i < cd.size(); i++) cd[i] = o->min_poly_[i].get_d();
      QPoly fprime = qp_derivative(f);
      bool ok = false;
      for (int attempt = 0; attempt < 6 && !ok; attempt++) {
        auto roots = durand_kerner(cd);
        std::vector<CBox> boxes;
        double h0 = 1e-7 * std::pow(10.0, attempt);
        for (auto& z : roots) {
          if (z.imag() <= 1e-9) continue;
          Rat re = rat_of_double(z.real()), im = rat_of_double(z.imag());
          Rat h = rat_of_double(h0);
          CBox b(Interval(re - h, re + h), Interval(im - h, im + h));
          // interval Newton proves existence + uniqueness when it contracts
          bool good = false;
          for (int tries = 0; tries < 4; tries++) {
            CBox mid = CBox::point(b.re.mid(), b.im.mid());
            CBox fm = qp_eval(f, mid);
            CBox fp = qp_eval(fprime, b);
            if (fp.norm2().contains_zero()) break;
            CBox n = mid - fm / fp;
            if (b.strictly_contains(n)) {
              b = n;
              good = true;
              break;
            }
            // widen and retry
            Rat wr = b.re.width(), wi = b.im.width();
            b = CBox(Interval(b.re.lo - wr, b.re.hi + wr), Interval(b.im.lo - wi, b.im.hi + wi));
          }
          if (!good) continue;
          if (b.im.lo <= 0) continue;
          boxes.push_back(b);
        }
        // dedupe overlapping boxes, verify count
        std::vector<CBox> uniq;
        for (auto& b : boxes) {
          bool dup = false;
          for (auto& u : uniq)
            if (u.overlaps(b)) dup = true;
          if (!dup) uniq.push_back(b);
        }
        if ((long)uniq.size() == o->s_) {
          std::sort(uniq.begin(), uniq.end(), [](const CBox& a, const CBox& b) {
            if (a.re.lo != b.re.lo) return a.re.lo < b.re.lo;
            return a.im.lo < b.im.lo;
          });
          for (auto& b : uniq) {
            Place pl;
            pl.real = false;
            pl.z = b;
            o->places_.push_back(pl);
          }
          ok = true;
        }
      }
      if (!ok) fail(Errc::PrecisionUnreachable, "complex root isolation failed");
    }
    o->refine_places_locked(rat(1, Int(1) << 48));
  }
  return o;
}

const PrimeOverride* Order::override_for(const Int& p) const {
  for (auto& ov : overrides_)
    if (ov.p == p) return &ov;
  return nullptr;
}

QVec Order::to_power(const QVec& c) const { return q_vec_mul(c, basis_); }

QVec Order::from_power(const QVec& p) const { return q_vec_mul(p, basis_inv_); }

QVec Order::mul(const QVec& a, const QVec& b) const {
  QVec out(d_, Rat(0));
  for (long i = 0; i < d_; i++) {
    if (a[i] == 0) continue;
    for (long j = 0; j < d_; j++) {
      if (b[j] == 0) continue;
      Rat f = a[i] * b[j];
      const ZVec& row = mult_[i * d_ + j];
      for (long k = 0; k < d_; k++)
        if (row[k] != 0) out[k] += f * Rat(row[k]);
    }
  }
  return out;
}

QMat Order::mul_matrix(const QVec& a) const {
  QMat m = q_zero(d_, d_);
  for (long j = 0; j < d_; j++) {
    QVec ej(d_, Rat(0));
    ej[j] = 1;
    QVec col = mul(a, ej);
    for (long i = 0; i < d_; i++) m[i][j] = col[i];
  }
  return m;
}

Rat Order::trace_of(const QVec& a) const {
  // trace is linear; trace_form_[i][j] = Tr(b_i b_j) and Tr(b_i) = Tr(b_i * 1)
  Rat t = 0;
  for (long i = 0; i < d_; i++) {
    if (a[i] == 0) continue;
    Rat ti = 0;
    for (long j = 0; j < d_; j++) ti += trace_form_[i][j] * one_[j];
    t += a[i] * ti;
  }
  return t;
}

Rat Order::norm_of(const QVec& a) const { return q_det(mul_matrix(a)); }

Place Order::place(long i) const {
  std::lock_guard<std::mutex> g(place_mutex_);
  return places_.at(i);
}

void Order::refine_places(const Rat& width) const {
  std::lock_guard<std::mutex> g(place_mutex_);
  refine_places_locked(width);
}

void Order::refine_places_locked(const Rat& width) const {
  QPoly f = qp_from_z(min_poly_);
  QPoly fp = qp_derivative(f);
  for (auto& pl : places_) {
    if (pl.real) {
      if (pl.x.width() > width) {
        auto [lo, hi] = refine_root(f, pl.x.lo, pl.x.hi, width);
        pl.x = Interval(lo, hi);
      }
    } else {
      long guard = 0;
      while ((pl.z.re.width() > width || pl.z.im.width() > width) && guard < 200) {
        CBox mid = CBox::point(pl.z.re.mid(), pl.z.im.mid());
        CBox fm = qp_eval(f, mid);
        CBox der = qp_eval(fp, pl.z);
        if (der.norm2().contains_zero())
          fail(Errc::PrecisionUnreachable, "derivative box contains zero during refinement");
        CBox n = mid - fm / der;
        // intersect with the current box; Newton keeps the root inside
        Interval re(std::max(n.re.lo, pl.z.re.lo), std::min(n.re.hi, pl.z.re.hi));
        Interval im(std::max(n.im.lo, pl.z.im.lo), std::min(n.im.hi, pl.z.im.hi));
        CBox next(re, im);
        // round outward a little beyond the target to keep endpoints small
        long bits = 16;
        Rat w = width;
        while (w < 1) {
          w *= 2;
          bits++;
        }
        next = next.round_out(bits + 16);
        next = CBox(Interval(std::max(next.re.lo, pl.z.re.lo), std::min(next.re.hi, pl.z.re.hi)),
                    Interval(std::max(next.im.lo, pl.z.im.lo), std::min(next.im.hi, pl.z.im.hi)));
        if (next.re.width() >= pl.z.re.width() && next.im.width() >= pl.z.im.width()) {
          // no progress at this rounding; increase precision by bisection fallback
          fail(Errc::PrecisionUnreachable, "complex refinement stalled");
        }
        pl.z = next;
        guard++;
      }
      if (guard >= 200) fail(Errc::PrecisionUnreachable, "complex refinement iteration cap");
    }
  }
}

Interval Order::abs_embedding(const QVec& a, long i, const Rat& target) const {
  bool zero = true;
  for (auto& x : a)
    if (x != 0) zero = false;
  if (zero) return Interval(Rat(0));
  QVec p = to_power(a);
  QPoly ap = qp_normalize(QPoly(p.begin(), p.end()));
  Rat w = rat(1, Int(1) << 48);
  for (int round = 0; round < 40; round++) {
    Place pl = place(i);
    Interval v;
    if (pl.real) {
      v = qp_eval(ap, pl.x).abs();
    } else {
      long bits = 16;
      Rat t = target;
      while (t < 1) {
        t *= 2;
        bits++;
      }
      v = qp_eval(ap, pl.z).abs(bits + 24);
    }
    if (v.width() <= target) return v;
    w /= 65536;
    refine_places(w);
  }
  fail(Errc::PrecisionUnreachable, "abs_embedding refinement cap");
}

CBox Order::embedding_box(const QVec& a, long i, const Rat& target) const {
  QVec p = to_power(a);
  QPoly ap = qp_normalize(QPoly(p.begin(), p.end()));
  Rat w = rat(1, Int(1) << 48);
  for (int round = 0; round < 40; round++) {
    Place pl = place(i);
    CBox v = pl.real ? CBox(qp_eval(ap, pl.x), Interval(Rat(0))) : qp_eval(ap, pl.z);
    if (v.re.width() <= target && v.im.width() <= target) return v;
    w /= 65536;
    refine_places(w);
  }
  fail(Errc::PrecisionUnreachable, "embedding_box refinement cap");
}

QVec Order::conj(const QVec& a) const {
  if (conj_.empty()) {
    if (s_ == 0) return a;  // totally real: conjugation is the identity
    fail(Errc::UnsupportedShape, "no conjugation automorphism available");
  }
  return q_vec_mul(a, conj_);
}

Elem Elem::rational(const OrderPtr& o, const Rat& r) {
  Elem e = zero(o);
  for (long i = 0; i < o->degree(); i++) e.c[i] = o->coords_of_one()[i] * r;
  return e;
}

bool Elem::is_zero() const {
  for (auto& x : c)
    if (x != 0) return false;
  return true;
}

bool Elem::operator==(const Elem& b) const { return order == b.order && c == b.c; }

void check_same_order(const Elem& a, const Elem& b) {
  if (a.order != b.order) fail(Errc::OrderMismatch, "elements of different orders");
}

Elem Elem::operator+(const Elem& b) const {
  check_same_order(*this, b);
  Elem out = *this;
  for (size_t i = 0; i < c.size(); i++) out.c[i] += b.c[i];
  return out;
}

Elem Elem::operator-(const Elem& b) const {
  check_same_order(*this, b);
  Elem out = *this;
  for (size_t i = 0; i < c.size(); i++) out.c[i] -= b.c[i];
  return out;
}

Elem Elem::operator-() const {
  Elem out = *this;
  for (auto& x : out.c) x = -x;
  return out;
}

Elem Elem::operator*(const Elem& b) const {
  check_same_order(*this, b);
  return {order, order->mul(c, b.c)};
}

Elem Elem::operator*(const Rat& r) const {
  Elem out = *this;
  for (auto& x : out.c) x *= r;
  return out;
}

Elem Elem::operator/(const Elem& b) const {
  check_same_order(*this, b);
  if (b.is_zero()) fail(Errc::DivisionByZero, "division by zero field element");
  QMat m = order->mul_matrix(b.c);
  QVec x;
  if (!q_solve(m, c, x)) fail(Errc::DivisionByZero, "multiplication matrix singular");
  return {order, x};
}

Elem Elem::pow(long e) const {
  if (e < 0) return Elem::one(order) / pow(-e);
  Elem result = Elem::one(order);
  Elem base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::string Elem::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c.size(); i++) {
    if (i) os << ", ";
    os << rat_to_string(c[i]);
  }
  os << "]";
  return os.str();
}

ExtensionPtr Extension::create(OrderPtr base, OrderPtr top, QVec primitive_image) {
  auto e = std::shared_ptr<Extension>(new Extension());
  e->base_ = base;
  e->top_ = top;
  long dk = base->degree(), dK = top->degree();
  if (dK % dk != 0) fail(Errc::BadFixture, "degree of top field not divisible by base degree");
  e->rel_deg_ = dK / dk;

  Elem img{top, primitive_image};
  // the base minimal polynomial must vanish on the image
  {
    Elem acc = Elem::zero(top);
    for (long i = (long)base->min_poly().size() - 1; i >= 0; i--) {
      acc = acc * img + Elem::rational(top, Rat(base->min_poly()[i]));
    }
    if (!acc.is_zero()) fail(Errc::BadFixture, "primitive image does not satisfy base polynomial");
  }
  // embed base basis elements through their power-coordinate expression
  std::vector<Elem> img_pows(dk, Elem::one(top));
  for (long t = 1; t < dk; t++) img_pows[t] = img_pows[t - 1] * img;
  e->embed_ = q_zero(dK, dk);
  std::vector<Elem> basis_img(dk, Elem::zero(top));
  for (long j = 0; j < dk; j++) {
    Elem acc = Elem::zero(top);
    for (long t = 0; t < dk; t++) acc = acc + img_pows[t] * base->basis()[j][t];
    basis_img[j] = acc;
    for (long i = 0; i < dK; i++) e->embed_[i][j] = acc.c[i];
  }
  // ring homomorphism on basis products
  for (long i = 0; i < dk; i++)
    for (long j = 0; j < dk; j++) {
      QVec ei(dk, Rat(0)), ej(dk, Rat(0));
      ei[i] = 1;
      ej[j] = 1;
      QVec prod = base->mul(ei, ej);
      Elem lhs = Elem::zero(top);
      for (long t = 0; t < dk; t++) lhs = lhs + basis_img[t] * prod[t];
      if (!(lhs == basis_img[i] * basis_img[j]))
        fail(Errc::BadFixture, "embedding is not a ring homomorphism");
    }

  // match places: sigma_w(image) must equal one base embedding of gamma_k
  {
    long wk = top->num_places(), vk = base->num_places();
    e->cover_.assign(wk, -1);
    Rat width = rat(1, Int(1) << 40);
    for (int round = 0; round < 30; round++) {
      base->refine_places(width);
      top->refine_places(width);
      bool all = true;
      for (long w = 0; w < wk; w++) {
        CBox bw = top->embedding_box(primitive_image, w, width * 1024);
        long match = -1;
        long nmatch = 0;
        for (long v = 0; v < vk; v++) {
          Place pv = base->place(v);
          std::vector<CBox> cands;
          if (pv.real)
            cands.push_back(CBox(pv.x, Interval(Rat(0))));
          else {
            cands.push_back(pv.z);
            cands.push_back(pv.z.conj());
          }
          for (auto& cb : cands)
            if (cb.overlaps(bw)) {
              if (match != v) nmatch++;
              match = v;
              break;
            }
        }
        if (nmatch != 1) {
          all = false;
          break;
        }
        e->cover_[w] = match;
      }
      if (all) break;
      width /= 65536;
      if (round == 29) fail(Errc::PrecisionUnreachable, "could not separate covered places");
    }
    // local degree bookkeeping
    for (long v = 0; v < vk; v++) {
      long sum = 0;
      for (long w = 0; w < wk; w++)
        if (e->cover_[w] == v) sum += top->place(w).local_degree();
      if (sum != e->rel_deg_ * base->place(v).local_degree())
        fail(Errc::BadFixture, "place covering degrees inconsistent");
    }
  }
  return e;
}

Elem Extension::embed(const Elem& a) const {
  if (a.order != base_) fail(Errc::OrderMismatch, "element not in the base order");
  QVec out(top_->degree(), Rat(0));
  for (long i = 0; i < top_->degree(); i++)
    for (long j = 0; j < base_->degree(); j++) out[i] += embed_[i][j] * a.c[j];
  return {top_, out};
}

std::vector<long> Extension::places_over(long v) const {
  std::vector<long> out;
  for (long w = 0; w < (long)cover_.size(); w++)
    if (cover_[w] == v) out.push_back(w);
  return out;
}

ExtensionPtr Extension::identity(const OrderPtr& o) {
  // primitive element gamma has power coords e_1
  QVec gamma_power(o->degree(), Rat(0));
  if (o->degree() == 1) {
    // the rational field: gamma = root of x - c
    gamma_power[0] = Rat(-o->min_poly()[0]);
  } else {
    gamma_power[1] = 1;
  }
  QVec img = o->from_power(gamma_power);
  return create(o, o, img);
}

}  // namespace hc
