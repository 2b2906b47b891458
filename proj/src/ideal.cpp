#include "ideal.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hc {

void Ideal::canonicalize() {
  long d = order_->degree();
  num_ = z_hnf(num_);
  if ((long)num_.size() != d) fail(Errc::ZeroIdeal, "ideal module of deficient rank");
  if (den_ < 0) den_ = -den_;
  Int g = den_;
  for (auto& row : num_)
    for (auto& x : row) g = gcd(g, x);
  if (g > 1) {
    den_ /= g;
    for (auto& row : num_)
      for (auto& x : row) x /= g;
  }
  num_inv_ = q_inverse(q_from_z(num_));
}

Ideal Ideal::whole(const OrderPtr& o) {
  Ideal a;
  a.order_ = o;
  a.num_.assign(o->degree(), ZVec(o->degree(), Int(0)));
  for (long i = 0; i < o->degree(); i++) a.num_[i][i] = 1;
  a.den_ = 1;
  a.canonicalize();
  return a;
}

Ideal Ideal::principal(const Elem& a) { return from_generators({a}); }

Ideal Ideal::rational(const OrderPtr& o, const Rat& r) {
  return whole(o).scale(r);
}

Ideal Ideal::from_generators(const std::vector<Elem>& gens) {
  if (gens.empty()) fail(Errc::ZeroIdeal, "no generators");
  OrderPtr o = gens[0].order;
  long d = o->degree();
  QMat rows;
  for (auto& g : gens) {
    if (g.order != o) fail(Errc::OrderMismatch, "generators from different orders");
    if (g.is_zero()) continue;
    for (long j = 0; j < d; j++) {
      QVec ej(d, Rat(0));
      ej[j] = 1;
      rows.push_back(o->mul(g.c, ej));
    }
  }
  if (rows.empty()) fail(Errc::ZeroIdeal, "all generators zero");
  return from_rows(o, rows);
}

Ideal Ideal::from_rows(const OrderPtr& o, const QMat& rows) {
  Ideal a;
  a.order_ = o;
  Int l = 1;
  for (auto& row : rows)
    for (auto& x : row) l = l * den(x) / gcd(l, den(x));
  ZMat zrows(rows.size(), ZVec(o->degree()));
  for (size_t i = 0; i < rows.size(); i++)
    for (long j = 0; j < o->degree(); j++) zrows[i][j] = num(rows[i][j]) * (l / den(rows[i][j]));
  a.num_ = zrows;
  a.den_ = l;
  a.canonicalize();
  return a;
}

bool Ideal::is_whole() const {
  if (den_ != 1) return false;
  for (long i = 0; i < (long)num_.size(); i++)
    if (num_[i][i] != 1) return false;
  return true;
}

Rat Ideal::norm() const {
  Int d = 1;
  for (size_t i = 0; i < num_.size(); i++) d *= num_[i][i];
  if (d < 0) d = -d;
  return rat(d, pow_int(den_, order_->degree()));
}

Elem Ideal::basis_elem(long i) const {
  QVec c(order_->degree());
  for (long j = 0; j < order_->degree(); j++) c[j] = rat(num_[i][j], den_);
  return {order_, c};
}

bool Ideal::contains(const Elem& x) const {
  if (x.order != order_) fail(Errc::OrderMismatch, "membership across orders");
  // x in I  <=>  den * x in lattice(num)
  QVec scaled(x.c.size());
  for (size_t i = 0; i < x.c.size(); i++) scaled[i] = x.c[i] * den_;
  QVec y = q_vec_mul(scaled, num_inv_);
  for (auto& v : y)
    if (den(v) != 1) return false;
  return true;
}

bool Ideal::contains(const Ideal& b) const {
  if (b.order_ != order_) fail(Errc::OrderMismatch, "containment across orders");
  for (long i = 0; i < (long)b.num_.size(); i++)
    if (!contains(b.basis_elem(i))) return false;
  return true;
}

Ideal Ideal::operator+(const Ideal& b) const {
  if (b.order_ != order_) fail(Errc::OrderMismatch, "sum across orders");
  Ideal a;
  a.order_ = order_;
  Int l = den_ * b.den_ / gcd(den_, b.den_);
  ZMat rows;
  for (auto& row : num_) {
    ZVec r(row.size());
    for (size_t j = 0; j < row.size(); j++) r[j] = row[j] * (l / den_);
    rows.push_back(r);
  }
  for (auto& row : b.num_) {
    ZVec r(row.size());
    for (size_t j = 0; j < row.size(); j++) r[j] = row[j] * (l / b.den_);
    rows.push_back(r);
  }
  a.num_ = rows;
  a.den_ = l;
  a.canonicalize();
  return a;
}

Ideal Ideal::operator*(const Ideal& b) const {
  if (b.order_ != order_) fail(Errc::OrderMismatch, "product across orders");
  long d = order_->degree();
  QMat rows;
  for (long i = 0; i < d; i++)
    for (long j = 0; j < d; j++) rows.push_back(order_->mul(basis_elem(i).c, b.basis_elem(j).c));
  return from_rows(order_, rows);
}

Ideal Ideal::intersect(const Ideal& b) const {
  if (b.order_ != order_) fail(Errc::OrderMismatch, "intersection across orders");
  long d = order_->degree();
  Int l = den_ * b.den_ / gcd(den_, b.den_);
  // scale both to denominator l, intersect the integer lattices
  ZMat A(d, ZVec(d)), B(d, ZVec(d));
  for (long i = 0; i < d; i++)
    for (long j = 0; j < d; j++) {
      A[i][j] = num_[i][j] * (l / den_);
      B[i][j] = b.num_[i][j] * (l / b.den_);
    }
  ZMat stacked(2 * d, ZVec(d));
  for (long i = 0; i < d; i++) {
    stacked[i] = A[i];
    for (long j = 0; j < d; j++) stacked[d + i][j] = -B[i][j];
  }
  ZMat kern = z_left_kernel(stacked);  // rows (u, v): uA = vB
  ZMat rows;
  for (auto& uv : kern) {
    ZVec x(d, Int(0));
    for (long i = 0; i < d; i++)
      for (long j = 0; j < d; j++) x[j] += uv[i] * A[i][j];
    rows.push_back(x);
  }
  Ideal out;
  out.order_ = order_;
  out.num_ = rows;
  out.den_ = l;
  out.canonicalize();
  return out;
}

Ideal Ideal::inverse() const {
  long d = order_->degree();
  // integral part A0 = den * I has basis rows num_; A0^{-1} = Y / N with
  // Y = {y : y * R_{a_i} = 0 mod N for all basis elements a_i}, N = |det num|
  Int N = 1;
  for (long i = 0; i < d; i++) N *= num_[i][i];
  if (N < 0) N = -N;
  ZMat cond(d * d, ZVec(d));  // stacked columns of the right-multiplication maps
  for (long i = 0; i < d; i++) {
    Elem ai = basis_elem(i);
    // integral coords of den * a_i
    QVec ac(d);
    for (long j = 0; j < d; j++) ac[j] = ai.c[j] * den_;
    for (long j = 0; j < d; j++) {
      QVec ej(d, Rat(0));
      ej[j] = 1;
      QVec prod = order_->mul(ej, ac);  // b_j * a0_i
      for (long k = 0; k < d; k++) {
        if (den(prod[k]) != 1) fail(Errc::ClosureError, "integral ideal with fractional products");
        cond[i * d + k][j] = num(prod[k]);
      }
    }
  }
  // y (row, length d) with cond * y^T = 0 mod N
  ZMat y = z_mod_kernel_lattice(cond, N);
  Ideal out;
  out.order_ = order_;
  out.num_ = y;
  out.den_ = N;
  out.canonicalize();
  // undo the den_ scaling: (den*I)^{-1} = I^{-1}/den, so I^{-1} = den * (A0)^{-1}
  return out.scale(Rat(den_));
}

Ideal Ideal::pow(long e) const {
  if (e == 0) return whole(order_);
  if (e < 0) return inverse().pow(-e);
  Ideal result = whole(order_);
  Ideal base = *this;
  long k = e;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

Ideal Ideal::scale(const Rat& r) const {
  if (r == 0) fail(Errc::ZeroIdeal, "scaling ideal by zero");
  Ideal out = *this;
  Rat rr = r > 0 ? r : Rat(-r);
  for (auto& row : out.num_)
    for (auto& x : row) x *= num(rr);
  out.den_ *= den(rr);
  out.canonicalize();
  return out;
}

bool Ideal::operator==(const Ideal& b) const {
  return order_ == b.order_ && den_ == b.den_ && num_ == b.num_;
}

bool Ideal::operator<(const Ideal& b) const {
  Rat na = norm(), nb = b.norm();
  if (na != nb) return na < nb;
  if (den_ != b.den_) return den_ < b.den_;
  return num_ < b.num_;
}

bool Ideal::is_module() const {
  long d = order_->degree();
  for (long t = 0; t < d; t++) {
    QVec bt(d, Rat(0));
    bt[t] = 1;
    for (long i = 0; i < d; i++) {
      QVec prod = order_->mul(basis_elem(i).c, bt);
      if (!contains(Elem{order_, prod})) return false;
    }
  }
  return true;
}

std::string Ideal::str() const {
  std::ostringstream os;
  os << "(1/" << den_.get_str() << ")[";
  for (auto& row : num_) {
    os << "[";
    for (size_t j = 0; j < row.size(); j++) os << row[j].get_str() << (j + 1 < row.size() ? "," : "");
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---- prime splitting ----

// The quotient is an F_p-vector space; maximality holds iff the radical
// vanishes and the Frobenius-fixed subalgebra is one-dimensional.
bool quotient_is_field(const Ideal& q, const Int& p, long expected_f) {
  const OrderPtr& o = q.order();
  long d = o->degree();
  if (!q.is_integral()) return false;
  // residues: coordinates modulo the HNF lattice; free coordinates are those
  // with diagonal entry p (diagonal 1 entries collapse)
  const ZMat& h = q.numer();
  std::vector<long> free_idx;
  for (long i = 0; i < d; i++) {
    if (h[i][i] == p)
      free_idx.push_back(i);
    else if (h[i][i] != 1)
      return false;  // not an F_p-space, cannot be a prime over p
  }
  long f = (long)free_idx.size();
  if (f != expected_f) return false;
  // reduce an integral coordinate vector modulo the lattice, returning the
  // values at the free coordinates
  auto reduce = [&](QVec v) {
    std::vector<long> out(f);
    for (long i = d - 1; i >= 0; i--) {
      if (den(v[i]) != 1) fail(Errc::ClosureError, "non-integral residue");
      Int c = floor_div(num(v[i]), h[i][i]);
      if (c != 0)
        for (long j = 0; j < d; j++) v[j] -= Rat(c * h[i][j]);
    }
    for (long t = 0; t < f; t++) {
      Int r = num(v[free_idx[t]]) % p;
      if (r < 0) r += p;
      out[t] = r.get_si();
    }
    return out;
  };
  auto to_coords = [&](const std::vector<long>& x) {
    QVec v(d, Rat(0));
    for (long t = 0; t < f; t++) v[free_idx[t]] = x[t];
    return v;
  };
  // multiplication of residues
  auto res_mul = [&](const std::vector<long>& a, const std::vector<long>& b) {
    QVec prod = o->mul(to_coords(a), to_coords(b));
    return reduce(prod);
  };
  // Frobenius matrix: column t = (e_t)^p
  long pl = p.get_si();
  std::vector<std::vector<long>> frob(f, std::vector<long>(f));
  for (long t = 0; t < f; t++) {
    std::vector<long> e(f, 0), acc(f, 0);
    e[t] = 1;
    acc = e;
    // acc = e^p by square and multiply
    std::vector<long> result(f, 0);
    // compute via repeated squaring on exponent p
    Int ex = p;
    std::vector<long> basepow = e;
    bool started = false;
    while (ex > 0) {
      if (mpz_odd_p(ex.get_mpz_t())) {
        if (!started) {
          result = basepow;
          started = true;
        } else
          result = res_mul(result, basepow);
      }
      basepow = res_mul(basepow, basepow);
      ex >>= 1;
    }
    for (long i = 0; i < f; i++) frob[i][t] = result[i];
  }
  // linear algebra over F_p: nullity of (Frob - I) must be 1 and Frob^m must be
  // injective (no nilpotents) for p^m >= f
  auto nullity = [&](std::vector<std::vector<long>> m) {
    long rank = 0;
    for (long c = 0; c < f && rank < f; c++) {
      long piv = -1;
      for (long i = rank; i < f; i++)
        if (m[i][c]) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(m[piv], m[rank]);
      long inv = 1;
      {
        long a = m[rank][c] % pl, t0 = 0, t1 = 1, r0 = pl, r1 = a;
        while (r1) {
          long qd = r0 / r1;
          long tmp = t0 - qd * t1;
          t0 = t1;
          t1 = tmp;
          tmp = r0 - qd * r1;
          r0 = r1;
          r1 = tmp;
        }
        inv = t0 < 0 ? t0 + pl : t0;
      }
      for (long j = 0; j < f; j++) m[rank][j] = (long)((__int128)m[rank][j] * inv % pl);
      for (long i = 0; i < f; i++) {
        if (i == rank || !m[i][c]) continue;
        long g = m[i][c];
        for (long j = 0; j < f; j++) {
          m[i][j] = (long)((m[i][j] - (__int128)g * m[rank][j]) % pl);
          if (m[i][j] < 0) m[i][j] += pl;
        }
      }
      rank++;
    }
    return f - rank;
  };
  auto matmul = [&](const std::vector<std::vector<long>>& a,
                    const std::vector<std::vector<long>>& b) {
    std::vector<std::vector<long>> c(f, std::vector<long>(f, 0));
    for (long i = 0; i < f; i++)
      for (long k = 0; k < f; k++) {
        if (!a[i][k]) continue;
        for (long j = 0; j < f; j++)
          c[i][j] = (long)((c[i][j] + (__int128)a[i][k] * b[k][j]) % pl);
      }
    return c;
  };
  auto fmi = frob;
  for (long i = 0; i < f; i++) fmi[i][i] = (fmi[i][i] - 1 + pl) % pl;
  if (nullity(fmi) != 1) return false;
  // iterate Frobenius until p^m >= f
  auto fm = frob;
  Int pm = p;
  while (pm < f) {
    fm = matmul(fm, frob);
    pm *= p;
  }
  if (nullity(fm) != 0) return false;
  return true;
}

namespace {

std::vector<PrimeIdeal> primes_from_override(const OrderPtr& o, const PrimeOverride& ov) {
  std::vector<PrimeIdeal> out;
  Ideal pid = Ideal::rational(o, Rat(ov.p));
  long d = o->degree();
  long sum_ef = 0;
  for (auto& fac : ov.factors) {
    std::vector<Elem> gens{Elem::rational(o, Rat(ov.p))};
    for (auto& coords : fac.gens) {
      if ((long)coords.size() != d) fail(Errc::BadFixture, "override generator of wrong length");
      gens.push_back(Elem{o, coords});
    }
    PrimeIdeal pi;
    pi.under_p = ov.p;
    pi.ideal = Ideal::from_generators(gens);
    pi.ram_e = fac.e;
    pi.res_f = fac.f;
    if (pi.ideal.norm() != pow_rat_int(Rat(ov.p), fac.f))
      fail(Errc::BadFixture, "override factor has wrong norm");
    if (!quotient_is_field(pi.ideal, ov.p, fac.f))
      fail(Errc::BadFixture, "override factor is not maximal");
    sum_ef += fac.e * fac.f;
    out.push_back(pi);
  }
  if (sum_ef != d) fail(Errc::BadFixture, "override ramification degrees do not sum to degree");
  // product with exponents must reconstruct pO, and factors must be comaximal
  Ideal prod = Ideal::whole(o);
  for (auto& pi : out) prod = prod * pi.ideal.pow(pi.ram_e);
  if (!(prod == pid)) fail(Errc::BadFixture, "override factors do not multiply to pO");
  for (size_t i = 0; i < out.size(); i++)
    for (size_t j = i + 1; j < out.size(); j++)
      if (!(out[i].ideal + out[j].ideal).is_whole())
        fail(Errc::BadFixture, "override factors not comaximal");
  // verify declared ramification indices
  for (auto& pi : out) {
    if (valuation(pid, pi) != pi.ram_e) fail(Errc::BadFixture, "override e inconsistent");
  }
  std::sort(out.begin(), out.end(),
            [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal < b.ideal; });
  return out;
}

}  // namespace

std::vector<PrimeIdeal> factor_rational_prime(const OrderPtr& o, const Int& p) {
  if (!is_prime(p)) fail(Errc::FactorizationUnavailable, "not a prime: " + p.get_str());
  if (const PrimeOverride* ov = o->override_for(p)) return primes_from_override(o, *ov);
  if (o->index_square() % (p * p) == 0)
    fail(Errc::IndexDivisorNoFixture, p.get_str() + " divides the index and no override exists");
  long d = o->degree();
  if (d == 1) {
    PrimeIdeal pi;
    pi.under_p = p;
    pi.ideal = Ideal::rational(o, Rat(p));
    pi.ram_e = 1;
    pi.res_f = 1;
    return {pi};
  }
  auto fac = fp_factor(fp_from_z(o->min_poly(), p.get_si()), p.get_si());
  // gamma in integral-basis coordinates
  QVec gp(d, Rat(0));
  gp[1] = 1;
  Elem gamma{o, o->from_power(gp)};
  std::vector<PrimeIdeal> out;
  long sum_ef = 0;
  for (auto& [g, e] : fac) {
    // lift g to Z and evaluate at gamma
    Elem val = Elem::zero(o);
    for (long i = (long)g.size() - 1; i >= 0; i--)
      val = val * gamma + Elem::rational(o, Rat(g[i]));
    PrimeIdeal pi;
    pi.under_p = p;
    pi.ideal = Ideal::from_generators({Elem::rational(o, Rat(p)), val});
    pi.ram_e = e;
    pi.res_f = (long)g.size() - 1;
    if (pi.ideal.norm() != pow_rat_int(Rat(p), pi.res_f))
      fail(Errc::FactorizationUnavailable, "splitting produced wrong norm");
    sum_ef += pi.ram_e * pi.res_f;
    out.push_back(pi);
  }
  if (sum_ef != d) fail(Errc::FactorizationUnavailable, "splitting degrees inconsistent");
  std::sort(out.begin(), out.end(),
            [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal < b.ideal; });
  return out;
}

long valuation(const Ideal& a, const PrimeIdeal& p) {
  if (a.order() != p.ideal.order()) fail(Errc::OrderMismatch, "valuation across orders");
  const OrderPtr& o = a.order();
  // split into integral numerator and rational denominator
  Ideal a0 = a.scale(Rat(a.denom()));
  long vden = 0;
  {
    Int dleft = a.denom();
    while (dleft % p.under_p == 0) {
      dleft /= p.under_p;
      vden++;
    }
  }
  auto val_integral = [&](const Ideal& b) {
    if (!p.ideal.contains(b)) return 0L;
    long lo = 1, hi = 2;
    std::map<long, Ideal> powers;
    powers[1] = p.ideal;
    auto power = [&](long t) {
      auto it = powers.find(t);
      if (it != powers.end()) return it->second;
      Ideal r = p.ideal.pow(t);
      powers[t] = r;
      return r;
    };
    while (power(hi).contains(b)) {
      lo = hi;
      hi *= 2;
      if (hi > 4096) fail(Errc::PrecisionUnreachable, "runaway valuation");
    }
    // binary search in (lo, hi)
    while (lo + 1 < hi) {
      long mid = (lo + hi) / 2;
      if (power(mid).contains(b))
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  };
  return val_integral(a0) - p.ram_e * vden;
}

long valuation_elem(const Elem& x, const PrimeIdeal& p) {
  if (x.is_zero()) fail(Errc::ZeroElement, "valuation of zero");
  return valuation(Ideal::principal(x), p);
}

IdealFactorization factor_ideal(const Ideal& a) {
  const OrderPtr& o = a.order();
  IdealFactorization out;
  Rat n = a.norm();
  std::map<Int, long> ps = factor_rational(n);
  // denominator primes can hide in den even when the norm cancels
  for (auto& [pp, e] : factor_integer(a.denom())) ps[pp] += 0;
  for (auto& [pp, e] : ps) {
    for (auto& pi : factor_rational_prime(o, pp)) {
      long v = valuation(a, pi);
      if (v != 0) out.factors.emplace_back(pi, v);
    }
  }
  // the reconstruction check doubles as a guard against missed primes
  Ideal check = Ideal::whole(o);
  for (auto& [pi, e] : out.factors) check = check * pi.ideal.pow(e);
  if (!(check == a)) fail(Errc::FactorizationUnavailable, "ideal factorization incomplete");
  return out;
}

Ideal IdealFactorization::reassemble(const OrderPtr& o) const {
  Ideal out = Ideal::whole(o);
  for (auto& [p, e] : factors) out = out * p.ideal.pow(e);
  return out;
}

int moebius_ideal(const Ideal& a) {
  if (!a.is_integral()) fail(Errc::UnsupportedShape, "Moebius of non-integral ideal");
  auto f = factor_ideal(a);
  int sign = 1;
  for (auto& [p, e] : f.factors) {
    if (e >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

std::vector<Ideal> divisors(const Ideal& a) {
  if (!a.is_integral()) fail(Errc::UnsupportedShape, "divisors of non-integral ideal");
  auto f = factor_ideal(a);
  std::vector<Ideal> out{Ideal::whole(a.order())};
  for (auto& [p, e] : f.factors) {
    std::vector<Ideal> next;
    Ideal pk = Ideal::whole(a.order());
    for (long t = 0; t <= e; t++) {
      for (auto& d : out) next.push_back(d * pk);
      if (t < e) pk = pk * p.ideal;
    }
    out = next;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Ideal part_over(const Ideal& d, const Int& p) {
  Ideal out = Ideal::whole(d.order());
  for (auto& pi : factor_rational_prime(d.order(), p)) {
    long v = valuation(d, pi);
    if (v != 0) out = out * pi.ideal.pow(v);
  }
  return out;
}

Ideal extend_up(const Ideal& b, const ExtensionPtr& ext) {
  if (b.order() != ext->base()) fail(Errc::OrderMismatch, "extend_up from wrong order");
  std::vector<Elem> gens;
  for (long i = 0; i < b.order()->degree(); i++) gens.push_back(ext->embed(b.basis_elem(i)));
  return Ideal::from_generators(gens);
}

Ideal contract_down(const Ideal& a, const ExtensionPtr& ext) {
  if (a.order() != ext->top()) fail(Errc::OrderMismatch, "contract_down from wrong order");
  const OrderPtr& k = ext->base();
  const OrderPtr& K = ext->top();
  long dk = k->degree(), dK = K->degree();
  // x in a cap k  <=>  (den_a x) integral over k and den_a x in A0 := den_a * a
  // condition on integer row y (coords of den_a x): y * E^T * num(A0)^{-1} integral
  QMat C = q_zero(dk, dK);
  const QMat& E = ext->matrix();
  QMat ninv = q_inverse(q_from_z(a.numer()));
  for (long i = 0; i < dk; i++) {
    QVec emb(dK, Rat(0));
    for (long t = 0; t < dK; t++) emb[t] = E[t][i];
    QVec cond = q_vec_mul(emb, ninv);
    for (long j = 0; j < dK; j++) C[i][j] = cond[j];
  }
  Int q;
  ZMat Ci = z_from_q(C, &q);
  // y * Ci = 0 mod q: transpose to the column form expected by the solver
  ZMat Ct(dK, ZVec(dk));
  for (long i = 0; i < dk; i++)
    for (long j = 0; j < dK; j++) Ct[j][i] = Ci[i][j];
  ZMat y = z_mod_kernel_lattice(Ct, q);
  Ideal out;
  QMat rows = q_from_z(y);
  for (auto& row : rows)
    for (auto& x : row) x /= Rat(a.denom());
  return Ideal::from_rows(k, rows);
}

std::vector<Ideal> ideals_up_to_norm(const OrderPtr& o, long bound, bool squarefree_only) {
  std::vector<PrimeIdeal> primes;
  for (long p : primes_upto(bound))
    for (auto& pi : factor_rational_prime(o, Int(p))) {
      if (pi.norm() <= bound) primes.push_back(pi);
    }
  std::sort(primes.begin(), primes.end(),
            [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.ideal < b.ideal; });
  std::vector<Ideal> out;
  std::function<void(size_t, Ideal, Rat)> rec = [&](size_t i, Ideal cur, Rat n) {
    out.push_back(cur);
    for (size_t j = i; j < primes.size(); j++) {
      Rat np = primes[j].norm();
      if (n * np > bound) continue;
      Ideal next = cur * primes[j].ideal;
      Rat nn = n * np;
      if (squarefree_only) {
        rec(j + 1, next, nn);
      } else {
        long e = 1;
        Ideal acc = next;
        Rat na = nn;
        while (na <= bound) {
          rec(j + 1, acc, na);
          acc = acc * primes[j].ideal;
          na *= np;
          e++;
          (void)e;
        }
      }
    }
  };
  rec(0, Ideal::whole(o), Rat(1));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hc
