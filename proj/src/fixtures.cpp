#include "fixtures.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

namespace hc {

using nlohmann::json;

namespace {

Rat rat_of_json(const json& j) {
  if (j.is_number_integer()) return Rat((long)j.get<long long>());
  return rat_from_string(j.get<std::string>());
}

json json_of_rat(const Rat& r) { return rat_to_string(r); }

QVec qvec_of_json(const json& j) {
  QVec v;
  for (auto& x : j) v.push_back(rat_of_json(x));
  return v;
}

}  // namespace

OrderPtr order_from_json_text(const std::string& text) {
  json j = json::parse(text);
  ZPoly mp;
  for (auto& c : j.at("min_poly")) mp.push_back(Int((long)c.get<long long>()));
  long d = j.at("degree").get<long>();
  if ((long)mp.size() - 1 != d) fail(Errc::BadFixture, "degree does not match min_poly");
  QMat basis;
  for (auto& row : j.at("integral_basis")) basis.push_back(qvec_of_json(row));
  OrderInvariants inv;
  auto& ji = j.at("invariants");
  inv.class_number = Int((long)ji.at("h").get<long long>());
  if (ji.contains("R") && !ji.at("R").is_null()) {
    inv.regulator = rat_of_json(ji.at("R").at("value"));
    inv.regulator_prec = rat_of_json(ji.at("R").at("prec"));
    inv.regulator_known = true;
  } else {
    inv.regulator_known = false;
  }
  inv.roots_of_unity = ji.at("w").get<long>();
  inv.disc = Int(ji.at("disc").get<std::string>(), 10);
  std::vector<PrimeOverride> ovs;
  if (j.contains("prime_overrides")) {
    for (auto& jo : j.at("prime_overrides")) {
      PrimeOverride ov;
      ov.p = Int((long)jo.at("p").get<long long>());
      for (auto& jf : jo.at("factors")) {
        PrimeOverride::Factor f;
        for (auto& g : jf.at("gens")) f.gens.push_back(qvec_of_json(g));
        f.e = jf.at("e").get<long>();
        f.f = jf.at("f").get<long>();
        ov.factors.push_back(f);
      }
      ovs.push_back(ov);
    }
  }
  return Order::create(j.value("name", std::string("unnamed")), mp, basis, inv, ovs);
}

std::string order_to_json_text(const OrderPtr& o, bool regulator_known) {
  json j;
  j["name"] = o->name();
  j["degree"] = o->degree();
  json mp = json::array();
  for (auto& c : o->min_poly()) mp.push_back((long long)c.get_si());
  j["min_poly"] = mp;
  json basis = json::array();
  for (auto& row : o->basis()) {
    json r = json::array();
    for (auto& x : row) r.push_back(json_of_rat(x));
    basis.push_back(r);
  }
  j["integral_basis"] = basis;
  json inv;
  inv["h"] = (long long)o->invariants().class_number.get_si();
  if (regulator_known && o->invariants().regulator_known) {
    inv["R"] = {{"value", json_of_rat(o->invariants().regulator)},
                {"prec", json_of_rat(o->invariants().regulator_prec)}};
  } else {
    inv["R"] = nullptr;
  }
  inv["w"] = o->invariants().roots_of_unity;
  inv["disc"] = o->invariants().disc.get_str();
  j["invariants"] = inv;
  if (!o->overrides().empty()) {
    json ovs = json::array();
    for (auto& ov : o->overrides()) {
      json jo;
      jo["p"] = (long long)ov.p.get_si();
      json fs = json::array();
      for (auto& f : ov.factors) {
        json jf;
        json gens = json::array();
        for (auto& g : f.gens) {
          json gg = json::array();
          for (auto& x : g) gg.push_back(json_of_rat(x));
          gens.push_back(gg);
        }
        jf["gens"] = gens;
        jf["e"] = f.e;
        jf["f"] = f.f;
        fs.push_back(jf);
      }
      jo["factors"] = fs;
      ovs.push_back(jo);
    }
    j["prime_overrides"] = ovs;
  }
  return j.dump(2);
}

OrderPtr load_order_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadFixture, "cannot open fixture " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return order_from_json_text(ss.str());
}

OrderPtr rationals() {
  static OrderPtr q = [] {
    OrderInvariants inv;
    inv.class_number = 1;
    inv.regulator = 1;
    inv.regulator_prec = 0;
    inv.roots_of_unity = 2;
    inv.disc = 1;
    return Order::create("q", ZPoly{Int(0), Int(1)}, QMat{{Rat(1)}}, inv);
  }();
  return q;
}

Interval fundamental_unit_log(long disc, long bits) {
  // minimal y >= 1 with disc*y^2 +- 4 a perfect square gives the fundamental
  // unit (x + y sqrt(disc))/2 of the maximal order
  for (long y = 1; y < 4000000; y++) {
    for (int sgn : {-1, +1}) {
      Int t = Int(disc) * y * y + 4 * sgn;
      Int x;
      if (t > 0 && is_perfect_square(t, &x) && x > 0) {
        Interval sd = int_sqrt(Interval(Rat(disc)), bits + 16);
        Interval u = (sd * Rat(y) + Rat(x)) / Rat(2);
        return int_log(u, bits);
      }
    }
  }
  fail(Errc::PrecisionUnreachable, "no fundamental unit below the search cap");
}

namespace {

struct QuadData {
  long h;
  long w;
};

// invariants of the quadratic fields this artifact ships computations for
const std::map<long, QuadData>& quad_table() {
  static std::map<long, QuadData> t = {
      {2, {1, 2}},  {3, {1, 2}},  {5, {1, 2}},   {6, {1, 2}},   {7, {1, 2}},   {10, {2, 2}},
      {11, {1, 2}}, {13, {1, 2}}, {14, {1, 2}},  {15, {2, 2}},  {17, {1, 2}},  {19, {1, 2}},
      {21, {1, 2}}, {23, {1, 2}}, {29, {1, 2}},  {-1, {1, 4}},  {-2, {1, 2}},  {-3, {1, 6}},
      {-5, {2, 2}}, {-7, {1, 2}}, {-11, {1, 2}}, {-15, {2, 2}}, {-19, {1, 2}}, {-23, {3, 2}},
  };
  return t;
}

long squarefree_part(long v) {
  long s = v < 0 ? -1 : 1;
  long a = std::abs(v);
  for (long p = 2; p * p <= a; p++)
    while (a % (p * p) == 0) a /= p * p;
  return s * a;
}

long quad_disc(long D) { return ((D % 4) + 4) % 4 == 1 ? D : 4 * D; }

PrimeOverride split_index_prime(const OrderPtr& o, const Int& p);

}  // namespace

OrderPtr quadratic_order(long m) {
  if (m == 0 || m == 1 || squarefree_part(m) != m)
    fail(Errc::BadFixture, "need a squarefree m != 0, 1");
  auto it = quad_table().find(m);
  if (it == quad_table().end())
    fail(Errc::BadFixture, "no invariant data for Q(sqrt " + std::to_string(m) + ")");
  bool one_mod4 = ((m % 4) + 4) % 4 == 1;
  OrderInvariants inv;
  inv.class_number = it->second.h;
  inv.roots_of_unity = it->second.w;
  inv.disc = quad_disc(m);
  if (m > 0) {
    Interval lg = fundamental_unit_log(quad_disc(m), 90);
    inv.regulator = lg.mid();
    inv.regulator_prec = std::max(lg.width(), rat(1, Int(1) << 72));
  } else {
    inv.regulator = 1;
    inv.regulator_prec = 0;
  }
  QMat basis;
  if (one_mod4)
    basis = {{Rat(1), Rat(0)}, {rat(1, 2), rat(1, 2)}};  // 1, (1 + sqrt m)/2
  else
    basis = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  std::string name =
      (m == -1) ? "qi" : ("qsqrt" + std::string(m < 0 ? "m" : "") + std::to_string(std::abs(m)));
  QMat conj;
  if (m < 0) {
    // gamma -> -gamma on the power basis, written on the integral basis
    if (one_mod4)
      conj = {{Rat(1), Rat(0)}, {Rat(1), Rat(-1)}};  // (1+sqrt m)/2 -> 1 - (1+sqrt m)/2
    else
      conj = {{Rat(1), Rat(0)}, {Rat(0), Rat(-1)}};
  }
  OrderPtr plain = Order::create(name, ZPoly{Int(-m), Int(0), Int(1)}, basis, inv, {}, conj);
  std::vector<PrimeOverride> ovs;
  for (auto& [p, e] : factor_integer(plain->index_square())) {
    (void)e;
    ovs.push_back(split_index_prime(plain, p));
  }
  if (ovs.empty()) return plain;
  return Order::create(name, ZPoly{Int(-m), Int(0), Int(1)}, basis, inv, ovs, conj);
}

OrderPtr cubic_field_2() {
  OrderInvariants inv;
  inv.class_number = 1;
  inv.roots_of_unity = 2;
  inv.disc = -108;
  // fundamental unit 1/(cbrt2 - 1); regulator = -log(cbrt2 - 1)
  Interval c2 = int_nth_root(Interval(Rat(2)), 3, 100);
  Interval lg = -int_log(c2 - Rat(1), 92);
  inv.regulator = lg.mid();
  inv.regulator_prec = std::max(lg.width(), rat(1, Int(1) << 72));
  return Order::create("qcbrt2", ZPoly{Int(-2), Int(0), Int(0), Int(1)}, q_identity(3), inv);
}

// ---- multiquadratic construction ----

namespace {

// surd algebra: elements are rational combinations of sqrt(D_mask)
struct Surd {
  long t;
  std::vector<long> ms;
  std::vector<long> D;  // squarefree part of the product selected by the mask

  long mask_count() const { return 1L << t; }

  Rat mul_scale(long a, long b) const {
    long g2 = D[a] * D[b] / D[a ^ b];
    Int root;
    if (!is_perfect_square(Int(g2), &root)) fail(Errc::BadFixture, "surd algebra inconsistency");
    // principal branches: sqrt(-u) sqrt(-v) = -sqrt(u v)
    if (D[a] < 0 && D[b] < 0) return Rat(-root);
    return Rat(root);
  }

  std::vector<Rat> mul(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    std::vector<Rat> out(mask_count(), Rat(0));
    for (long a = 0; a < mask_count(); a++) {
      if (x[a] == 0) continue;
      for (long b = 0; b < mask_count(); b++) {
        if (y[b] == 0) continue;
        out[a ^ b] += x[a] * y[b] * mul_scale(a, b);
      }
    }
    return out;
  }

  Rat trace(const std::vector<Rat>& x) const { return x[0] * Rat(mask_count()); }
};

Surd make_surd(const std::vector<long>& ms) {
  Surd s;
  s.t = (long)ms.size();
  s.ms = ms;
  s.D.resize(s.mask_count());
  for (long mask = 0; mask < s.mask_count(); mask++) {
    long prod = 1;
    for (long i = 0; i < s.t; i++)
      if (mask & (1L << i)) prod *= ms[i];
    s.D[mask] = squarefree_part(prod);
  }
  for (long a = 0; a < s.mask_count(); a++)
    for (long b = a + 1; b < s.mask_count(); b++)
      if (s.D[a] == s.D[b]) fail(Errc::BadFixture, "generators not independent");
  return s;
}

// Splits pO for an index prime via the quotient algebra O/pO. The radical of
// O/pO is the kernel of the iterated Frobenius; its lift R_p is the product of
// the distinct primes over p. R_p is then refined by adjoining irreducible
// factors of element minimal polynomials until every piece passes the
// finite-field certificate.
PrimeOverride split_index_prime(const OrderPtr& o, const Int& p) {
  long d = o->degree();
  long pl = p.get_si();
  auto mulmod = [&](const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> out(d, 0);
    for (long i = 0; i < d; i++) {
      if (!a[i]) continue;
      for (long j = 0; j < d; j++) {
        if (!b[j]) continue;
        const ZVec& row = o->mult_row(i, j);
        long f = (long)(((__int128)a[i] * b[j]) % pl);
        for (long k = 0; k < d; k++) {
          if (row[k] == 0) continue;
          long rk = (long)mpz_fdiv_ui(row[k].get_mpz_t(), (unsigned long)pl);
          out[k] = (long)((out[k] + (__int128)f * rk) % pl);
        }
      }
    }
    return out;
  };
  auto inv_mod = [&](long a) {
    long t0 = 0, t1 = 1, r0 = pl, r1 = ((a % pl) + pl) % pl;
    while (r1) {
      long q = r0 / r1;
      long tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
      tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
    }
    return t0 < 0 ? t0 + pl : t0;
  };
  // nullspace over F_p; mat is rows x cols, kernel of x -> mat * x
  auto nullspace = [&](std::vector<std::vector<long>> mat) {
    long rows = (long)mat.size(), cols = rows ? (long)mat[0].size() : 0;
    std::vector<long> pivot_col;
    long rank = 0;
    for (long c = 0; c < cols && rank < rows; c++) {
      long piv = -1;
      for (long i = rank; i < rows; i++)
        if (mat[i][c]) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(mat[piv], mat[rank]);
      long inv = inv_mod(mat[rank][c]);
      for (long j = 0; j < cols; j++) mat[rank][j] = (long)((__int128)mat[rank][j] * inv % pl);
      for (long i = 0; i < rows; i++) {
        if (i == rank || !mat[i][c]) continue;
        long g = mat[i][c];
        for (long j = 0; j < cols; j++) {
          mat[i][j] = (long)((mat[i][j] - (__int128)g * mat[rank][j]) % pl);
          if (mat[i][j] < 0) mat[i][j] += pl;
        }
      }
      pivot_col.push_back(c);
      rank++;
    }
    std::vector<std::vector<long>> null;
    std::vector<bool> is_piv(cols, false);
    for (long c : pivot_col) is_piv[c] = true;
    for (long c = 0; c < cols; c++) {
      if (is_piv[c]) continue;
      std::vector<long> v(cols, 0);
      v[c] = 1;
      for (long i = 0; i < rank; i++)
        if (mat[i][c]) v[pivot_col[i]] = (pl - mat[i][c]) % pl;
      null.push_back(v);
    }
    return null;
  };

  // iterated Frobenius x -> x^(p^m) with p^m >= d, as a matrix
  Int pm = p;
  while (pm < d) pm *= p;
  std::vector<std::vector<long>> fr(d, std::vector<long>(d, 0));
  {
    QVec onec = o->coords_of_one();
    std::vector<long> one(d);
    for (long i = 0; i < d; i++) {
      long v = (long)mpz_fdiv_ui(num(onec[i]).get_mpz_t(), (unsigned long)pl);
      one[i] = v;
    }
    for (long i = 0; i < d; i++) {
      std::vector<long> e(d, 0), result = one, b(d, 0);
      e[i] = 1;
      b = e;
      Int ex = pm;
      result = one;
      bool started = false;
      while (ex > 0) {
        if (mpz_odd_p(ex.get_mpz_t())) {
          if (!started) {
            result = b;
            started = true;
          } else {
            result = mulmod(result, b);
          }
        }
        b = mulmod(b, b);
        ex >>= 1;
      }
      for (long j = 0; j < d; j++) fr[j][i] = result[j];
    }
  }
  std::vector<Elem> rad_gens{Elem::rational(o, Rat(p))};
  for (auto& v : nullspace(fr)) {
    QVec c(d);
    for (long i = 0; i < d; i++) c[i] = Rat(v[i]);
    rad_gens.push_back(Elem{o, c});
  }
  Ideal rp = Ideal::from_generators(rad_gens);

  // residue machinery for an integral ideal containing pO
  auto free_coords = [&](const Ideal& J) {
    std::vector<long> idx;
    for (long i = 0; i < d; i++) {
      if (J.numer()[i][i] == p)
        idx.push_back(i);
      else if (J.numer()[i][i] != 1)
        fail(Errc::BadFixture, "quotient not an F_p space");
    }
    return idx;
  };
  auto reduce_mod = [&](const Ideal& J, const Elem& x, const std::vector<long>& idx) {
    QVec v = x.c;
    const ZMat& h = J.numer();
    for (long i = d - 1; i >= 0; i--) {
      if (den(v[i]) != 1) fail(Errc::BadFixture, "non-integral residue");
      Int c = floor_div(num(v[i]), h[i][i]);
      if (c != 0)
        for (long j = 0; j < d; j++) v[j] -= Rat(c * h[i][j]);
    }
    std::vector<long> out(idx.size());
    for (size_t t = 0; t < idx.size(); t++) {
      long r = (long)mpz_fdiv_ui(num(v[idx[t]]).get_mpz_t(), (unsigned long)pl);
      out[t] = r;
    }
    return out;
  };
  // minimal polynomial of x in O/J over F_p
  auto minpoly_mod = [&](const Ideal& J, const Elem& x) {
    auto idx = free_coords(J);
    long dim = (long)idx.size();
    std::vector<std::vector<long>> pows;  // residues of x^k
    Elem cur = Elem::one(o);
    for (long k = 0; k <= dim; k++) {
      pows.push_back(reduce_mod(J, cur, idx));
      // look for a dependence with the last power involved
      long cols = (long)pows.size();
      std::vector<std::vector<long>> mat(dim, std::vector<long>(cols));
      for (long c = 0; c < cols; c++)
        for (long r = 0; r < dim; r++) mat[r][c] = pows[c][r];
      for (auto& nv : nullspace(mat)) {
        if (nv[cols - 1] == 0) continue;
        long inv = inv_mod(nv[cols - 1]);
        FpPoly mp(cols);
        for (long c = 0; c < cols; c++) mp[c] = (long)((__int128)nv[c] * inv % pl);
        while (!mp.empty() && mp.back() == 0) mp.pop_back();
        return mp;
      }
      cur = cur * x;
    }
    fail(Errc::BadFixture, "no minimal polynomial found in quotient");
  };

  // refine the radical into primes
  std::vector<Ideal> work{rp}, primes;
  auto certify = [&](const Ideal& J) {
    Rat n = J.norm();
    long f = 0;
    Rat t = n;
    while (t > 1) {
      t /= Rat(p);
      f++;
    }
    if (pow_rat_int(Rat(p), f) != n) return -1L;
    return quotient_is_field(J, p, f) ? f : -1L;
  };
  std::vector<Elem> splitters;
  for (long i = 0; i < d; i++) {
    QVec c(d, Rat(0));
    c[i] = 1;
    splitters.push_back(Elem{o, c});
  }
  for (long i = 0; i < d; i++)
    for (long j = i + 1; j < d; j++) splitters.push_back(splitters[i] + splitters[j]);
  Rng rng(0x5eedbeef);
  for (int extra = 0; extra < 40; extra++) {
    QVec c(d);
    for (long i = 0; i < d; i++) c[i] = Rat((long)rng.below((uint64_t)pl));
    splitters.push_back(Elem{o, c});
  }
  size_t next_splitter = 0;
  long guard = 0;
  while (!work.empty()) {
    if (++guard > 4000) fail(Errc::BadFixture, "prime splitting did not terminate");
    Ideal J = work.back();
    work.pop_back();
    if (certify(J) > 0) {
      primes.push_back(J);
      continue;
    }
    // try splitters until one factors the quotient
    bool split = false;
    for (size_t s = next_splitter; s < splitters.size(); s++) {
      FpPoly mp = minpoly_mod(J, splitters[s]);
      auto fac = fp_factor(mp, pl);
      if (fac.size() < 2) continue;
      for (auto& [h, e] : fac) {
        (void)e;
        // J + h(x) O
        Elem val = Elem::zero(o);
        for (long i = (long)h.size() - 1; i >= 0; i--)
          val = val * splitters[s] + Elem::rational(o, Rat(h[i]));
        Ideal piece = J + Ideal::from_generators({Elem::rational(o, Rat(p)), val});
        if (!piece.is_whole() && !(piece == J)) work.push_back(piece);
      }
      split = true;
      break;
    }
    if (!split) fail(Errc::BadFixture, "no splitting element separates the quotient");
  }
  // dedup primes and build the override
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  PrimeOverride ov;
  ov.p = p;
  Ideal pO = Ideal::rational(o, Rat(p));
  for (auto& pr : primes) {
    PrimeOverride::Factor f;
    Rat n = pr.norm();
    long ff = 0;
    Rat t = n;
    while (t > 1) {
      t /= Rat(p);
      ff++;
    }
    f.f = ff;
    PrimeIdeal tmp;
    tmp.under_p = p;
    tmp.ideal = pr;
    tmp.res_f = ff;
    f.e = valuation(pO, tmp);
    for (long i = 0; i < d; i++) {
      QVec c(d);
      for (long j = 0; j < d; j++) c[j] = rat(pr.numer()[i][j], pr.denom());
      f.gens.push_back(c);
    }
    ov.factors.push_back(f);
  }
  // certification via the loader path
  {
    auto test =
        Order::create(o->name() + "_chk", o->min_poly(), o->basis(), o->invariants(), {ov});
    factor_rational_prime(test, p);
  }
  return ov;
}


}  // namespace

namespace {

Multiquadratic build_multiquadratic(const std::vector<long>& ms) {
  Surd alg = make_surd(ms);
  long n = alg.mask_count();

  // minimal polynomial of gamma = sum sqrt(m_i)
  std::vector<std::vector<Rat>> poly(1, std::vector<Rat>(n, Rat(0)));
  poly[0][0] = 1;
  for (long sv = 0; sv < n; sv++) {
    std::vector<Rat> root(n, Rat(0));
    for (long i = 0; i < alg.t; i++) {
      long mask = 1L << i;
      Rat sgn = (sv & mask) ? Rat(-1) : Rat(1);
      Int c;
      if (!is_perfect_square(Int(alg.ms[i] / alg.D[mask]), &c))
        fail(Errc::BadFixture, "generator inconsistent with its squarefree part");
      root[mask] += sgn * Rat(c);
    }
    std::vector<std::vector<Rat>> next(poly.size() + 1, std::vector<Rat>(n, Rat(0)));
    for (size_t k = 0; k < poly.size(); k++) {
      for (long a = 0; a < n; a++) next[k + 1][a] += poly[k][a];
      auto prod = alg.mul(poly[k], root);
      for (long a = 0; a < n; a++) next[k][a] -= prod[a];
    }
    poly = next;
  }
  ZPoly minpoly(poly.size());
  for (size_t k = 0; k < poly.size(); k++) {
    for (long a = 1; a < n; a++)
      if (poly[k][a] != 0) fail(Errc::BadFixture, "minimal polynomial not rational");
    if (den(poly[k][0]) != 1) fail(Errc::BadFixture, "minimal polynomial not integral");
    minpoly[k] = num(poly[k][0]);
  }

  // gamma powers in surd coordinates
  std::vector<Rat> gamma(n, Rat(0));
  for (long i = 0; i < alg.t; i++) {
    long mask = 1L << i;
    Int c;
    is_perfect_square(Int(alg.ms[i] / alg.D[mask]), &c);
    gamma[mask] += Rat(c);
  }
  QMat pow_to_surd = q_zero(n, n);
  std::vector<Rat> cur(n, Rat(0));
  cur[0] = 1;
  for (long k = 0; k < n; k++) {
    for (long a = 0; a < n; a++) pow_to_surd[k][a] = cur[a];
    cur = alg.mul(cur, gamma);
  }
  QMat surd_to_pow = q_inverse(pow_to_surd);

  Int target = 1;
  for (long mask = 1; mask < n; mask++) target *= quad_disc(alg.D[mask]);

  QMat module = q_identity(n);  // rows = basis in surd coords
  auto module_disc = [&](const QMat& mod) {
    QMat t = q_zero(n, n);
    for (long i = 0; i < n; i++)
      for (long j = 0; j < n; j++)
        t[i][j] = alg.trace(alg.mul(std::vector<Rat>(mod[i].begin(), mod[i].end()),
                                    std::vector<Rat>(mod[j].begin(), mod[j].end())));
    return q_det(t);
  };
  auto is_integral_elem = [&](const std::vector<Rat>& x) {
    QMat mm = q_zero(n, n);
    for (long j = 0; j < n; j++) {
      std::vector<Rat> ej(n, Rat(0));
      ej[j] = 1;
      auto col = alg.mul(x, ej);
      for (long i = 0; i < n; i++) mm[i][j] = col[i];
    }
    for (auto& c : q_charpoly(mm))
      if (den(c) != 1) return false;
    return true;
  };
  auto in_module = [&](const QMat& mod, const std::vector<Rat>& x) {
    QMat inv = q_inverse(mod);
    QVec y = q_vec_mul(QVec(x.begin(), x.end()), inv);
    for (auto& v : y)
      if (den(v) != 1) return false;
    return true;
  };
  Rat dcur = module_disc(module);
  long rounds = 0;
  while (dcur != Rat(target)) {
    if (++rounds > 12) fail(Errc::BadFixture, "integral basis search did not converge");
    bool grew = false;
    for (long pick = 1; pick < (1L << n) && !grew; pick++) {
      std::vector<Rat> cand(n, Rat(0));
      for (long i = 0; i < n; i++)
        if (pick & (1L << i))
          for (long a = 0; a < n; a++) cand[a] += module[i][a];
      for (auto& v : cand) v /= 2;
      if (in_module(module, cand)) continue;
      if (!is_integral_elem(cand)) continue;
      QMat rows = module;
      rows.push_back(QVec(cand.begin(), cand.end()));
      Int denom;
      ZMat zr = z_from_q(rows, &denom);
      ZMat h = z_hnf(zr);
      if ((long)h.size() != n) fail(Errc::BadFixture, "module lost rank");
      QMat newmod = q_zero(n, n);
      for (long i = 0; i < n; i++)
        for (long j = 0; j < n; j++) newmod[i][j] = rat(h[i][j], denom);
      Rat dn = module_disc(newmod);
      if (dn != dcur) {
        module = newmod;
        dcur = dn;
        grew = true;
      }
    }
    if (!grew) fail(Errc::BadFixture, "no enlargement found but discriminant mismatch");
  }

  QMat basis = q_mul(module, surd_to_pow);

  OrderInvariants inv;
  inv.disc = num(dcur);
  inv.regulator_known = false;
  inv.class_number_known = false;
  inv.class_number = 1;
  {
    bool has_m1 = false, has_2 = false, has_m3 = false;
    for (long mask = 1; mask < n; mask++) {
      if (alg.D[mask] == -1) has_m1 = true;
      if (alg.D[mask] == 2) has_2 = true;
      if (alg.D[mask] == -3) has_m3 = true;
    }
    long w = 2;
    if (has_m1) w = 4;
    if (has_m1 && has_2) w = 8;
    if (has_m3) w = 6;
    if (has_m1 && has_m3) w = 12;
    if (has_m1 && has_2 && has_m3) w = 24;
    inv.roots_of_unity = w;
  }
  // totally real multiquadratic fields get regulator "unknown" (never used);
  // signature decides whether w = 2 stands
  std::string name = "mq";
  for (long m : ms) name += (m < 0 ? "_m" + std::to_string(-m) : "_" + std::to_string(m));

  QMat conj;
  {
    bool any_imag = false;
    for (long mask = 1; mask < n; mask++)
      if (alg.D[mask] < 0) any_imag = true;
    if (any_imag) {
      // negate the imaginary monomials: diag in surd coords, conjugated into
      // integral-basis coordinates
      QMat diag = q_zero(n, n);
      for (long mask = 0; mask < n; mask++) diag[mask][mask] = alg.D[mask] < 0 ? -1 : 1;
      conj = q_mul(q_mul(module, diag), q_inverse(module));
    }
  }
  OrderPtr plain = Order::create(name, minpoly, basis, inv, {}, conj);
  std::vector<PrimeOverride> overrides;
  for (auto& [p, e] : factor_integer(plain->index_square())) {
    (void)e;
    overrides.push_back(split_index_prime(plain, p));
  }
  OrderPtr final_order =
      overrides.empty() ? plain : Order::create(name, minpoly, basis, inv, overrides, conj);

  Multiquadratic out;
  out.ms = ms;
  out.order = final_order;
  out.monomials.reserve(n);
  for (long mask = 0; mask < n; mask++) {
    std::vector<Rat> sc(n, Rat(0));
    sc[mask] = 1;
    QVec powc = q_vec_mul(QVec(sc.begin(), sc.end()), surd_to_pow);
    out.monomials.push_back(Elem{final_order, final_order->from_power(powc)});
  }
  return out;
}

std::mutex g_cache_mutex;
std::map<std::string, Multiquadratic> g_mq_cache;

// builds once and registers under the order name so extensions can find the
// monomial structure later
const Multiquadratic& mq_registered(const std::vector<long>& ms) {
  std::string name = "mq";
  for (long m : ms) name += (m < 0 ? "_m" + std::to_string(-m) : "_" + std::to_string(m));
  {
    std::lock_guard<std::mutex> g(g_cache_mutex);
    auto it = g_mq_cache.find(name);
    if (it != g_mq_cache.end()) return it->second;
  }
  Multiquadratic built = build_multiquadratic(ms);
  std::lock_guard<std::mutex> g(g_cache_mutex);
  auto it = g_mq_cache.find(name);
  if (it == g_mq_cache.end()) it = g_mq_cache.emplace(name, std::move(built)).first;
  return it->second;
}

}  // namespace

Multiquadratic multiquadratic_order(const std::vector<long>& ms) { return mq_registered(ms); }

const Multiquadratic& appendix_field() { return mq_registered({2, 3, 5}); }

const Multiquadratic& gaussian_sqrt_field(long p) { return mq_registered({-1, p}); }

OrderPtr fixture_order(const std::string& name) {
  if (name.find('.') != std::string::npos || name.find('/') != std::string::npos)
    return load_order_file(name);
  if (name == "q") return rationals();
  if (name == "qi") return quadratic_order(-1);
  if (name == "qcbrt2") return cubic_field_2();
  if (name == "q8") return appendix_field().order;
  if (name.rfind("qsqrtm", 0) == 0) return quadratic_order(-std::stol(name.substr(6)));
  if (name.rfind("qsqrt", 0) == 0) return quadratic_order(std::stol(name.substr(5)));
  fail(Errc::BadFixture, "unknown fixture " + name);
}

ExtensionPtr extension_between(const OrderPtr& base, const OrderPtr& top) {
  if (base == top || base->name() == top->name()) return Extension::identity(base);
  if (base->degree() == 1) {
    QVec img(top->degree(), Rat(0));
    return Extension::create(base, top, img);
  }
  if (base->degree() == 2) {
    // need sqrt(m) inside the top field; search multiquadratic monomials
    long m = -(base->min_poly()[0].get_si());  // x^2 - m
    std::lock_guard<std::mutex> g(g_cache_mutex);
    for (auto& [key, mq] : g_mq_cache) {
      if (mq.order->name() != top->name()) continue;
      for (size_t mask = 1; mask < mq.monomials.size(); mask++) {
        long Dm = squarefree_part(m);
        long scale2 = m / Dm;
        Int c;
        if (!is_perfect_square(Int(scale2), &c)) continue;
        // find the monomial with radicand Dm
        long prod = 1;
        Surd alg = make_surd(mq.ms);
        if (alg.D[mask] != Dm) continue;
        (void)prod;
        Elem img = mq.monomials[mask] * Rat(c);
        // primitive element of the base: gamma with gamma^2 = m
        QVec base_img = img.c;
        return Extension::create(base, top, base_img);
      }
    }
  }
  fail(Errc::UnsupportedShape, "no known embedding of " + base->name() + " into " + top->name());
}

ExtensionPtr fixture_extension(const std::string& base, const std::string& top) {
  OrderPtr b = fixture_order(base);
  OrderPtr t = fixture_order(top);
  return extension_between(b, t);
}

ExtensionPtr extension_from_json_text(const std::string& text) {
  json j = json::parse(text);
  OrderPtr b = fixture_order(j.at("base").get<std::string>());
  OrderPtr t = fixture_order(j.at("top").get<std::string>());
  return Extension::create(b, t, qvec_of_json(j.at("primitive_image")));
}

std::string lattice_to_json_text(const Lattice& l) {
  json j;
  auto mat = [&](const QMat& m) {
    json out = json::array();
    for (auto& row : m) {
      json r = json::array();
      for (auto& x : row) r.push_back(rat_to_string(x));
      out.push_back(r);
    }
    return out;
  };
  j["basis"] = mat(l.basis());
  j["form"] = mat(l.form());
  return j.dump(2);
}

Lattice lattice_from_json_text(const std::string& text) {
  json j = json::parse(text);
  auto mat = [&](const json& jm) {
    QMat out;
    for (auto& row : jm) out.push_back(qvec_of_json(row));
    return out;
  };
  return Lattice::with_form(mat(j.at("basis")), mat(j.at("form")));
}

std::string validate_order_report(const OrderPtr& o) {
  std::ostringstream os;
  os << "order " << o->name() << ": degree " << o->degree() << ", signature (" << o->real_places()
     << "," << o->complex_places() << "), disc " << o->invariants().disc.get_str();
  // norm multiplicativity spot check
  Rng rng(0xabcdef);
  for (int t = 0; t < 25; t++) {
    QVec a(o->degree()), b(o->degree());
    for (long i = 0; i < o->degree(); i++) {
      a[i] = Rat(rng.range(-4, 4));
      b[i] = Rat(rng.range(-4, 4));
    }
    Elem ea{o, a}, eb{o, b};
    if ((ea * eb).norm() != ea.norm() * eb.norm())
      fail(Errc::ClosureError, "norm not multiplicative");
  }
  // real quadratic regulator versus the fundamental-unit enclosure
  if (o->degree() == 2 && o->real_places() == 2 && o->invariants().regulator_known) {
    Interval lg = fundamental_unit_log(o->invariants().disc.get_si(), 80);
    Rat rv = o->invariants().regulator;
    Rat pr = o->invariants().regulator_prec;
    if (lg.hi < rv - pr || lg.lo > rv + pr)
      fail(Errc::BadFixture, "declared regulator out of the certified enclosure");
    os << ", regulator check ok";
  }
  os << ", overrides " << o->overrides().size();
  return os.str();
}

}  // namespace hc
