#include "poly.hpp"

#include <algorithm>
#include <functional>

namespace hc {

QPoly qp_normalize(QPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

long qp_degree(const QPoly& f) { return (long)f.size() - 1; }

QPoly qp_add(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); i++) c[i] += a[i];
  for (size_t i = 0; i < b.size(); i++) c[i] += b[i];
  return qp_normalize(c);
}

QPoly qp_sub(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); i++) c[i] += a[i];
  for (size_t i = 0; i < b.size(); i++) c[i] -= b[i];
  return qp_normalize(c);
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); i++) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); j++) c[i + j] += a[i] * b[j];
  }
  return qp_normalize(c);
}

QPoly qp_scale(const QPoly& a, const Rat& c) {
  if (c == 0) return {};
  QPoly out = a;
  for (auto& x : out) x *= c;
  return out;
}

void qp_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.empty()) fail(Errc::DivisionByZero, "polynomial division by zero");
  r = qp_normalize(a);
  long db = qp_degree(b);
  long da = qp_degree(r);
  if (da < db) {
    q = {};
    return;
  }
  q.assign(da - db + 1, Rat(0));
  Rat lead = b.back();
  while ((da = qp_degree(r)) >= db && !r.empty()) {
    Rat f = r.back() / lead;
    q[da - db] = f;
    for (long i = 0; i <= db; i++) r[da - db + i] -= f * b[i];
    r = qp_normalize(r);
  }
}

QPoly qp_gcd(QPoly a, QPoly b) {
  a = qp_normalize(a);
  b = qp_normalize(b);
  while (!b.empty()) {
    QPoly q, r;
    qp_divmod(a, b, q, r);
    a = b;
    b = r;
  }
  if (!a.empty()) {
    Rat inv = Rat(1) / a.back();
    for (auto& x : a) x *= inv;
  }
  return a;
}

QPoly qp_derivative(const QPoly& f) {
  if (f.size() <= 1) return {};
  QPoly d(f.size() - 1);
  for (size_t i = 1; i < f.size(); i++) d[i - 1] = f[i] * Rat((long)i);
  return qp_normalize(d);
}

Rat qp_eval(const QPoly& f, const Rat& x) {
  Rat v = 0;
  for (size_t i = f.size(); i-- > 0;) v = v * x + f[i];
  return v;
}

Interval qp_eval(const QPoly& f, const Interval& x) {
  Interval v(Rat(0));
  for (size_t i = f.size(); i-- > 0;) v = v * x + Interval(f[i]);
  return v;
}

CBox qp_eval(const QPoly& f, const CBox& x) {
  CBox v = CBox::point(0, 0);
  for (size_t i = f.size(); i-- > 0;) v = v * x + f[i];
  return v;
}

QPoly qp_from_z(const ZPoly& f) {
  QPoly out(f.size());
  for (size_t i = 0; i < f.size(); i++) out[i] = Rat(f[i]);
  return qp_normalize(out);
}

ZPoly zp_from_q(const QPoly& f) {
  ZPoly out(f.size());
  for (size_t i = 0; i < f.size(); i++) {
    if (den(f[i]) != 1) fail(Errc::UnsupportedShape, "polynomial not integral");
    out[i] = num(f[i]);
  }
  return out;
}

Rat qp_root_bound(const QPoly& f) {
  long d = qp_degree(f);
  if (d <= 0) return Rat(1);
  Rat m = 0;
  for (long i = 0; i < d; i++) {
    Rat a = f[i] / f[d];
    if (a < 0) a = -a;
    m = std::max(m, a);
  }
  return m + 1;
}

static std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> chain;
  chain.push_back(qp_normalize(f));
  chain.push_back(qp_derivative(f));
  while (!chain.back().empty() && qp_degree(chain.back()) > 0) {
    QPoly q, r;
    qp_divmod(chain[chain.size() - 2], chain.back(), q, r);
    if (r.empty()) break;
    chain.push_back(qp_scale(r, Rat(-1)));
  }
  return chain;
}

static long sign_changes_at(const std::vector<QPoly>& chain, const Rat& x) {
  long changes = 0;
  int prev = 0;
  for (auto& g : chain) {
    if (g.empty()) continue;
    Rat v = qp_eval(g, x);
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) changes++;
    prev = s;
  }
  return changes;
}

long sturm_count(const QPoly& f, const Rat& a, const Rat& b) {
  auto chain = sturm_chain(f);
  return sign_changes_at(chain, a) - sign_changes_at(chain, b);
}

long sturm_count_all(const QPoly& f) {
  Rat b = qp_root_bound(f);
  return sturm_count(f, -b, b);
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& f) {
  std::vector<std::pair<Rat, Rat>> out;
  if (qp_degree(f) <= 0) return out;
  auto chain = sturm_chain(f);
  Rat bound = qp_root_bound(f);
  auto count = [&](const Rat& a, const Rat& b) {
    return sign_changes_at(chain, a) - sign_changes_at(chain, b);
  };
  std::vector<std::pair<Rat, Rat>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    long c = count(a, b);
    if (c == 0) continue;
    if (c == 1) {
      out.emplace_back(a, b);
      continue;
    }
    Rat m = (a + b) / 2;
    while (qp_eval(f, m) == 0) m = (a + m) / 2;  // keep endpoints off roots
    stack.emplace_back(a, m);
    stack.emplace_back(m, b);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::pair<Rat, Rat> refine_root(const QPoly& f, Rat lo, Rat hi, const Rat& eps) {
  Rat flo = qp_eval(f, lo);
  while (hi - lo > eps) {
    Rat m = (lo + hi) / 2;
    Rat fm = qp_eval(f, m);
    if (fm == 0) return {m, m};
    if (flo != 0 && (flo > 0) != (fm > 0)) {
      hi = m;
    } else {
      lo = m;
      flo = fm;
    }
  }
  return {lo, hi};
}

Rat qp_resultant(const QPoly& pa, const QPoly& pb) {
  QPoly a = qp_normalize(pa), b = qp_normalize(pb);
  long da = qp_degree(a), db = qp_degree(b);
  if (da < 0 || db < 0) return Rat(0);
  if (da == 0) return pow_rat_int(a[0], db);
  if (db == 0) return pow_rat_int(b[0], da);
  size_t n = da + db;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (long i = 0; i < db; i++)
    for (long j = 0; j <= da; j++) m[i][i + j] = a[da - j];
  for (long i = 0; i < da; i++)
    for (long j = 0; j <= db; j++) m[db + i][i + j] = b[db - j];
  Rat det = 1;
  for (size_t c = 0; c < n; c++) {
    size_t p = c;
    while (p < n && m[p][c] == 0) p++;
    if (p == n) return Rat(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Rat inv = Rat(1) / m[c][c];
    for (size_t i = c + 1; i < n; i++) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] * inv;
      for (size_t j = c; j < n; j++) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

Rat qp_discriminant(const QPoly& f) {
  long d = qp_degree(f);
  if (d < 1) fail(Errc::UnsupportedShape, "discriminant of constant");
  Rat res = qp_resultant(f, qp_derivative(f));
  Rat disc = res / f.back();
  if (((d * (d - 1)) / 2) % 2 == 1) disc = -disc;
  return disc;
}

// ---- F_p ----

namespace {

long fp_inv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return t;
}

FpPoly fp_norm(FpPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

FpPoly fp_monic(FpPoly f, long p) {
  f = fp_norm(f);
  if (f.empty()) return f;
  long inv = fp_inv(f.back(), p);
  for (auto& x : f) x = (long)(((__int128)x * inv) % p);
  return f;
}

// quotient of a by b; remainder via fp_mod
FpPoly fp_div(FpPoly a, const FpPoly& b, long p) {
  a = fp_norm(a);
  long db = (long)b.size() - 1;
  if ((long)a.size() - 1 < db) return {};
  FpPoly q((long)a.size() - 1 - db + 1, 0);
  long inv = fp_inv(b.back(), p);
  while ((long)a.size() - 1 >= db && !a.empty()) {
    long da = (long)a.size() - 1;
    long f = (long)(((__int128)a.back() * inv) % p);
    q[da - db] = f;
    if (f) {
      for (long i = 0; i <= db; i++) {
        a[da - db + i] = (long)((a[da - db + i] - (__int128)f * b[i]) % p);
        if (a[da - db + i] < 0) a[da - db + i] += p;
      }
    }
    a.pop_back();
    a = fp_norm(a);
  }
  return fp_norm(q);
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, long p) {
  FpPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); i++) c[i] = a[i];
  for (size_t i = 0; i < b.size(); i++) c[i] = (c[i] + b[i]) % p;
  return fp_norm(c);
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, long p) {
  FpPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); i++) c[i] = a[i];
  for (size_t i = 0; i < b.size(); i++) {
    c[i] = (c[i] - b[i]) % p;
    if (c[i] < 0) c[i] += p;
  }
  return fp_norm(c);
}

}  // namespace

FpPoly fp_from_z(const ZPoly& f, long p) {
  FpPoly out(f.size());
  for (size_t i = 0; i < f.size(); i++) {
    Int r = f[i] % p;
    long v = r.get_si();
    if (v < 0) v += p;
    out[i] = v;
  }
  return fp_norm(out);
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); i++) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); j++) c[i + j] = (long)((c[i + j] + (__int128)a[i] * b[j]) % p);
  }
  return fp_norm(c);
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, long p) {
  a = fp_norm(a);
  long dm = (long)m.size() - 1;
  long inv = fp_inv(m.back(), p);
  while ((long)a.size() - 1 >= dm && !a.empty()) {
    long da = (long)a.size() - 1;
    long f = (long)(((__int128)a.back() * inv) % p);
    if (f) {
      for (long i = 0; i <= dm; i++) {
        a[da - dm + i] = (long)((a[da - dm + i] - (__int128)f * m[i]) % p);
        if (a[da - dm + i] < 0) a[da - dm + i] += p;
      }
    }
    a.pop_back();
    a = fp_norm(a);
  }
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
  a = fp_norm(a);
  b = fp_norm(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = b;
    b = r;
  }
  return fp_monic(a, p);
}

FpPoly fp_powmod(const FpPoly& base, Int e, const FpPoly& m, long p) {
  FpPoly result{1};
  FpPoly b = fp_mod(base, m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = fp_mod(fp_mul(result, b, p), m, p);
    b = fp_mod(fp_mul(b, b, p), m, p);
    e >>= 1;
  }
  return result;
}

namespace {

// equal-degree splitting (Cantor-Zassenhaus), f squarefree monic, all
// irreducible factors of degree deg
void fp_edf(const FpPoly& f, long deg, long p, Rng& rng, std::vector<FpPoly>& out) {
  long n = (long)f.size() - 1;
  if (n == deg) {
    out.push_back(f);
    return;
  }
  while (true) {
    FpPoly h(n);
    for (long i = 0; i < n; i++) h[i] = (long)rng.below((uint64_t)p);
    h = fp_norm(h);
    if ((long)h.size() - 1 < 1) continue;
    FpPoly g;
    if (p == 2) {
      // trace map sum h^(2^i) over the degree
      FpPoly t = h;
      FpPoly acc = h;
      for (long i = 1; i < deg; i++) {
        t = fp_mod(fp_mul(t, t, p), f, p);
        acc = fp_add(acc, t, p);
      }
      g = fp_gcd(f, acc, p);
    } else {
      Int e = (pow_int(Int(p), (unsigned long)deg) - 1) / 2;
      FpPoly hp = fp_powmod(h, e, f, p);
      if (hp.empty())
        g = fp_gcd(f, h, p);
      else {
        hp = fp_sub(hp, FpPoly{1}, p);
        g = fp_gcd(f, hp, p);
      }
    }
    long dg = (long)g.size() - 1;
    if (dg >= 1 && dg < n) {
      fp_edf(g, deg, p, rng, out);
      fp_edf(fp_monic(fp_div(f, g, p), p), deg, p, rng, out);
      return;
    }
  }
}

// distinct-degree then equal-degree factorization of squarefree monic f
void fp_factor_squarefree(FpPoly f, long p, std::vector<FpPoly>& out) {
  Rng rng(0x5eedf00d);
  FpPoly x{0, 1};
  FpPoly xq = x;
  long d = 0;
  while ((long)f.size() - 1 >= 1) {
    d++;
    if ((long)f.size() - 1 < 2 * d) {
      out.push_back(f);  // what is left is irreducible
      return;
    }
    xq = fp_powmod(xq, Int(p), f, p);
    FpPoly g = fp_gcd(f, fp_sub(xq, x, p), p);
    if ((long)g.size() - 1 >= 1) {
      fp_edf(g, d, p, rng, out);
      f = fp_monic(fp_div(f, g, p), p);
      xq = fp_mod(xq, f, p);
    }
  }
}

}  // namespace

std::vector<std::pair<FpPoly, long>> fp_factor(const FpPoly& f_in, long p) {
  std::vector<std::pair<FpPoly, long>> out;
  FpPoly f = fp_monic(f_in, p);
  if ((long)f.size() - 1 < 1) return out;
  // peel multiplicities: m = f / gcd(f, f'), recurse on the deflated part
  std::function<void(FpPoly, long)> run = [&](FpPoly g, long mult) {
    g = fp_monic(g, p);
    if ((long)g.size() - 1 < 1) return;
    FpPoly d((long)g.size() - 1, 0);
    for (size_t i = 1; i < g.size(); i++) d[i - 1] = (long)(((__int128)g[i] * ((long)i % p)) % p);
    d = fp_norm(d);
    if (d.empty()) {
      // g = h(x^p): over F_p this is h(x)^p
      FpPoly h((g.size() - 1) / p + 1, 0);
      for (size_t i = 0; i < g.size(); i += p) h[i / p] = g[i];
      run(h, mult * p);
      return;
    }
    FpPoly c = fp_gcd(g, d, p);
    // g/c carries every factor whose multiplicity is not divisible by p
    FpPoly w = fp_monic(fp_div(g, c, p), p);
    std::vector<FpPoly> irr;
    fp_factor_squarefree(w, p, irr);
    FpPoly residual = g;
    for (auto& q : irr) {
      long e = 0;
      while (true) {
        FpPoly r = fp_mod(residual, q, p);
        if (!r.empty()) break;
        residual = fp_monic(fp_div(residual, q, p), p);
        e++;
      }
      out.emplace_back(q, e * mult);
    }
    // what remains has all multiplicities divisible by p; its derivative
    // vanishes, so the recursion takes the h(x^p) branch
    if ((long)residual.size() - 1 >= 1) run(residual, mult);
  };
  run(f, 1);
  // merge duplicates (defensive; run() emits each distinct factor once)
  std::vector<std::pair<FpPoly, long>> merged;
  for (auto& [g, e] : out) {
    bool found = false;
    for (auto& [g2, e2] : merged)
      if (g2 == g) {
        found = true;
        break;
      }
    if (!found) merged.emplace_back(g, e);
  }
  return merged;
}

// ---- Z factorization (Zassenhaus) ----

namespace {

Int zp_content(const ZPoly& f) {
  Int g = 0;
  for (auto& c : f) g = gcd(g, c);
  return g == 0 ? Int(1) : g;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < b.size(); j++) c[i + j] += a[i] * b[j];
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

bool zp_divides(const ZPoly& g, const ZPoly& f, ZPoly* quot) {
  QPoly q, r;
  qp_divmod(qp_from_z(f), qp_from_z(g), q, r);
  if (!r.empty()) return false;
  for (auto& c : q)
    if (den(c) != 1) return false;
  if (quot) *quot = zp_from_q(q);
  return true;
}

ZPoly zp_primitive(ZPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f.empty()) return f;
  Int c = zp_content(f);
  for (auto& x : f) x /= c;
  if (f.back() < 0)
    for (auto& x : f) x = -x;
  return f;
}

// Hensel-lift a monic pairwise-coprime factorization of monic f from mod p to
// mod p^K (linear steps).
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<FpPoly>& gs, long p, long K) {
  size_t r = gs.size();
  std::vector<FpPoly> us(r);
  for (size_t i = 0; i < r; i++) {
    FpPoly prod{1};
    for (size_t j = 0; j < r; j++)
      if (j != i) prod = fp_mod(fp_mul(prod, gs[j], p), gs[i], p);
    // invert prod modulo g_i by extended Euclid
    FpPoly r0 = gs[i], r1 = prod;
    FpPoly s0{}, s1{1};
    while (!r1.empty() && (long)r1.size() - 1 >= 1) {
      FpPoly q = fp_div(r0, r1, p);
      FpPoly r2 = fp_mod(r0, r1, p);
      FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
      r0 = r1;
      r1 = r2;
      s0 = s1;
      s1 = s2;
    }
    if (r1.empty()) fail(Errc::FactorizationUnavailable, "factors not coprime in Hensel lift");
    long inv = fp_inv(r1[0], p);
    FpPoly u = s1;
    for (auto& x : u) x = (long)(((__int128)x * inv) % p);
    us[i] = fp_mod(u, gs[i], p);
  }
  std::vector<ZPoly> G(r);
  for (size_t i = 0; i < r; i++) {
    G[i].resize(gs[i].size());
    for (size_t j = 0; j < gs[i].size(); j++) G[i][j] = gs[i][j];
  }
  Int pk(p);  // current modulus of validity
  for (long k = 1; k < K; k++) {
    ZPoly prod{Int(1)};
    for (auto& g : G) prod = zp_mul(prod, g);
    ZPoly diff(std::max(f.size(), prod.size()), Int(0));
    for (size_t t = 0; t < f.size(); t++) diff[t] += f[t];
    for (size_t t = 0; t < prod.size(); t++) diff[t] -= prod[t];
    FpPoly e(diff.size(), 0);
    bool zero = true;
    for (size_t t = 0; t < diff.size(); t++) {
      if (diff[t] % pk != 0) fail(Errc::FactorizationUnavailable, "Hensel invariant broken");
      Int q = (diff[t] / pk) % p;
      long v = q.get_si();
      if (v < 0) v += p;
      e[t] = v;
      if (v) zero = false;
    }
    if (!zero) {
      for (size_t i = 0; i < r; i++) {
        FpPoly delta = fp_mod(fp_mul(fp_norm(e), us[i], p), gs[i], p);
        for (size_t t = 0; t < delta.size(); t++)
          if (delta[t]) G[i][t] += pk * delta[t];
      }
    }
    pk *= p;
  }
  return G;
}

}  // namespace

std::vector<std::pair<ZPoly, long>> z_factor(const ZPoly& f_in) {
  std::vector<std::pair<ZPoly, long>> out;
  ZPoly f = zp_primitive(f_in);
  if ((long)f.size() - 1 < 1) return out;

  // reduce to the squarefree part first
  QPoly q = qp_from_z(f);
  QPoly g = qp_gcd(q, qp_derivative(q));
  if (qp_degree(g) > 0) {
    QPoly sqfree, r;
    qp_divmod(q, g, sqfree, r);
    Int denom = 1;
    for (auto& c : sqfree) denom = denom * den(c) / gcd(denom, den(c));
    ZPoly clean(sqfree.size());
    for (size_t i = 0; i < sqfree.size(); i++) clean[i] = num(sqfree[i]) * (denom / den(sqfree[i]));
    clean = zp_primitive(clean);
    for (auto& [fac, e] : z_factor(clean)) {
      long mult = 0;
      ZPoly rest = f, quot;
      while (zp_divides(fac, rest, &quot)) {
        mult++;
        rest = quot;
      }
      out.emplace_back(fac, mult);
    }
    return out;
  }

  Rat disc = qp_discriminant(qp_from_z(f));
  Int bad = num(disc) * f.back();
  long p = 0;
  for (long cand : primes_upto(20000)) {
    if (bad % cand != 0) {
      p = cand;
      break;
    }
  }
  if (!p) fail(Errc::FactorizationUnavailable, "no prime of good reduction found");

  // make monic: F(x) = lc^(n-1) f(x/lc), factor F, map factors back
  Int lc = f.back();
  long n = (long)f.size() - 1;
  ZPoly F(n + 1);
  for (long i = 0; i < n; i++) F[i] = f[i] * pow_int(lc, (unsigned long)(n - 1 - i));
  F[n] = 1;

  auto modular = fp_factor(fp_from_z(F, p), p);
  if (modular.size() == 1 && modular[0].second == 1) {
    out.emplace_back(f, 1);
    return out;
  }
  std::vector<FpPoly> gs;
  for (auto& [gfac, e] : modular) {
    if (e != 1) fail(Errc::FactorizationUnavailable, "mod-p image not squarefree");
    gs.push_back(gfac);
  }

  Int norm2 = 0;
  for (auto& x : F) norm2 += x * x;
  Int bound = pow_int(2, F.size()) * (isqrt(norm2) + 1);
  long K = 1;
  Int pk(p);
  while (pk <= 2 * bound) {
    pk *= p;
    K++;
  }
  auto lifted = hensel_lift(F, gs, p, K);

  auto symmetric = [&](const Int& v) {
    Int m = v % pk;
    if (m < 0) m += pk;
    if (2 * m > pk) m -= pk;
    return m;
  };
  size_t rcount = lifted.size();
  std::vector<bool> used(rcount, false);
  ZPoly rest = F;
  std::vector<ZPoly> monic_factors;
  for (size_t size = 1; size <= rcount && size <= rcount; size++) {
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<size_t> avail;
      for (size_t i = 0; i < rcount; i++)
        if (!used[i]) avail.push_back(i);
      if (avail.size() < size) break;
      std::vector<size_t> idx(size);
      std::function<bool(size_t, size_t)> rec = [&](size_t pos, size_t start) -> bool {
        if (pos == size) {
          ZPoly cand{Int(1)};
          for (size_t t = 0; t < size; t++) {
            cand = zp_mul(cand, lifted[idx[t]]);
            for (auto& v : cand) v = symmetric(v);
          }
          while (!cand.empty() && cand.back() == 0) cand.pop_back();
          ZPoly quot;
          if (!cand.empty() && zp_divides(cand, rest, &quot)) {
            monic_factors.push_back(cand);
            rest = quot;
            for (size_t t = 0; t < size; t++) used[idx[t]] = true;
            return true;
          }
          return false;
        }
        for (size_t i = start; i < avail.size(); i++) {
          if (used[avail[i]]) continue;
          idx[pos] = avail[i];
          if (rec(pos + 1, i + 1)) return true;
        }
        return false;
      };
      if (rec(0, 0)) progress = true;
    }
  }
  if ((long)rest.size() - 1 >= 1) monic_factors.push_back(rest);

  for (auto& gm : monic_factors) {
    ZPoly back = gm;
    if (lc != 1) {
      for (size_t i = 0; i < back.size(); i++) back[i] *= pow_int(lc, i);
      back = zp_primitive(back);
    }
    out.emplace_back(back, 1);
  }
  return out;
}

bool z_is_irreducible(const ZPoly& f) {
  auto fs = z_factor(f);
  return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace hc
