#include "constants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace hc {

namespace {

std::mutex g_zeta_mutex;
std::map<std::pair<long, std::string>, Interval> g_zeta_cache;

Interval cached(const std::string& key, long s, const std::function<Interval()>& fn) {
  std::lock_guard<std::mutex> g(g_zeta_mutex);
  auto it = g_zeta_cache.find({s, key});
  if (it != g_zeta_cache.end()) return it->second;
  Interval v = fn();
  g_zeta_cache[{s, key}] = v;
  return v;
}

}  // namespace

Interval riemann_zeta_int(long s, const Rat& prec) {
  if (s < 2) fail(Errc::UnsupportedShape, "zeta needs s >= 2");
  // choose M so the sandwich width ~ s M^-(s+1) is below prec
  long m = 64;
  auto width_ok = [&](long mm) {
    // width <= int_{M-1/2}^{M} t^-s dt - f(M)/2 <= f(M-1/2) - f(M) <= s (M-1)^-(s+1)
    Rat w = Rat(s) * pow_rat_int(Rat(mm - 1), -(s + 1));
    return w < prec / 2;
  };
  while (!width_ok(m)) m *= 2;
  std::string key = "riemann:" + rat_to_string(prec);
  return cached(key, s, [&]() {
    long bits = 32;
    Rat p = prec;
    while (p < 1) {
      p *= 2;
      bits++;
    }
    // fixed-point partial sum: floor(2^B / n^s) per term, floor error <= 1
    long B = bits + 24;
    while ((Int(1) << (B - bits)) < m) B++;
    Int scale = Int(1) << B;
    Int acc = 0;
    for (long n = 1; n < m; n++) acc += scale / pow_int(Int(n), s);
    Interval sum(rat(acc, scale), rat(acc + m, scale));
    // tail over n >= m: [ int_m + f(m)/2 , int_{m-1/2} ]
    Rat f_m = pow_rat_int(Rat(m), -s);
    Rat int_m = pow_rat_int(Rat(m), 1 - s) / Rat(s - 1);
    Rat int_mh = pow_rat_int(Rat(m) - rat(1, 2), 1 - s) / Rat(s - 1);
    return (sum + Interval(int_m + f_m / 2, int_mh)).round_out(bits + 8);
  });
}

Interval dirichlet_L_quadratic(long disc, long s, const Rat& prec) {
  std::string key = "L:" + std::to_string(disc) + ":" + rat_to_string(prec);
  return cached(key, s, [&]() {
    long q = std::abs(disc);
    // tail bound 2q (N+1)^-s by Abel summation
    long n_terms = 64;
    while (Rat(2 * q) * pow_rat_int(Rat(n_terms + 1), -s) >= prec / 2) n_terms *= 2;
    long bits = 32;
    Rat p = prec;
    while (p < 1) {
      p *= 2;
      bits++;
    }
    // character table (period q) + fixed-point accumulation
    std::vector<int> chi(q);
    for (long a = 0; a < q; a++) chi[a] = (int)kronecker_symbol(Int(disc), Int(a));
    long B = bits + 24;
    while ((Int(1) << (B - bits)) < n_terms) B++;
    Int scale = Int(1) << B;
    Int acc = 0;
    for (long n = 1; n <= n_terms; n++) {
      int c = chi[n % q];
      if (!c) continue;
      Int term = scale / pow_int(Int(n), s);
      if (c > 0)
        acc += term;
      else
        acc -= term;
    }
    Interval sum(rat(acc - n_terms, scale), rat(acc + n_terms, scale));
    Rat tail = Rat(2 * q) * pow_rat_int(Rat(n_terms + 1), -s);
    return (sum + Interval(-tail, tail)).round_out(bits + 8);
  });
}

Interval dedekind_zeta_euler(const OrderPtr& k, long s, long p0) {
  long d = k->degree();
  long bits = 128;
  Interval prod(Rat(1));
  Interval qprod(Rat(1));  // prod over p <= p0 of (1 - p^-s), for the tail comparison
  for (long p : primes_upto(p0)) {
    Interval local(Rat(1));
    for (auto& pi : factor_rational_prime(k, Int(p))) {
      Rat npinv = pow_rat_int(pow_rat_int(Rat(p), pi.res_f), -s);
      local = local / Interval(Rat(1) - npinv);
    }
    prod = (prod * local).round_out(bits);
    qprod = (qprod * Rat(1 - pow_rat_int(Rat(p), -s))).round_out(bits);
  }
  // remaining factor R satisfies 1 <= R <= (zeta(s) * qprod)^d
  Interval z = riemann_zeta_int(s, rat(1, Int(1) << 80));
  Interval upper = (z * qprod).power(d);
  Rat hi = std::max(upper.hi, Rat(1));
  return (prod * Interval(Rat(1), hi)).round_out(bits);
}

Interval dedekind_zeta(const OrderPtr& k, long s, const Rat& prec) {
  if (s < 2) fail(Errc::UnsupportedShape, "zeta needs s >= 2");
  if (k->degree() == 1) return riemann_zeta_int(s, prec);
  if (k->degree() == 2) {
    long disc = k->invariants().disc.get_si();
    Interval z = riemann_zeta_int(s, prec / 8);
    Interval l = dirichlet_L_quadratic(disc, s, prec / 8);
    return (z * l).round_out(256);
  }
  // generic Euler path with doubling
  long p0 = 64;
  Interval best = dedekind_zeta_euler(k, s, p0);
  while (best.width() > prec) {
    if (p0 > (1L << 21)) fail(Errc::PrecisionUnreachable, "Euler product cannot reach precision");
    p0 *= 2;
    best = dedekind_zeta_euler(k, s, p0);
  }
  return best;
}

Interval schanuel_constant(const OrderPtr& k, long n, const Rat& prec) {
  const OrderInvariants& inv = k->invariants();
  if (!inv.regulator_known || !inv.class_number_known)
    fail(Errc::BadFixture, "Schanuel constant needs class number and regulator");
  long r = k->real_places(), sc = k->complex_places();
  long bits = 64;
  Rat p = prec;
  while (p < 1) {
    p *= 2;
    bits++;
  }
  Interval reg(inv.regulator - inv.regulator_prec, inv.regulator + inv.regulator_prec);
  Interval zeta = dedekind_zeta(k, n + 1, prec / 16);
  Interval pi = int_pi(bits + 16);
  Interval two_pi_s = (pi * Rat(2)).power(sc);
  Rat twor = pow_rat_int(Rat(2), r);
  Int absd = inv.disc;
  if (absd < 0) absd = -absd;
  Interval sqrtd = int_sqrt(Interval(Rat(absd)), bits + 16);
  Interval main = (two_pi_s * twor / sqrtd).power(n + 1);
  Interval np = Interval(pow_rat_int(Rat(n + 1), r + sc - 1));
  Interval h_over_w = Interval(rat(inv.class_number, Int(inv.roots_of_unity)));
  return (h_over_w * reg / zeta * main * np).round_out(bits);
}

// ---- local data for the finite parts ----

namespace {

struct RelativePrimeData {
  std::vector<long> rel_e, rel_f;  // over the primes of the top field above P
  std::vector<long> vals;          // v_Q(D) for those primes
};

RelativePrimeData relative_data(const Ideal& d_top, const PrimeIdeal& p_base,
                                const ExtensionPtr& ext) {
  RelativePrimeData out;
  Ideal up_p = extend_up(p_base.ideal, ext);
  for (auto& q : factor_rational_prime(ext->top(), p_base.under_p)) {
    long e_rel = valuation(up_p, q);
    if (e_rel == 0) continue;  // lies over a different prime of the base
    long f_rel = q.res_f / p_base.res_f;
    out.rel_e.push_back(e_rel);
    out.rel_f.push_back(f_rel);
    out.vals.push_back(valuation(d_top, q));
  }
  return out;
}

// exact norm of an ideal as a power product over primes
PowerProduct norm_power_product(const Ideal& a, const Rat& exponent) {
  PowerProduct out;
  for (auto& [p, e] : factor_ideal(a).factors)
    out = out * PowerProduct::prime_power(p.under_p, Rat(p.res_f) * Rat(e) * exponent);
  return out;
}

}  // namespace

PowerProduct q_factor(const Ideal& d_top, const Ideal& b_base, long n, const ExtensionPtr& ext) {
  Ideal g = d_top + extend_up(b_base, ext);
  Rat expn = rat(n + 1, ext->relative_degree());
  PowerProduct numer = norm_power_product(g, expn);
  PowerProduct denom = norm_power_product(b_base, Rat(1));
  return numer / denom;
}

PowerSum local_factor(const Ideal& d_top, const PrimeIdeal& p, long n, const ExtensionPtr& ext) {
  if (!d_top.is_integral()) fail(Errc::UnsupportedShape, "local factor needs an integral ideal");
  RelativePrimeData rel = relative_data(d_top, p, ext);
  long rel_deg = ext->relative_degree();
  Rat np = p.norm();
  // l = v_P(down D) = max ceil(v_Q / e_Q)
  long l = 0;
  for (size_t i = 0; i < rel.vals.size(); i++)
    l = std::max(l, (rel.vals[i] + rel.rel_e[i] - 1) / rel.rel_e[i]);
  auto q_at = [&](long j) {
    // q(D, P^j) = NP^((n+1)/rel_deg * sum_Q f_Q min(v_Q, j e_Q) - j)
    long u = 0;
    for (size_t i = 0; i < rel.vals.size(); i++)
      u += rel.rel_f[i] * p.res_f * std::min(rel.vals[i], j * rel.rel_e[i]);
    // u is in absolute residue degrees over p; NP = p^res_f, so express the
    // exponent over the rational prime p directly
    Rat ex = rat(n + 1, rel_deg) * Rat(u) - Rat(j) * Rat(p.res_f);
    return PowerProduct::prime_power(p.under_p, ex);
  };
  PowerSum series;
  for (long j = 0; j < l; j++) series += q_at(j);
  // geometric tail: q(D,P^j) = NP^(l-j) q(D,P^l) for j >= l
  PowerSum tail(q_at(l));
  tail *= np / (np - 1);
  series += tail;
  PowerSum one_plus = PowerSum(Rat(1)) + series * (pow_rat_int(np, n) - 1);
  Rat front = (np - 1) / (pow_rat_int(np, n + 1) - 1);
  return one_plus * front;
}

std::vector<long> abs_value_groups(const Elem& theta_top) {
  const OrderPtr& K = theta_top.order;
  long places = K->num_places();
  if (places == 1) return {0};
  // clear denominators so all conjugate products are algebraic integers
  Int lden = 1;
  for (auto& c : theta_top.c) lden = lden * den(c) / gcd(lden, den(c));
  Elem th = theta_top * Rat(lden);
  // polynomial with integer coefficients whose roots include every product
  // sigma_i(th) sigma_j(th): coefficients recovered by interval rounding
  QPoly prod_poly;
  {
    Rat w = rat(1, Int(1) << 64);
    for (int attempt = 0; attempt < 10; attempt++) {
      // all embeddings: real places once, complex places twice (conjugates)
      std::vector<CBox> roots;
      for (long wpl = 0; wpl < places; wpl++) {
        CBox b = K->embedding_box(th.c, wpl, w);
        roots.push_back(b);
        if (!K->place(wpl).real) roots.push_back(b.conj());
      }
      std::vector<CBox> prods;
      for (size_t i = 0; i < roots.size(); i++)
        for (size_t j = i; j < roots.size(); j++) prods.push_back(roots[i] * roots[j]);
      // expand prod (x - r) with interval coefficients
      std::vector<CBox> coeff{CBox::point(1, 0)};
      for (auto& r : prods) {
        std::vector<CBox> next(coeff.size() + 1, CBox::point(0, 0));
        for (size_t t = 0; t < coeff.size(); t++) {
          next[t + 1] = next[t + 1] + coeff[t];
          next[t] = next[t] - coeff[t] * r;
        }
        coeff = next;
        for (auto& c : coeff) c = c.round_out(160);
      }
      // coeff is already low -> high: multiplying by (t - r) shifts indices up
      bool ok = true;
      QPoly out(coeff.size());
      for (size_t t = 0; t < coeff.size() && ok; t++) {
        Rat lo = coeff[t].re.lo, hi = coeff[t].re.hi;
        Int c_lo = ceil_rat(lo), c_hi = floor_rat(hi);
        if (c_lo != c_hi) ok = false;
        if (!coeff[t].im.contains(Rat(0))) fail(Errc::PrecisionUnreachable, "complex coefficient");
        if (ok) out[t] = Rat(c_lo);
      }
      if (ok) {
        prod_poly = qp_normalize(out);
        break;
      }
      w = w * rat(1, Int(1) << 64);
      if (attempt == 9) fail(Errc::PrecisionUnreachable, "product polynomial rounding failed");
    }
  }
  // squarefree part, real roots isolated
  QPoly sf;
  {
    QPoly g = qp_gcd(prod_poly, qp_derivative(prod_poly));
    QPoly r;
    qp_divmod(prod_poly, g, sf, r);
  }
  auto iso = isolate_real_roots(sf);
  // |sigma_w(th)|^2 must land in exactly one isolating interval
  std::vector<long> groups(places, -1);
  Rat w2 = rat(1, Int(1) << 48);
  for (long wpl = 0; wpl < places; wpl++) {
    for (int round = 0; round < 30; round++) {
      Interval v = K->abs_embedding(th.c, wpl, w2).square();
      // refine isolating intervals as needed
      long hit = -1, nhit = 0;
      for (size_t t = 0; t < iso.size(); t++) {
        auto [lo, hi] = refine_root(sf, iso[t].first, iso[t].second, w2);
        iso[t] = {lo, hi};
        if (v.overlaps(Interval(lo, hi))) {
          hit = (long)t;
          nhit++;
        }
      }
      if (nhit == 1) {
        groups[wpl] = hit;
        break;
      }
      w2 /= Int(1) << 24;
      if (round == 29) fail(Errc::PrecisionUnreachable, "could not match value to a root");
    }
  }
  return groups;
}

VolumeResult archimedean_volume(const Elem& theta_top, const ExtensionPtr& ext, long n,
                                const Rat& prec, long mc_samples, uint64_t mc_seed) {
  const OrderPtr& K = ext->top();
  const OrderPtr& k = ext->base();
  if (theta_top.is_zero()) fail(Errc::ZeroTheta, "volume needs a nonzero theta");
  auto groups = abs_value_groups(theta_top);
  long rel = ext->relative_degree();
  // constant over every base place -> closed form |N_K(theta)|^(-n/[K:k])
  bool constant = true;
  for (long v = 0; v < k->num_places(); v++) {
    auto over = ext->places_over(v);
    for (size_t i = 1; i < over.size(); i++)
      if (groups[over[i]] != groups[over[0]]) constant = false;
  }
  long bits = 64;
  {
    Rat p = prec;
    while (p < 1) {
      p *= 2;
      bits++;
    }
  }
  if (constant) {
    Rat nt = theta_top.norm();
    if (nt < 0) nt = -nt;
    VolumeResult out;
    out.mode = VolumeResult::Mode::ClosedForm;
    PowerProduct v = PowerProduct::from_rational(nt).pow(rat(-n, rel));
    out.exact = PowerSum(v);
    out.value = v.eval(bits);
    out.rigorous = true;
    return out;
  }
  // two distinct real values over the single place of Q, n = 1:
  // V = (1/t1)(1 + log(t1/t2)/2) with t1 >= t2
  if (k->degree() == 1 && n == 1 && K->degree() == 2 && K->real_places() == 2) {
    Rat w = rat(1, Int(1) << (bits + 16));
    Interval t0 = K->abs_embedding(theta_top.c, 0, w);
    Interval t1 = K->abs_embedding(theta_top.c, 1, w);
    Interval big = t0.max(t1), small = t0.min(t1);
    Interval lg = int_log(big / small, bits + 8);
    VolumeResult out;
    out.mode = VolumeResult::Mode::Exact2d;
    out.value = ((Interval(Rat(1)) + lg / Rat(2)) / big).round_out(bits);
    out.rigorous = true;
    return out;
  }
  // Monte Carlo per base place
  VolumeResult out;
  out.mode = VolumeResult::Mode::MonteCarlo;
  out.rigorous = false;
  out.mc_samples = mc_samples;
  out.mc_seed = mc_seed;
  Rng rng(mc_seed);
  Interval total(Rat(1));
  Rat w = rat(1, Int(1) << 40);
  for (long v = 0; v < k->num_places(); v++) {
    auto over = ext->places_over(v);
    long dv = k->place(v).local_degree();
    long dim = dv * (n + 1);
    // per-w data: t_w = |theta|_w and weight d_w
    std::vector<double> tw;
    std::vector<long> dw;
    double pv_lo = 1;  // lower bound of prod t_w^(d_w/(dv rel))
    for (long wp : over) {
      Interval t = K->abs_embedding(theta_top.c, wp, w);
      tw.push_back(t.mid().get_d());
      dw.push_back(K->place(wp).local_degree());
      pv_lo *= std::pow(t.lo.get_d(), double(dw.back()) / double(dv * rel));
    }
    // sampling box contains the cell: |z_0| < 1, |z_i| < 1/p_v
    double half = 1.0 / pv_lo * 1.0000001;
    double boxvol = 1;
    for (long c = 0; c < dv; c++) boxvol *= 2.0;
    for (long i = 0; i < n * dv; i++) boxvol *= 2.0 * half;
    long hits = 0;
    std::vector<double> z(dim);
    for (long samp = 0; samp < mc_samples; samp++) {
      for (long c = 0; c < dv; c++) z[c] = 2 * rng.uniform() - 1;
      for (long i = dv; i < dim; i++) z[i] = (2 * rng.uniform() - 1) * half;
      // product over w of max(|z0|, t_w |z_i|)^(d_w / (dv rel)) < 1
      double logsum = 0;
      for (size_t widx = 0; widx < tw.size(); widx++) {
        double m = 0;
        // |z_0|
        double a0;
        if (dv == 1)
          a0 = std::fabs(z[0]);
        else
          a0 = std::sqrt(z[0] * z[0] + z[1] * z[1]);
        m = a0;
        for (long i = 1; i <= n; i++) {
          double ai;
          if (dv == 1)
            ai = std::fabs(z[i]);
          else
            ai = std::sqrt(z[2 * i] * z[2 * i] + z[2 * i + 1] * z[2 * i + 1]);
          m = std::max(m, tw[widx] * ai);
        }
        logsum += double(dw[widx]) / double(dv * rel) * std::log(std::max(m, 1e-300));
      }
      if (logsum < 0) hits++;
    }
    double phat = double(hits) / double(mc_samples);
    double sigma = boxvol * std::sqrt(std::max(phat * (1 - phat), 1e-12) / double(mc_samples));
    double mean = boxvol * phat;
    Rat lo = rat_from_string(std::to_string(mean - 3 * sigma));
    Rat hi = rat_from_string(std::to_string(mean + 3 * sigma));
    total = total * Interval(std::min(lo, hi), std::max(lo, hi));
  }
  // normalize by (2^r pi^s)^(n+1) ... the per-place cells already integrate to
  // V_v; V = (2^r pi^s)^-(n+1) prod V_v
  Interval pi = int_pi(96);
  Interval norm = (Interval(pow_rat_int(Rat(2), k->real_places())) *
                   pi.power(k->complex_places()))
                      .power(n + 1);
  out.value = (total / norm).round_out(48);
  return out;
}

GConstant g_theta(const Elem& theta_top, const ExtensionPtr& ext, long n,
                  GConstant::Method method, const Rat& prec, long mc_samples, uint64_t mc_seed) {
  if (theta_top.is_zero()) fail(Errc::ZeroTheta, "g needs a nonzero theta");
  const OrderPtr& k = ext->base();
  // alpha: rational integer clearing the denominators of theta
  Int alpha = 1;
  for (auto& c : theta_top.c) alpha = alpha * den(c) / gcd(alpha, den(c));
  Elem scaled = theta_top * Rat(alpha);
  Ideal d_top = Ideal::principal(scaled);
  Ideal d_base = contract_down(d_top, ext);
  Rat alpha_norm_n = pow_rat_int(pow_rat_int(Rat(alpha), k->degree()), n);

  auto sum_form = [&]() {
    PowerSum total;
    auto divs = divisors(d_base);
    for (auto& b : divs) {
      // S(D, B) = sum_{A | D/B} mu(A)/N(A) prod_{P | AB} (NP^(n+1)-NP)/(NP^(n+1)-1)
      Ideal rest = d_base / b;
      auto bfac = factor_ideal(b);
      Rat s_sum = 0;
      for (auto& a : divisors(rest)) {
        int mu = moebius_ideal(a);
        if (mu == 0) continue;
        // primes dividing AB
        std::vector<PrimeIdeal> ps;
        for (auto& [p, e] : factor_ideal(a).factors) ps.push_back(p);
        for (auto& [p, e] : bfac.factors) {
          bool seen = false;
          for (auto& q : ps)
            if (q.ideal == p.ideal) seen = true;
          if (!seen) ps.push_back(p);
        }
        Rat prod = 1;
        for (auto& p : ps) {
          Rat np = p.norm();
          prod *= (pow_rat_int(np, n + 1) - np) / (pow_rat_int(np, n + 1) - 1);
        }
        s_sum += Rat(mu) / a.norm() * prod;
      }
      PowerSum term(q_factor(d_top, b, n, ext));
      term *= s_sum;
      total += term;
    }
    total *= Rat(1) / alpha_norm_n;
    return total;
  };
  auto product_form = [&]() {
    PowerSum total(Rat(1));
    for (auto& [p, e] : factor_ideal(d_base).factors) {
      (void)e;
      total = total * local_factor(d_top, p, n, ext);
    }
    total *= Rat(1) / alpha_norm_n;
    return total;
  };

  GConstant out;
  out.method = method;
  switch (method) {
    case GConstant::Method::Sum:
      out.finite = sum_form();
      break;
    case GConstant::Method::Product:
      out.finite = product_form();
      break;
    case GConstant::Method::Both: {
      PowerSum s = sum_form(), p = product_form();
      if (!(s == p)) fail(Errc::UnsupportedShape, "divisor sum and local product disagree");
      out.finite = s;
      break;
    }
    case GConstant::Method::General:
      fail(Errc::UnsupportedVariant, "use general_constant for the general method");
  }
  out.volume = archimedean_volume(theta_top, ext, n, prec, mc_samples, mc_seed);
  long bits = 64;
  {
    Rat p = prec;
    while (p < 1) {
      p *= 2;
      bits++;
    }
  }
  out.value = (out.finite.eval(bits + 16) * out.volume.value).round_out(bits);
  return out;
}

bool sharpness_predicate(const Elem& theta_top, const ExtensionPtr& ext) {
  if (theta_top.is_zero()) fail(Errc::ZeroTheta, "predicate needs a nonzero theta");
  Int alpha = 1;
  for (auto& c : theta_top.c) alpha = alpha * den(c) / gcd(alpha, den(c));
  Elem scaled = theta_top * Rat(alpha);
  Ideal d_top = Ideal::principal(scaled);
  Ideal up_down = extend_up(contract_down(d_top, ext), ext);
  if (!(up_down == d_top)) return false;
  auto groups = abs_value_groups(scaled);
  const OrderPtr& k = ext->base();
  for (long v = 0; v < k->num_places(); v++) {
    auto over = ext->places_over(v);
    for (size_t i = 1; i < over.size(); i++)
      if (groups[over[i]] != groups[over[0]]) return false;
  }
  return true;
}

XiValue xi_sum(const Ideal& j, const Ideal& j1, long n, const Rat& prec) {
  if (!j.is_integral() || !j1.is_integral())
    fail(Errc::UnsupportedShape, "xi needs integral ideals");
  if (!j1.divides(j)) fail(Errc::UnsupportedShape, "xi needs J1 | J");
  XiValue out;
  if (!j1.is_whole()) {
    out.vanishes = true;
    out.times_zeta = 0;
    out.value = Interval(Rat(0));
    return out;
  }
  Rat rho = Rat(1) / j.norm();
  for (auto& [p, e] : factor_ideal(j).factors) {
    (void)e;
    Rat np = p.norm();
    rho *= (pow_rat_int(np, n + 1) - np) / (pow_rat_int(np, n + 1) - 1);
  }
  out.vanishes = false;
  out.times_zeta = rho;
  Interval z = dedekind_zeta(j.order(), n + 1, prec / 4);
  out.value = (Interval(rho) / z).round_out(128);
  return out;
}

Interval xi_series(const Ideal& j, const Ideal& j1, long n, long norm_bound, Rat* tail_bound) {
  const OrderPtr& k = j.order();
  Rat sum = 0;
  for (auto& e : ideals_up_to_norm(k, norm_bound, true)) {
    int mu = moebius_ideal(e);
    if (mu == 0) continue;
    Rat term = Rat(mu) / (j.intersect(e).norm() * pow_rat_int(j1.intersect(e).norm(), n));
    sum += term;
  }
  // |terms beyond the bound| <= sum over m > bound of a_k(m) m^-(n+1) with
  // a_k(m) <= tau(m)^(d-1+1)... use the elementary bound via partial summation
  // of A(t) <= t * d-th divisor growth; for the shipped base fields (d <= 2)
  // a_k(m) <= tau(m) <= 2 sqrt(m)
  long d = k->degree();
  Rat tail;
  if (d == 1) {
    // sum_{m > M} m^-(n+1) <= M^(-n)/n
    tail = pow_rat_int(Rat(norm_bound), -n) / Rat(n);
  } else if (d == 2) {
    // a_k(m) <= tau(m) <= 2 sqrt m: sum <= 2 sum m^(1/2 - n - 1)
    // <= 2 * M^(1/2 - n) / (n - 1/2)
    tail = Rat(2) * pow_rat_int(Rat(norm_bound), -n) *
           int_sqrt(Interval(Rat(norm_bound)), 32).hi / Rat(norm_bound) /
           (Rat(n) - rat(1, 2)) * Rat(norm_bound);
    // simplify: 2 M^(1/2-n)/(n-1/2); computed via sqrt interval
    Interval s = int_sqrt(Interval(Rat(norm_bound)), 48);
    tail = Rat(2) * s.hi * pow_rat_int(Rat(norm_bound), -n) / (Rat(n) - rat(1, 2));
  } else {
    fail(Errc::UnsupportedShape, "series tail bound shipped for degree <= 2");
  }
  if (tail_bound) *tail_bound = tail;
  return Interval(sum - tail, sum + tail);
}

// ---- general constant ----

GeneralConfig default_config(const LipschitzSystem& sys, const ExtensionPtr& ext) {
  const OrderPtr& k = ext->base();
  if (k->invariants().class_number != 1)
    fail(Errc::ConfigInvalid, "built-in config needs class number one");
  GeneralConfig cfg;
  cfg.class_reps = {Ideal::whole(k)};
  auto classes = sys.gauge_ideal_classes();
  std::vector<Ideal> s_set;
  for (auto& f : classes) s_set.push_back(f);  // up O * F = F
  cfg.s_sets = {s_set};
  // T: squarefree divisors of the integral parts of F * D^-1
  std::vector<Ideal> t;
  t.push_back(Ideal::whole(ext->top()));
  auto add_divisors = [&](const Ideal& x) {
    Ideal pos = x * (x + Ideal::whole(ext->top())).inverse();  // positive part
    for (auto& dv : divisors(pos)) {
      if (moebius_ideal(dv) == 0) continue;
      bool seen = false;
      for (auto& u : t)
        if (u == dv) seen = true;
      if (!seen) t.push_back(dv);
    }
  };
  for (auto& f : classes)
    for (auto& dideal : s_set) add_divisors(f / dideal);
  if (sys.variant() == LipschitzSystem::Variant::Theta) {
    Int alpha = 1;
    for (auto& c : sys.theta_value().c) alpha = alpha * den(c) / gcd(alpha, den(c));
    add_divisors(Ideal::principal(sys.theta_value() * Rat(alpha)));
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  cfg.t_set = t;
  return cfg;
}

void validate_config(const LipschitzSystem& sys, const ExtensionPtr& ext,
                     const GeneralConfig& cfg, long samples, uint64_t seed) {
  if (cfg.class_reps.size() != cfg.s_sets.size())
    fail(Errc::ConfigInvalid, "class reps and S sets out of step");
  if (cfg.class_reps.empty()) fail(Errc::ConfigInvalid, "no class representatives");
  const OrderPtr& k = ext->base();
  Rng rng(seed);
  long n = sys.dim();
  for (long t = 0; t < samples; t++) {
    std::vector<Elem> om;
    bool zero = true;
    for (long i = 0; i <= n; i++) {
      QVec c(k->degree());
      for (long j = 0; j < k->degree(); j++) c[j] = Rat(rng.range(-6, 6));
      Elem x{k, c};
      if (!x.is_zero()) zero = false;
      om.push_back(x);
    }
    if (zero) continue;
    // rescaling omega to make O_k(omega) a class representative multiplies
    // i(omega) by the same principal factor, so compare after dividing out
    // up(O_k(omega)) and multiplying up(C) back in
    Ideal ck = Ideal::from_generators(om);
    std::vector<Elem> top_om;
    for (auto& x : om) top_om.push_back(ext->embed(x));
    Ideal i = sys.gauge_ideal(top_om);
    Ideal reduced = i / extend_up(ck, ext);
    bool found = false;
    for (size_t r = 0; r < cfg.class_reps.size() && !found; r++) {
      Ideal expected_scale = extend_up(cfg.class_reps[r], ext);
      for (auto& dideal : cfg.s_sets[r])
        if (dideal == reduced * expected_scale) found = true;
    }
    if (!found) fail(Errc::ConfigInvalid, "sampled gauge ideal escapes the S sets");
  }
}

namespace {

// bad primes for the E-multiplicativity: primes of the base dividing
// (J cap C) C^-1 with J the intersection of the coefficient-shifted targets
std::vector<PrimeIdeal> bad_primes(const LipschitzSystem& sys, const ExtensionPtr& ext,
                                   const Ideal& b_top, const Ideal& c_base) {
  const OrderPtr& k = ext->base();
  Ideal j = contract_down(b_top, ext);
  for (auto& r : sys.rows())
    for (auto& x : r) {
      if (x.is_zero()) continue;
      Ideal shifted = contract_down(b_top * Ideal::principal(x).inverse(), ext);
      j = j.intersect(shifted);
    }
  Ideal m = j.intersect(c_base) * c_base.inverse();
  std::vector<PrimeIdeal> out;
  for (auto& [p, e] : factor_ideal(m).factors) {
    (void)e;
    out.push_back(p);
  }
  return out;
}

}  // namespace

Rat inner_sum_times_zeta(const LipschitzSystem& sys, const ExtensionPtr& ext, const Ideal& b_top,
                         const Ideal& c_base) {
  // sum_E mu(E) / r(CE) = (1/r(C)) prod_P (1 - 1/h(P)) with h multiplicative;
  // good primes contribute exactly (1 - NP^-(n+1)), so the sum times
  // zeta_k(n+1) is (1/r(C)) * prod_{bad P} (1 - 1/h(P)) / (1 - NP^-(n+1))
  long n = sys.dim();
  auto base_lattice = build_condition_lattice(ext, sys.rows(), b_top, c_base, n);
  Rat r0 = q_det(base_lattice.lattice.basis());
  if (r0 < 0) r0 = -r0;
  Rat out = Rat(1) / r0;
  for (auto& p : bad_primes(sys, ext, b_top, c_base)) {
    Rat h = condition_lattice_index(ext, sys.rows(), b_top, c_base, p.ideal);
    Rat np = p.norm();
    Rat good = Rat(1) - pow_rat_int(np, -(n + 1));
    out *= (Rat(1) - Rat(1) / h) / good;
  }
  return out;
}

Interval inner_sum_series(const LipschitzSystem& sys, const ExtensionPtr& ext, const Ideal& b_top,
                          const Ideal& c_base, long norm_bound, Rat* tail_bound) {
  const OrderPtr& k = ext->base();
  long n = sys.dim();
  Rat sum = 0;
  for (auto& e : ideals_up_to_norm(k, norm_bound, true)) {
    int mu = moebius_ideal(e);
    if (mu == 0) continue;
    auto cl = build_condition_lattice(ext, sys.rows(), b_top, c_base * e, n);
    Rat r = q_det(cl.lattice.basis());
    if (r < 0) r = -r;
    sum += Rat(mu) / r;
  }
  // each term is at most (N(CE))^-(n+1) / r-normalization; bound the tail by
  // the degree-d divisor comparison as in xi_series
  long d = k->degree();
  // 1/r(CE) <= (sqrt|disc| / N(CE))^(n+1)
  Int absd = k->invariants().disc;
  if (absd < 0) absd = -absd;
  Rat sq = int_sqrt(Interval(Rat(absd)), 48).hi;
  Rat scale = pow_rat_int(sq / c_base.norm(), n + 1);
  Rat tail;
  if (d == 1)
    tail = scale * pow_rat_int(Rat(norm_bound), -n) / Rat(n);
  else if (d == 2) {
    Interval s = int_sqrt(Interval(Rat(norm_bound)), 48);
    tail = scale * Rat(2) * s.hi * pow_rat_int(Rat(norm_bound), -n) / (Rat(n) - rat(1, 2));
  } else
    fail(Errc::UnsupportedShape, "series tail bound shipped for degree <= 2");
  if (tail_bound) *tail_bound = tail;
  return Interval(sum - tail, sum + tail);
}

GConstant general_constant(const LipschitzSystem& sys, const ExtensionPtr& ext,
                           const GeneralConfig& cfg, const Rat& prec) {
  const OrderPtr& k = ext->base();
  long n = sys.dim();
  long rel = ext->relative_degree();
  PowerSum numer;  // sum over C, D, A of mu(A) N(D)^((n+1)/rel) * sigma(AD, C)
  for (size_t ridx = 0; ridx < cfg.class_reps.size(); ridx++) {
    const Ideal& c = cfg.class_reps[ridx];
    for (auto& dideal : cfg.s_sets[ridx]) {
      PowerProduct ndpow = norm_power_product(dideal, rat(n + 1, rel));
      for (auto& a : cfg.t_set) {
        int mu = moebius_ideal(a);
        if (mu == 0) continue;
        Rat sigma = inner_sum_times_zeta(sys, ext, a * dideal, c);
        if (sigma == 0) continue;
        PowerSum term(ndpow);
        term *= sigma * mu;
        numer += term;
      }
    }
  }
  // disc normalization (2^-s sqrt|disc|)^-(n+1) = (4^-s |disc|)^(-(n+1)/2)
  Int absd = k->invariants().disc;
  if (absd < 0) absd = -absd;
  Rat disc_pow = pow_rat_int(rat(1, pow_int(4, k->complex_places())), 1) * Rat(absd);
  PowerProduct disc_factor = PowerProduct::from_rational(disc_pow).pow(rat(-(n + 1), 2));
  PowerSum finite = numer * PowerSum(disc_factor);
  long bits = 64;
  {
    Rat p = prec;
    while (p < 1) {
      p *= 2;
      bits++;
    }
  }
  Interval z = dedekind_zeta(k, n + 1, prec / 8);
  GConstant out;
  out.method = GConstant::Method::General;
  out.finite = finite;
  out.volume.mode = VolumeResult::Mode::ClosedForm;
  out.volume.value = Interval(Rat(1));
  out.value = (finite.eval(bits + 16) / z).round_out(bits);
  return out;
}

VolumeResult gauge_cell_volume(const LipschitzSystem& sys, const ExtensionPtr& ext,
                               const Rat& prec, long mc_samples, uint64_t mc_seed) {
  const OrderPtr& k = ext->base();
  const OrderPtr& K = ext->top();
  long n = sys.dim();
  if (sys.variant() == LipschitzSystem::Variant::Theta ||
      sys.variant() == LipschitzSystem::Variant::MaxNorm) {
    // V' = (2^r pi^s)^(n+1) V(theta): reuse the normalized machinery
    Elem th = sys.variant() == LipschitzSystem::Variant::Theta ? sys.theta_value() : Elem::one(K);
    VolumeResult v = archimedean_volume(th, ext, n, prec, mc_samples, mc_seed);
    Interval pi = int_pi(96);
    Interval norm = (Interval(pow_rat_int(Rat(2), k->real_places())) *
                     pi.power(k->complex_places()))
                        .power(n + 1);
    VolumeResult out = v;
    out.value = (v.value * norm).round_out(64);
    out.exact = PowerSum();
    return out;
  }
  // Monte Carlo on the product-of-gauges region per base place
  long rel = ext->relative_degree();
  VolumeResult out;
  out.mode = VolumeResult::Mode::MonteCarlo;
  out.rigorous = false;
  out.mc_samples = mc_samples;
  out.mc_seed = mc_seed;
  Rng rng(mc_seed);
  Interval total(Rat(1));
  Rat w = rat(1, Int(1) << 40);
  // box: max|z| <= c_inf-style bound from the inverse rows
  Interval cinf = sys.c_inf(48);
  double half = cinf.hi.get_d() * 1.0000001;
  for (long v = 0; v < k->num_places(); v++) {
    auto over = ext->places_over(v);
    long dv = k->place(v).local_degree();
    long dim = dv * (n + 1);
    // embed the form coefficients at each top place over v
    struct WData {
      std::vector<std::vector<std::pair<double, double>>> coeffs;  // per row, per column
      long dw;
    };
    std::vector<WData> wdata;
    for (long wp : over) {
      WData wd;
      wd.dw = K->place(wp).local_degree();
      for (auto& r : sys.rows()) {
        std::vector<std::pair<double, double>> row;
        for (auto& x : r) {
          if (x.is_zero()) {
            row.push_back({0.0, 0.0});
          } else {
            CBox b = K->embedding_box(x.c, wp, w);
            row.push_back({b.re.mid().get_d(), b.im.mid().get_d()});
          }
        }
        wd.coeffs.push_back(row);
      }
      wdata.push_back(wd);
    }
    double boxvol = 1;
    for (long i = 0; i < dim; i++) boxvol *= 2.0 * half;
    long hits = 0;
    std::vector<double> z(dim);
    for (long samp = 0; samp < mc_samples; samp++) {
      for (long i = 0; i < dim; i++) z[i] = (2 * rng.uniform() - 1) * half;
      double logsum = 0;
      for (auto& wd : wdata) {
        double m = 0;
        for (auto& row : wd.coeffs) {
          double re = 0, im = 0;
          for (long j = 0; j <= n; j++) {
            double zr = dv == 1 ? z[j] : z[2 * j];
            double zi = dv == 1 ? 0.0 : z[2 * j + 1];
            re += row[j].first * zr - row[j].second * zi;
            im += row[j].first * zi + row[j].second * zr;
          }
          m = std::max(m, std::sqrt(re * re + im * im));
        }
        logsum += double(wd.dw) / double(dv * rel) * std::log(std::max(m, 1e-300));
      }
      if (logsum < 0) hits++;
    }
    double phat = double(hits) / double(mc_samples);
    double sigma = boxvol * std::sqrt(std::max(phat * (1 - phat), 1e-12) / double(mc_samples));
    double mean = boxvol * phat;
    Rat lo = rat_from_string(std::to_string(mean - 3 * sigma));
    Rat hi = rat_from_string(std::to_string(mean + 3 * sigma));
    total = total * Interval(std::min(lo, hi), std::max(lo, hi));
  }
  out.value = total.round_out(48);
  return out;
}

Interval counting_coefficient(const LipschitzSystem& sys, const ExtensionPtr& ext,
                              const GeneralConfig& cfg, const Rat& prec, long mc_samples,
                              uint64_t mc_seed) {
  const OrderPtr& k = ext->base();
  if (!k->invariants().regulator_known) fail(Errc::BadFixture, "regulator required");
  GConstant g = general_constant(sys, ext, cfg, prec);
  VolumeResult vol = gauge_cell_volume(sys, ext, prec, mc_samples, mc_seed);
  Interval reg(k->invariants().regulator - k->invariants().regulator_prec,
               k->invariants().regulator + k->invariants().regulator_prec);
  long n = sys.dim();
  Rat npow = pow_rat_int(Rat(n + 1), k->real_places() + k->complex_places() - 1);
  Rat winv = rat(1, Int(k->invariants().roots_of_unity));
  return (g.value * vol.value * reg * npow * winv).round_out(64);
}

}  // namespace hc
