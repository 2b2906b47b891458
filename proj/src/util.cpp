#include "util.hpp"

#include <algorithm>
#include <cstring>

namespace hc {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ClosureError: return "ClosureError";
    case Errc::DiscMismatch: return "DiscMismatch";
    case Errc::ReducibleMinPoly: return "ReducibleMinPoly";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::PrecisionUnreachable: return "PrecisionUnreachable";
    case Errc::ZeroIdeal: return "ZeroIdeal";
    case Errc::IndexDivisorNoFixture: return "IndexDivisorNoFixture";
    case Errc::FactorizationUnavailable: return "FactorizationUnavailable";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::ZeroTuple: return "ZeroTuple";
    case Errc::ZeroTheta: return "ZeroTheta";
    case Errc::UndecidableComparison: return "UndecidableComparison";
    case Errc::UndecidableMembership: return "UndecidableMembership";
    case Errc::UnsupportedVariant: return "UnsupportedVariant";
    case Errc::UnsupportedShape: return "UnsupportedShape";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::RankCap: return "RankCap";
    case Errc::SingularBasis: return "SingularBasis";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::BadFixture: return "BadFixture";
  }
  return "UnknownError";
}

Rat rat_from_string(const std::string& s) {
  auto dec = [](const std::string& t) { return Int(t, 10); };
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int n = dec(s.substr(0, slash));
    Int d = dec(s.substr(slash + 1));
    if (d == 0) fail(Errc::DivisionByZero, "rational with zero denominator: " + s);
    return rat(n, d);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac = s.size() - dot - 1;
    return rat(dec(digits), pow_int(10, frac));
  }
  return Rat(dec(s));
}

std::string rat_to_string(const Rat& r) {
  if (den(r) == 1) return num(r).get_str();
  return num(r).get_str() + "/" + den(r).get_str();
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor_rat(const Rat& r) { return floor_div(num(r), den(r)); }
Int ceil_rat(const Rat& r) { return ceil_div(num(r), den(r)); }

Int round_rat(const Rat& r) { return floor_rat(r + rat(1, 2)); }

Int isqrt(const Int& n) {
  if (n < 0) fail(Errc::UnsupportedShape, "isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int iroot(const Int& n, unsigned long k) {
  if (n < 0) fail(Errc::UnsupportedShape, "iroot of negative");
  Int r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

bool is_perfect_square(const Int& n, Int* root) {
  if (n < 0) return false;
  Int r = isqrt(n);
  if (r * r == n) {
    if (root) *root = r;
    return true;
  }
  return false;
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat pow_rat_int(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (e < 0) {
    if (base == 0) fail(Errc::DivisionByZero, "0 to negative power");
    return rat(pow_int(den(base), (unsigned long)(-e)), pow_int(num(base), (unsigned long)(-e)));
  }
  return rat(pow_int(num(base), (unsigned long)e), pow_int(den(base), (unsigned long)e));
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<long> primes_upto(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<bool> comp(bound + 1, false);
  for (long i = 2; i <= bound; i++) {
    if (!comp[i]) {
      out.push_back(i);
      for (long j = i * 2; j <= bound; j += i) comp[j] = true;
    }
  }
  return out;
}

std::map<Int, unsigned long> factor_integer(const Int& n, long trial_bound) {
  if (n <= 0) fail(Errc::FactorizationUnavailable, "factor_integer needs a positive integer");
  std::map<Int, unsigned long> out;
  Int m = n;
  for (long p = 2; p <= trial_bound && m > 1; p += (p == 2 ? 1 : 2)) {
    if (Int(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      out[Int(p)]++;
      m /= p;
    }
  }
  if (m > 1) {
    if (!is_prime(m))
      fail(Errc::FactorizationUnavailable, "composite cofactor beyond trial bound: " + m.get_str());
    out[m]++;
  }
  return out;
}

std::map<Int, long> factor_rational(const Rat& r, long trial_bound) {
  if (r <= 0) fail(Errc::FactorizationUnavailable, "factor_rational needs a positive rational");
  std::map<Int, long> out;
  for (auto& [p, e] : factor_integer(num(r), trial_bound)) out[p] += (long)e;
  for (auto& [p, e] : factor_integer(den(r), trial_bound)) out[p] -= (long)e;
  return out;
}

long kronecker_symbol(const Int& a, const Int& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

static uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(uint64_t seed) {
  uint64_t x = seed;
  for (int i = 0; i < 4; i++) s_[i] = splitmix64(x);
}

static inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

uint64_t Rng::next() {
  uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

uint64_t Rng::below(uint64_t n) {
  // rejection sampling keeps the distribution exact
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % n;
}

double Rng::uniform() { return (next() >> 11) * 0x1.0p-53; }

long Rng::range(long lo, long hi) { return lo + (long)below((uint64_t)(hi - lo + 1)); }

}  // namespace hc
