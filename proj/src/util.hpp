#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hc {

using Int = mpz_class;
using Rat = mpq_class;

// Machine-readable error codes; the CLI maps these to exit codes.
enum class Errc {
  ClosureError,
  DiscMismatch,
  ReducibleMinPoly,
  DivisionByZero,
  OrderMismatch,
  PrecisionUnreachable,
  ZeroIdeal,
  IndexDivisorNoFixture,
  FactorizationUnavailable,
  ZeroElement,
  ZeroTuple,
  ZeroTheta,
  UndecidableComparison,
  UndecidableMembership,
  UnsupportedVariant,
  UnsupportedShape,
  UnsupportedField,
  ConfigInvalid,
  RankCap,
  SingularBasis,
  BudgetExceeded,
  BadFixture,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline Rat rat(const Int& n, const Int& d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}
inline Rat rat(long n, long d) { return rat(Int(n), Int(d)); }

Rat rat_from_string(const std::string& s);   // accepts "p", "p/q", and plain decimals like "1.25"
std::string rat_to_string(const Rat& r);

inline Int num(const Rat& r) { return r.get_num(); }
inline Int den(const Rat& r) { return r.get_den(); }

Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);
Int round_rat(const Rat& r);  // nearest, ties toward +infinity

// floor(sqrt(n)), n >= 0
Int isqrt(const Int& n);
// floor(n^(1/k)), n >= 0, k >= 1
Int iroot(const Int& n, unsigned long k);
bool is_perfect_square(const Int& n, Int* root = nullptr);

Int pow_int(const Int& base, unsigned long e);
Rat pow_rat_int(const Rat& base, long e);

bool is_prime(const Int& n);
// primes <= bound, ascending
std::vector<long> primes_upto(long bound);

// Factors a positive integer by trial division (then primality test on the
// remainder, recursing on found factors). Throws FactorizationUnavailable if a
// composite part resists the trial bound.
std::map<Int, unsigned long> factor_integer(const Int& n, long trial_bound = 1000000);

// Factorization of a positive rational: exponents may be negative.
std::map<Int, long> factor_rational(const Rat& r, long trial_bound = 1000000);

long kronecker_symbol(const Int& a, const Int& n);

// xoshiro256++; deterministic seeding, used for every randomized computation.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  uint64_t next();
  // uniform in [0, n)
  uint64_t below(uint64_t n);
  // uniform double in [0, 1)
  double uniform();
  // uniform in [lo, hi] inclusive
  long range(long lo, long hi);

 private:
  uint64_t s_[4];
};

}  // namespace hc
