#pragma once

#include "constants.hpp"

namespace hc {

struct CountResult {
  Rat x;
  long count = 0;
  long undecided = 0;
  Interval predicted;  // leading main term at this x
  Interval ratio;      // count / predicted
};

// {0} union {+-a/b : gcd(a,b)=1, max(a,b) <= bound}
std::vector<Rat> enumerate_rationals(const Rat& bound);

// every alpha in k with H(alpha) <= bound; k is Q or a class-number-one
// imaginary quadratic fixture
std::vector<Elem> enumerate_field(const OrderPtr& k, const Rat& bound);

// counts alpha in k^n with H(theta alpha_1, ..., theta alpha_n) <= x
CountResult count_theta(const Elem& theta_top, const ExtensionPtr& ext, long n, const Rat& x,
                        long budget = 40000000, bool with_prediction = true);

// counts projective points of P^n(base) with gauge height <= x
CountResult count_lipschitz(const LipschitzSystem& sys, const ExtensionPtr& ext, const Rat& x,
                            long budget = 40000000, bool with_prediction = false,
                            long mc_samples = 1000000, uint64_t mc_seed = 1);

struct InertPrimes {
  OrderPtr field;
  long bound = 0;
  std::vector<long> primes;
};
InertPrimes inert_primes(const OrderPtr& k, long bound);

// N(sqrt(P) k, X) = 1 + sum over inert p <= X^2 of #{alpha in k*: H(sqrt p alpha) <= X}
struct SqrtPResult {
  CountResult total;
  std::vector<std::pair<long, long>> per_prime;  // (p, inner count)
};
SqrtPResult count_sqrtp(const OrderPtr& k, const Rat& x, long budget = 40000000);

// sum over inert primes of 2 p^(d/2)/(p^d + 1), degree > 2, with a rigorous
// tail enclosure from the prime bound
Interval thm14_coefficient(const OrderPtr& k, long prime_bound);

// #{beta in gamma (Q*)^2 : H(beta) <= x} via the half-count identity
long square_class_count(const Rat& gamma, const Rat& x, long budget = 40000000);

// upper bounds every produced N(theta k, X)-shaped count must respect
bool respects_counting_caps(long count, long degree, const Rat& x);

}  // namespace hc
