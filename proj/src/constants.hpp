#pragma once

#include "heights.hpp"

namespace hc {

// zeta(s) for integer s >= 2: partial sum plus a convexity-sandwich tail,
// rigorous to the requested absolute precision
Interval riemann_zeta_int(long s, const Rat& prec);
// L(s, chi_D) for the quadratic character of discriminant D, via partial sums
// with an Abel-summation tail bound
Interval dirichlet_L_quadratic(long disc, long s, const Rat& prec);
// Dedekind zeta: sharp path for Q and quadratic fields (character
// factorization), Euler-product path with a zeta-comparison tail otherwise
Interval dedekind_zeta(const OrderPtr& k, long s, const Rat& prec);
// the generic Euler-product enclosure (exposed for cross-checks): product of
// local factors over p <= p0, tail in [1, (zeta(s) prod (1-p^-s))^degree]
Interval dedekind_zeta_euler(const OrderPtr& k, long s, long p0);

Interval schanuel_constant(const OrderPtr& k, long n, const Rat& prec);

// q(D, B) = N_K(D + up B)^((n+1)/[K:k]) / N_k(B), exact
PowerProduct q_factor(const Ideal& d_top, const Ideal& b_base, long n, const ExtensionPtr& ext);

// local factor at a prime P of the base:
// (NP-1)/(NP^(n+1)-1) (1 + (NP^n - 1) sum_j q(D, P^j))
PowerSum local_factor(const Ideal& d_top, const PrimeIdeal& p, long n, const ExtensionPtr& ext);

struct VolumeResult {
  enum class Mode { ClosedForm, Exact2d, MonteCarlo };
  Mode mode = Mode::ClosedForm;
  Interval value;              // rigorous for ClosedForm/Exact2d; mean +- 3 sigma for MC
  bool rigorous = true;
  PowerSum exact;              // set for ClosedForm
  long mc_samples = 0;
  uint64_t mc_seed = 0;
};

// V(theta, k, n): the normalized product of Archimedean cell volumes.
// ClosedForm when |theta|_w is constant over each base place (value
// |N_K theta|^(-n/[K:k])); Exact2d for the two-real-values case over Q with
// n = 1; Monte Carlo otherwise.
VolumeResult archimedean_volume(const Elem& theta_top, const ExtensionPtr& ext, long n,
                                const Rat& prec, long mc_samples = 2000000,
                                uint64_t mc_seed = 1);

// groups the places of theta's field by exact equality of |sigma_w(theta)|
std::vector<long> abs_value_groups(const Elem& theta_top);

struct GConstant {
  enum class Method { Sum, Product, Both, General };
  Method method = Method::Sum;
  PowerSum finite;     // exact finite part (the divisor sum over N(alpha)^n, or
                       // the general numerator including the disc power)
  VolumeResult volume;
  Interval value;
};

GConstant g_theta(const Elem& theta_top, const ExtensionPtr& ext, long n,
                  GConstant::Method method, const Rat& prec, long mc_samples = 2000000,
                  uint64_t mc_seed = 1);

// equality test of the sharp upper bound: true iff theta O_K = up down theta O_K
// (after clearing denominators) and |theta|_w is constant over each
// Archimedean place of the base
bool sharpness_predicate(const Elem& theta_top, const ExtensionPtr& ext);

struct XiValue {
  bool vanishes = false;
  Rat times_zeta = 0;  // exact value of xi * zeta_k(n+1)
  Interval value;
};
// xi = sum_E mu(E) / (N(J cap E) N(J1 cap E)^n) for J1 | J
XiValue xi_sum(const Ideal& j, const Ideal& j1, long n, const Rat& prec);
// truncated series with a rigorous tail bound, for cross-validation
Interval xi_series(const Ideal& j, const Ideal& j1, long n, long norm_bound, Rat* tail_bound);

struct GeneralConfig {
  std::vector<Ideal> class_reps;            // integral representatives, base field
  std::vector<std::vector<Ideal>> s_sets;   // per rep: candidate gauge ideals (top field)
  std::vector<Ideal> t_set;                 // top-field ideals containing every T_{C,D}
};

// the built-in choices: S_C = up C * (gauge ideal classes), T = squarefree
// divisors of the integral parts of up C * F * D^-1 (plus the divisors of
// theta O for theta systems)
GeneralConfig default_config(const LipschitzSystem& sys, const ExtensionPtr& ext);
// validates a config by sampling tuples and checking i(omega) membership
void validate_config(const LipschitzSystem& sys, const ExtensionPtr& ext,
                     const GeneralConfig& cfg, long samples, uint64_t seed);

// the exact inner sum: (sum_E mu(E)/det Lambda(B, C E)) * zeta_k(n+1) * the
// discriminant power, i.e. zeta * det-normalized series; rational because the
// index of Lambda(B, CE) in Lambda(B, C) is multiplicative in E
Rat inner_sum_times_zeta(const LipschitzSystem& sys, const ExtensionPtr& ext, const Ideal& b_top,
                         const Ideal& c_base);
// truncated direct series over ideals E of norm <= bound (cross-validation)
Interval inner_sum_series(const LipschitzSystem& sys, const ExtensionPtr& ext, const Ideal& b_top,
                          const Ideal& c_base, long norm_bound, Rat* tail_bound);

GConstant general_constant(const LipschitzSystem& sys, const ExtensionPtr& ext,
                           const GeneralConfig& cfg, const Rat& prec);

// omega_k^-1 (n+1)^(r+s-1) R_k V' g^N, the full leading coefficient; V' is
// the product of the per-place gauge cell volumes (not normalized by 2^r pi^s)
Interval counting_coefficient(const LipschitzSystem& sys, const ExtensionPtr& ext,
                              const GeneralConfig& cfg, const Rat& prec, long mc_samples,
                              uint64_t mc_seed);
// V' alone (Monte Carlo for general systems; exact routes for theta systems)
VolumeResult gauge_cell_volume(const LipschitzSystem& sys, const ExtensionPtr& ext,
                               const Rat& prec, long mc_samples, uint64_t mc_seed);

}  // namespace hc
