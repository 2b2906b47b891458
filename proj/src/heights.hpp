#pragma once

#include "fixtures.hpp"
#include "lattice.hpp"
#include "powerprod.hpp"

namespace hc {

// A family of local gauge functions on K^(n+1), one per place, each of the
// shape max over generator forms. The three supported variants:
//   Theta:       max{|z_0|, |theta z_1|, ..., |theta z_n|}
//   LinearForms: max_i |L_i(z)| for m >= n+1 forms of full column rank
//   MaxNorm:     max_i |z_i|
class LipschitzSystem {
 public:
  enum class Variant { Theta, LinearForms, MaxNorm };

  static LipschitzSystem theta(const OrderPtr& K, long n, Elem theta_value);
  static LipschitzSystem linear_forms(const OrderPtr& K, long n,
                                      std::vector<std::vector<Elem>> rows);
  static LipschitzSystem max_norm(const OrderPtr& K, long n);

  const OrderPtr& field() const { return field_; }
  long dim() const { return n_; }
  Variant variant() const { return variant_; }
  const Elem& theta_value() const { return theta_; }

  // generator forms as rows over K; the local gauge at every place is the max
  // of their absolute values
  const std::vector<std::vector<Elem>>& rows() const { return rows_; }
  // generator values at a tuple over K
  std::vector<Elem> generators(const std::vector<Elem>& omega) const;

  // the ideal i(omega) with |i(omega)|_w = N_w(sigma_w omega) at finite places
  Ideal gauge_ideal(const std::vector<Elem>& omega) const;
  // omega_0 O + ... + omega_n O
  Ideal coordinate_ideal(const std::vector<Elem>& omega) const;

  // finite-place defect data: for every prime with c_w != 1 the exponent a
  // with c_w = N(P)^(-a/d_w)
  struct FiniteDefect {
    PrimeIdeal prime;
    long bound;  // a >= 1
  };
  const std::vector<FiniteDefect>& finite_defects() const { return defects_; }
  PowerProduct c_fin() const;          // prod c_w^(-d_w/[K:Q])
  Interval c_inf(long bits) const;     // max over infinite places of 1/c_w
  std::vector<Ideal> gauge_ideal_classes() const;  // the finite set F

 private:
  OrderPtr field_;
  long n_ = 1;
  Variant variant_ = Variant::MaxNorm;
  Elem theta_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<FiniteDefect> defects_;
  void compute_defects();
};

// Value of a height raised to the power [K:Q]: exact rational finite part
// times an Archimedean factor. The square of the Archimedean factor is kept
// exactly whenever each winning local maximum has a rational square (always
// the case over Q and over CM fields with rational |.|^2), so boundary
// comparisons stay exact.
struct HeightPow {
  long deg = 1;        // [K:Q]
  Rat finite;          // product over finite places, exact
  bool arch2_exact = false;
  Rat arch2;           // exact square of the Archimedean factor, when known
  Interval arch;       // enclosure of the Archimedean factor
  Interval total(long bits = 96) const;     // finite * arch
  Interval height(long bits = 96) const;    // the height itself
  // three-way comparison of the height against x > 0; 0 only on an exact tie
  // or at the refinement cap (never for exact values)
  int cmp_height(const Rat& x) const;
};

// H^[K:Q] for the height with local gauges max over the given generators
// (weil heights and Lipschitz heights are both instances)
HeightPow height_pow_from_generators(const std::vector<Elem>& gens);

// three-way comparison of the generator height (or its square) against a
// rational: -1/0/+1 exactly on the exact path, refining otherwise; returns 2
// if the interval route cannot decide below the bit cap
int height_cmp(const std::vector<Elem>& gens, const Rat& x, bool squared = false,
               long cap_bits = 2048);

// affine Weil height of a tuple over K: generators {1, omega_1, ..., omega_n}
HeightPow weil_height_pow_affine(const std::vector<Elem>& omega);
// projective Weil height: generators = omega itself
HeightPow weil_height_pow_projective(const std::vector<Elem>& omega);
// H_N^[K:Q] of a projective tuple for a Lipschitz system
HeightPow lipschitz_height_pow(const LipschitzSystem& sys, const std::vector<Elem>& omega);

// |a|_P as an exact power product N(P)^(-v_P(a)/d_P)
PowerProduct finite_abs(const Elem& a, const PrimeIdeal& p);

// H(a/b) = max(|a|, b) for coprime integers: the elementary oracle used to
// cross-check the place-by-place machinery over Q
Rat rational_height(const Rat& x);

}  // namespace hc
