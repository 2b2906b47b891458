#pragma once

#include "nf.hpp"

#include <optional>

namespace hc {

// Fractional ideal in canonical HNF-with-denominator form. `num` rows are a
// Z-basis of den*I in integral-basis coordinates; rows in Hermite normal form
// with gcd(content(num), den) = 1. Equal ideals have identical (num, den).
class Ideal {
 public:
  Ideal() = default;

  static Ideal whole(const OrderPtr& o);  // the order itself
  static Ideal principal(const Elem& a);
  static Ideal from_generators(const std::vector<Elem>& gens);
  static Ideal from_rows(const OrderPtr& o, const QMat& rows);  // module closure NOT checked
  static Ideal rational(const OrderPtr& o, const Rat& r);

  const OrderPtr& order() const { return order_; }
  const ZMat& numer() const { return num_; }
  const Int& denom() const { return den_; }
  bool is_integral() const { return den_ == 1; }
  bool is_whole() const;

  Rat norm() const;
  Elem basis_elem(long i) const;
  bool contains(const Elem& x) const;
  bool contains(const Ideal& b) const;  // b subseteq this
  bool divides(const Ideal& b) const { return contains(b); }

  Ideal operator+(const Ideal& b) const;  // ideal gcd
  Ideal operator*(const Ideal& b) const;
  Ideal intersect(const Ideal& b) const;  // ideal lcm for coprime integral ideals
  Ideal inverse() const;
  Ideal operator/(const Ideal& b) const { return *this * b.inverse(); }
  Ideal pow(long e) const;
  Ideal scale(const Rat& r) const;  // r * I

  bool operator==(const Ideal& b) const;
  bool operator!=(const Ideal& b) const { return !(*this == b); }
  bool operator<(const Ideal& b) const;  // deterministic order: (norm, den, num lex)

  // verifies closure under multiplication by every basis element
  bool is_module() const;

  std::string str() const;

 private:
  OrderPtr order_;
  ZMat num_;
  Int den_ = 1;
  QMat num_inv_;  // cached inverse of num as a rational matrix

  void canonicalize();
  friend class IdealFactory;
};

struct PrimeIdeal {
  Int under_p;
  Ideal ideal;  // integral
  long ram_e = 1;
  long res_f = 1;
  Rat norm() const { return pow_rat_int(Rat(under_p), res_f); }
};

// primes above p, deterministic order; uses min-poly splitting when p does not
// divide the index, fixture overrides otherwise
std::vector<PrimeIdeal> factor_rational_prime(const OrderPtr& o, const Int& p);

// certificate that an integral ideal containing pO is maximal: O/q must be a
// finite field of degree expected_f over F_p
bool quotient_is_field(const Ideal& q, const Int& p, long expected_f);

long valuation(const Ideal& a, const PrimeIdeal& p);
long valuation_elem(const Elem& x, const PrimeIdeal& p);

struct IdealFactorization {
  std::vector<std::pair<PrimeIdeal, long>> factors;  // exponents nonzero
  Ideal reassemble(const OrderPtr& o) const;
};

IdealFactorization factor_ideal(const Ideal& a);

int moebius_ideal(const Ideal& a);                 // 0 / +-1; a integral
std::vector<Ideal> divisors(const Ideal& a);       // all divisors of integral a, sorted
// the part of d lying over the rational prime p (product over primes above p)
Ideal part_over(const Ideal& d, const Int& p);

Ideal extend_up(const Ideal& b, const ExtensionPtr& ext);     // b O_top
Ideal contract_down(const Ideal& a, const ExtensionPtr& ext); // a cap base

// enumerate integral ideals of norm <= bound (all, or squarefree only),
// deterministic order; requires all primes <= bound to be factorable
std::vector<Ideal> ideals_up_to_norm(const OrderPtr& o, long bound, bool squarefree_only);

}  // namespace hc
