#pragma once

#include "interval.hpp"
#include "util.hpp"

#include <map>
#include <vector>

namespace hc {

// Exact value of the form sign * prod p^(e_p) with p prime and e_p rational.
// The rational coefficient of a general monomial is carried by the integer
// parts of the exponents, so equality and comparison stay exact.
class PowerProduct {
 public:
  PowerProduct() : sign_(1) {}  // value 1

  static PowerProduct one() { return PowerProduct(); }
  static PowerProduct from_rational(const Rat& r, long trial_bound = 1000000);
  static PowerProduct prime_power(const Int& p, const Rat& e);

  int sign() const { return sign_; }
  const std::map<Int, Rat>& exponents() const { return exps_; }

  bool is_one() const { return sign_ == 1 && exps_.empty(); }
  bool is_rational() const;
  Rat to_rational() const;  // requires is_rational()

  PowerProduct operator*(const PowerProduct& o) const;
  PowerProduct operator/(const PowerProduct& o) const;
  PowerProduct inv() const;
  PowerProduct pow(const Rat& e) const;  // requires positive value unless e integral

  bool operator==(const PowerProduct& o) const { return sign_ == o.sign_ && exps_ == o.exps_; }

  // exact three-way comparison with a rational; requires positive value or integral exponents
  int cmp(const Rat& r) const;

  Interval eval(long bits) const;
  std::string str() const;

 private:
  int sign_;
  std::map<Int, Rat> exps_;
  void prune();
};

// Finite Q-linear combination of radical monomials prod p^(e_p) with
// e_p in (0,1). Distinct monomials are linearly independent over Q, so map
// equality decides exact equality of values.
class PowerSum {
 public:
  PowerSum() = default;
  PowerSum(const Rat& r) { add_term(r, {}); }
  PowerSum(const PowerProduct& p) { *this += p; }

  static PowerSum zero() { return PowerSum(); }

  PowerSum& operator+=(const PowerSum& o);
  PowerSum& operator+=(const PowerProduct& p);
  PowerSum operator+(const PowerSum& o) const;
  PowerSum operator-(const PowerSum& o) const;
  PowerSum operator*(const PowerSum& o) const;
  PowerSum operator*(const Rat& r) const;
  PowerSum& operator*=(const Rat& r);

  bool operator==(const PowerSum& o) const { return terms_ == o.terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  Rat to_rational() const;

  Interval eval(long bits) const;
  std::string str() const;

  using Key = std::vector<std::pair<Int, Rat>>;
  const std::map<Key, Rat>& terms() const { return terms_; }

 private:
  std::map<Key, Rat> terms_;
  void add_term(const Rat& coeff, const Key& key);
  friend PowerSum mul_terms(const PowerSum&, const PowerSum&);
};

}  // namespace hc
