#include "powerprod.hpp"

#include <sstream>

namespace hc {

void PowerProduct::prune() {
  for (auto it = exps_.begin(); it != exps_.end();) {
    if (it->second == 0)
      it = exps_.erase(it);
    else
      ++it;
  }
}

PowerProduct PowerProduct::from_rational(const Rat& r, long trial_bound) {
  if (r == 0) fail(Errc::ZeroElement, "PowerProduct of zero");
  PowerProduct out;
  out.sign_ = r > 0 ? 1 : -1;
  Rat a = r > 0 ? r : Rat(-r);
  for (auto& [p, e] : factor_rational(a, trial_bound)) out.exps_[p] = Rat(e);
  out.prune();
  return out;
}

PowerProduct PowerProduct::prime_power(const Int& p, const Rat& e) {
  PowerProduct out;
  if (e != 0) out.exps_[p] = e;
  return out;
}

bool PowerProduct::is_rational() const {
  for (auto& [p, e] : exps_)
    if (den(e) != 1) return false;
  return true;
}

Rat PowerProduct::to_rational() const {
  Rat v = sign_;
  for (auto& [p, e] : exps_) v *= pow_rat_int(Rat(p), num(e).get_si());
  return v;
}

PowerProduct PowerProduct::operator*(const PowerProduct& o) const {
  PowerProduct out;
  out.sign_ = sign_ * o.sign_;
  out.exps_ = exps_;
  for (auto& [p, e] : o.exps_) out.exps_[p] += e;
  out.prune();
  return out;
}

PowerProduct PowerProduct::inv() const {
  PowerProduct out;
  out.sign_ = sign_;
  for (auto& [p, e] : exps_) out.exps_[p] = -e;
  return out;
}

PowerProduct PowerProduct::operator/(const PowerProduct& o) const { return *this * o.inv(); }

PowerProduct PowerProduct::pow(const Rat& e) const {
  PowerProduct out;
  if (sign_ < 0) {
    if (den(e) != 1) fail(Errc::UnsupportedShape, "fractional power of negative value");
    out.sign_ = mpz_odd_p(num(e).get_mpz_t()) ? -1 : 1;
  }
  for (auto& [p, ex] : exps_) {
    Rat ne = ex * e;
    if (ne != 0) out.exps_[p] = ne;
  }
  return out;
}

int PowerProduct::cmp(const Rat& r) const {
  if (sign_ < 0 || r <= 0) {
    // settle by sign when possible, else compare |value| after flipping
    if (sign_ < 0 && r >= 0) return -1;
    if (sign_ > 0 && r <= 0) return 1;
    // both negative: compare magnitudes reversed
    PowerProduct a = *this;
    a.sign_ = 1;
    return -a.cmp(-r);
  }
  Int l = 1;
  for (auto& [p, e] : exps_) l = l * den(e) / gcd(l, den(e));
  // value^l is rational; compare against r^l
  Rat vl = 1;
  for (auto& [p, e] : exps_) {
    Rat el = e * l;
    vl *= pow_rat_int(Rat(p), num(el).get_si());
  }
  Rat rl = pow_rat_int(r, l.get_si());
  if (vl < rl) return -1;
  if (vl > rl) return 1;
  return 0;
}

Interval PowerProduct::eval(long bits) const {
  Interval v(Rat(1));
  for (auto& [p, e] : exps_) v = v * int_pow(Interval(Rat(p)), e, bits + 16);
  if (sign_ < 0) v = -v;
  return v.round_out(bits);
}

std::string PowerProduct::str() const {
  std::ostringstream os;
  if (sign_ < 0) os << "-";
  if (exps_.empty()) {
    os << "1";
    return os.str();
  }
  bool first = true;
  for (auto& [p, e] : exps_) {
    if (!first) os << "*";
    first = false;
    os << p.get_str() << "^(" << rat_to_string(e) << ")";
  }
  return os.str();
}

void PowerSum::add_term(const Rat& coeff, const Key& key) {
  if (coeff == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_[key] = coeff;
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

PowerSum& PowerSum::operator+=(const PowerProduct& p) {
  // split each exponent into integer part (folded into the coefficient) and
  // fractional part in (0,1) (kept in the monomial key)
  Rat coeff = p.sign();
  Key key;
  for (auto& [q, e] : p.exponents()) {
    Int ip = floor_rat(e);
    Rat frac = e - Rat(ip);
    coeff *= pow_rat_int(Rat(q), ip.get_si());
    if (frac != 0) key.emplace_back(q, frac);
  }
  add_term(coeff, key);
  return *this;
}

PowerSum& PowerSum::operator+=(const PowerSum& o) {
  for (auto& [k, c] : o.terms_) add_term(c, k);
  return *this;
}

PowerSum PowerSum::operator+(const PowerSum& o) const {
  PowerSum out = *this;
  out += o;
  return out;
}

PowerSum PowerSum::operator-(const PowerSum& o) const {
  PowerSum out = *this;
  for (auto& [k, c] : o.terms_) out.add_term(-c, k);
  return out;
}

PowerSum PowerSum::operator*(const Rat& r) const {
  PowerSum out;
  if (r == 0) return out;
  for (auto& [k, c] : terms_) out.terms_[k] = c * r;
  return out;
}

PowerSum& PowerSum::operator*=(const Rat& r) {
  *this = *this * r;
  return *this;
}

PowerSum PowerSum::operator*(const PowerSum& o) const {
  PowerSum out;
  for (auto& [k1, c1] : terms_) {
    for (auto& [k2, c2] : o.terms_) {
      // merge exponent vectors, renormalizing fractional parts
      Rat coeff = c1 * c2;
      std::map<Int, Rat> merged;
      for (auto& [p, e] : k1) merged[p] += e;
      for (auto& [p, e] : k2) merged[p] += e;
      Key key;
      for (auto& [p, e] : merged) {
        Int ip = floor_rat(e);
        Rat frac = e - Rat(ip);
        coeff *= pow_rat_int(Rat(p), ip.get_si());
        if (frac != 0) key.emplace_back(p, frac);
      }
      out.add_term(coeff, key);
    }
  }
  return out;
}

bool PowerSum::is_rational() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first.empty();
}

Rat PowerSum::to_rational() const {
  if (terms_.empty()) return Rat(0);
  if (!is_rational()) fail(Errc::UnsupportedShape, "PowerSum is irrational");
  return terms_.begin()->second;
}

Interval PowerSum::eval(long bits) const {
  Interval v(Rat(0));
  for (auto& [k, c] : terms_) {
    Interval m(Rat(1));
    for (auto& [p, e] : k) m = m * int_pow(Interval(Rat(p)), e, bits + 16);
    v = v + m * c;
  }
  return v.round_out(bits);
}

std::string PowerSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rat_to_string(c);
    for (auto& [p, e] : k) os << "*" << p.get_str() << "^(" << rat_to_string(e) << ")";
  }
  return os.str();
}

}  // namespace hc
