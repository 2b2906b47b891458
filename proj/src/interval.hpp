#pragma once

#include "util.hpp"

namespace hc {

// Closed interval [lo, hi] with rational endpoints. All arithmetic is
// outward-rounded in the sense that the result contains every exact value;
// +,-,*,/ on rationals are exact, so rounding enters only through round_out
// (used to cap endpoint size) and through the transcendental enclosures.
struct Interval {
  Rat lo, hi;

  Interval() : lo(0), hi(0) {}
  explicit Interval(const Rat& x) : lo(x), hi(x) {}
  Interval(Rat l, Rat h);
  static Interval of(long x) { return Interval(Rat(x)); }

  bool is_point() const { return lo == hi; }
  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool overlaps(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }

  // truth only when the whole interval satisfies the comparison
  bool surely_lt(const Rat& x) const { return hi < x; }
  bool surely_le(const Rat& x) const { return hi <= x; }
  bool surely_gt(const Rat& x) const { return lo > x; }
  bool surely_ge(const Rat& x) const { return lo >= x; }
  bool surely_lt(const Interval& o) const { return hi < o.lo; }
  bool surely_gt(const Interval& o) const { return lo > o.hi; }

  Interval operator-() const { return Interval(-hi, -lo); }
  Interval operator+(const Interval& o) const { return Interval(lo + o.lo, hi + o.hi); }
  Interval operator-(const Interval& o) const { return Interval(lo - o.hi, hi - o.lo); }
  Interval operator*(const Interval& o) const;
  Interval operator/(const Interval& o) const;  // o must not contain zero
  Interval operator+(const Rat& x) const { return Interval(lo + x, hi + x); }
  Interval operator-(const Rat& x) const { return Interval(lo - x, hi - x); }
  Interval operator*(const Rat& x) const;
  Interval operator/(const Rat& x) const;

  Interval abs() const;
  Interval square() const;
  Interval power(long e) const;
  // union hull
  Interval hull(const Interval& o) const;
  Interval max(const Interval& o) const;
  Interval min(const Interval& o) const;

  // round endpoints outward onto the 2^-bits dyadic grid
  Interval round_out(long bits) const;

  std::string str(int digits = 17) const;
};

inline Interval operator*(const Rat& x, const Interval& i) { return i * x; }

// Enclosures; `bits` is the target dyadic precision of each endpoint.
Interval int_sqrt(const Interval& x, long bits);            // x >= 0
Interval int_nth_root(const Interval& x, unsigned long n, long bits);  // x >= 0
Interval int_log(const Interval& x, long bits);             // x > 0
Interval int_pi(long bits);
// x^(p/q) for x > 0 (x >= 0 when the exponent is a nonnegative integer)
Interval int_pow(const Interval& x, const Rat& e, long bits);

// Rectangular complex interval.
struct CBox {
  Interval re, im;

  CBox() = default;
  CBox(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  static CBox point(const Rat& r, const Rat& i) { return CBox(Interval(r), Interval(i)); }

  CBox operator+(const CBox& o) const { return CBox(re + o.re, im + o.im); }
  CBox operator-(const CBox& o) const { return CBox(re - o.re, im - o.im); }
  CBox operator*(const CBox& o) const {
    return CBox(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  CBox operator*(const Rat& x) const { return CBox(re * x, im * x); }
  CBox operator+(const Rat& x) const { return CBox(re + x, im); }
  Interval norm2() const { return re.square() + im.square(); }  // |z|^2
  Interval abs(long bits) const { return int_sqrt(norm2(), bits); }
  CBox conj() const { return CBox(re, -im); }
  // division by a box whose |.|^2 excludes zero
  CBox operator/(const CBox& o) const {
    Interval n2 = o.norm2();
    if (n2.contains_zero()) fail(Errc::DivisionByZero, "division by complex box containing 0");
    CBox num = *this * o.conj();
    return CBox(num.re / n2, num.im / n2);
  }
  CBox round_out(long bits) const { return CBox(re.round_out(bits), im.round_out(bits)); }
  bool contains(const CBox& o) const { return re.contains(o.re) && im.contains(o.im); }
  bool strictly_contains(const CBox& o) const {
    return re.lo < o.re.lo && o.re.hi < re.hi && im.lo < o.im.lo && o.im.hi < im.hi;
  }
  bool overlaps(const CBox& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
};

}  // namespace hc
