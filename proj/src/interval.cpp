#include "interval.hpp"

#include <algorithm>

namespace hc {

Interval::Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) fail(Errc::UnsupportedShape, "interval endpoints out of order");
}

Interval Interval::operator*(const Interval& o) const {
  Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return Interval(std::min(std::min(a, b), std::min(c, d)),
                  std::max(std::max(a, b), std::max(c, d)));
}

Interval Interval::operator/(const Interval& o) const {
  if (o.contains_zero()) fail(Errc::DivisionByZero, "interval division by interval containing 0");
  Rat a = lo / o.lo, b = lo / o.hi, c = hi / o.lo, d = hi / o.hi;
  return Interval(std::min(std::min(a, b), std::min(c, d)),
                  std::max(std::max(a, b), std::max(c, d)));
}

Interval Interval::operator*(const Rat& x) const {
  if (x >= 0) return Interval(lo * x, hi * x);
  return Interval(hi * x, lo * x);
}

Interval Interval::operator/(const Rat& x) const {
  if (x == 0) fail(Errc::DivisionByZero, "interval division by zero");
  return *this * (Rat(1) / x);
}

Interval Interval::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return -*this;
  return Interval(Rat(0), std::max(Rat(-lo), hi));
}

Interval Interval::square() const {
  Interval a = abs();
  return Interval(a.lo * a.lo, a.hi * a.hi);
}

Interval Interval::power(long e) const {
  if (e == 0) return Interval(Rat(1));
  if (e < 0) return Interval(Rat(1)) / power(-e);
  if (e % 2 == 0) {
    Interval a = abs();
    return Interval(pow_rat_int(a.lo, e), pow_rat_int(a.hi, e));
  }
  return Interval(pow_rat_int(lo, e), pow_rat_int(hi, e));
}

Interval Interval::hull(const Interval& o) const {
  return Interval(std::min(lo, o.lo), std::max(hi, o.hi));
}

Interval Interval::max(const Interval& o) const {
  return Interval(std::max(lo, o.lo), std::max(hi, o.hi));
}

Interval Interval::min(const Interval& o) const {
  return Interval(std::min(lo, o.lo), std::min(hi, o.hi));
}

Interval Interval::round_out(long bits) const {
  Int scale = pow_int(2, bits);
  Rat l = rat(floor_rat(lo * scale), scale);
  Rat h = rat(ceil_rat(hi * scale), scale);
  return Interval(l, h);
}

std::string Interval::str(int digits) const {
  auto fmt = [&](const Rat& r) {
    mpf_class f(0, 64 + digits * 4);
    f = r;
    mp_exp_t e;
    std::string m = f.get_str(e, 10, digits);
    bool neg = !m.empty() && m[0] == '-';
    std::string digs = neg ? m.substr(1) : m;
    if (digs.empty()) return std::string("0");
    std::string out = (neg ? "-" : "") + ("0." + digs) + "e" + std::to_string(e);
    return out;
  };
  return "[" + fmt(lo) + ", " + fmt(hi) + "]";
}

Interval int_sqrt(const Interval& x, long bits) {
  if (x.lo < 0) fail(Errc::UnsupportedShape, "sqrt of interval below zero");
  auto root_lo = [&](const Rat& v) {
    // floor(sqrt(v) * 2^bits) / 2^bits, via sqrt(n/d) = sqrt(n d)/d
    Int scale = pow_int(2, bits);
    Int s = isqrt(num(v) * den(v) * scale * scale);
    return rat(s, den(v) * scale);
  };
  auto root_hi = [&](const Rat& v) {
    Int scale = pow_int(2, bits);
    Int s = isqrt(num(v) * den(v) * scale * scale);
    if (rat(s, den(v) * scale) * rat(s, den(v) * scale) == v) return rat(s, den(v) * scale);
    return rat(s + 1, den(v) * scale);
  };
  Interval xr = x.round_out(2 * bits + 8);
  if (xr.lo < 0) xr.lo = 0;
  return Interval(root_lo(xr.lo), root_hi(xr.hi));
}

Interval int_nth_root(const Interval& x, unsigned long n, long bits) {
  if (n == 1) return x;
  if (n == 2) return int_sqrt(x, bits);
  if (x.lo < 0) fail(Errc::UnsupportedShape, "nth root of interval below zero");
  auto root_dir = [&](const Rat& v, bool up) {
    // n-th root of v scaled to the dyadic grid: root(num * den^(n-1) * 2^(n*bits)) / (den * 2^bits)
    Int scale = pow_int(2, bits);
    Int inside = num(v) * pow_int(den(v), n - 1) * pow_int(scale, n);
    Int s = iroot(inside, n);
    Rat r = rat(s, den(v) * scale);
    if (up && pow_rat_int(r, (long)n) != v) r = rat(s + 1, den(v) * scale);
    return r;
  };
  Interval xr = x.round_out(2 * bits + 8);
  if (xr.lo < 0) xr.lo = 0;
  return Interval(root_dir(xr.lo, false), root_dir(xr.hi, true));
}

// atanh series with rigorous geometric tail: 2 * sum u^(2t+1)/(2t+1), |u| <= 1/3.
static Interval atanh_small(const Rat& u, long bits) {
  Rat u2 = u * u;
  Interval sum(Rat(0));
  Interval upow{Interval(u)};
  long t = 0;
  while (true) {
    sum = (sum + upow / Rat(2 * t + 1)).round_out(bits + 16);
    upow = (upow * u2).round_out(bits + 16);
    t++;
    Rat mag = std::max(Rat(-upow.lo), Rat(upow.hi));
    if (mag < 0) mag = 0;
    // remaining tail: mag/(2t+1) * (1 + u^2 + u^4 + ...) <= mag * 9/8 for |u| <= 1/3
    Rat tail = mag / Rat(2 * t + 1) * rat(9, 8);
    if (tail * pow_int(2, bits) < 1) {
      sum = Interval(sum.lo - tail, sum.hi + tail);
      break;
    }
    if (t > 100000) fail(Errc::PrecisionUnreachable, "atanh series did not converge");
  }
  return (sum * Rat(2)).round_out(bits);
}

static Interval log2_enclosure(long bits) {
  // log 2 = 2 atanh(1/3)
  return atanh_small(rat(1, 3), bits);
}

Interval int_log(const Interval& x, long bits) {
  if (x.lo <= 0) fail(Errc::UnsupportedShape, "log of interval touching zero");
  auto log_point = [&](const Rat& v, bool up) {
    // range-reduce v = m * 2^k with m in [2/3, 4/3]
    Rat m = v;
    long k = 0;
    while (m > rat(4, 3)) {
      m /= 2;
      k++;
    }
    while (m < rat(2, 3)) {
      m *= 2;
      k--;
    }
    Rat u = (m - 1) / (m + 1);  // |u| <= 1/5
    Interval lg = atanh_small(u, bits + 8);
    Interval l2 = log2_enclosure(bits + 8);
    Interval res = lg + l2 * Rat(k);
    return up ? res.hi : res.lo;
  };
  Interval xr = x.round_out(2 * bits + 8);
  return Interval(log_point(xr.lo, false), log_point(xr.hi, true)).round_out(bits);
}

Interval int_pi(long bits) {
  // Machin: pi = 16 atan(1/5) - 4 atan(1/239); both series alternate, so
  // consecutive partial sums bracket the value.
  auto atan_inv = [&](long q) {
    // alternating series: after subtracting a term, s underestimates and the
    // value lies in [s, s + next_term]
    Rat x = rat(1, q);
    Rat x2 = x * x;
    Rat term = x;
    Rat s = 0;
    long t = 0;
    while (true) {
      if (t % 2 == 0)
        s += term / Rat(2 * t + 1);
      else
        s -= term / Rat(2 * t + 1);
      term = term * x2;
      t++;
      Rat next = term / Rat(2 * t + 1);
      if (t % 2 == 0 && next * pow_int(2, bits + 8) < 1) {
        // t even: last operation was a subtraction
        return Interval(s, s + next);
      }
      if (t > 100000) fail(Errc::PrecisionUnreachable, "arctan series did not converge");
    }
  };
  Interval a = atan_inv(5), b = atan_inv(239);
  return (a * Rat(16) - b * Rat(4)).round_out(bits);
}

Interval int_pow(const Interval& x, const Rat& e, long bits) {
  if (den(e) == 1) return x.power(num(e).get_si()).round_out(bits);
  if (x.lo < 0) fail(Errc::UnsupportedShape, "fractional power of interval below zero");
  long p = num(e).get_si();
  unsigned long q = den(e).get_ui();
  Interval xp = x.power(p >= 0 ? p : -p);
  Interval r = int_nth_root(xp, q, bits + 8);
  if (p < 0) {
    if (r.lo <= 0) fail(Errc::DivisionByZero, "negative power of interval touching zero");
    r = Interval(Rat(1)) / r;
  }
  return r.round_out(bits);
}

}  // namespace hc
