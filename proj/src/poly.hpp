#pragma once

#include "interval.hpp"
#include "util.hpp"

#include <vector>

namespace hc {

// Dense polynomials, coefficients low -> high. The zero polynomial is {}.
using QPoly = std::vector<Rat>;
using ZPoly = std::vector<Int>;

QPoly qp_normalize(QPoly f);
long qp_degree(const QPoly& f);  // -1 for zero
QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_scale(const QPoly& a, const Rat& c);
// division with remainder; b != 0
void qp_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly qp_gcd(QPoly a, QPoly b);  // monic gcd
QPoly qp_derivative(const QPoly& f);
Rat qp_eval(const QPoly& f, const Rat& x);
Interval qp_eval(const QPoly& f, const Interval& x);
CBox qp_eval(const QPoly& f, const CBox& x);
QPoly qp_from_z(const ZPoly& f);
ZPoly zp_from_q(const QPoly& f);  // requires integer coefficients

// Cauchy bound: all complex roots have |z| < bound
Rat qp_root_bound(const QPoly& f);

// number of distinct real roots in (a, b]
long sturm_count(const QPoly& f, const Rat& a, const Rat& b);
long sturm_count_all(const QPoly& f);
// disjoint isolating intervals (lo, hi] for all real roots of a squarefree f,
// sorted ascending; each contains exactly one root
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& f);
// shrink an isolating interval until hi - lo <= eps (sign-change bisection)
std::pair<Rat, Rat> refine_root(const QPoly& f, Rat lo, Rat hi, const Rat& eps);

Rat qp_resultant(const QPoly& a, const QPoly& b);
Rat qp_discriminant(const QPoly& f);

// ---- polynomials over F_p (p < 2^31) ----
using FpPoly = std::vector<long>;

FpPoly fp_from_z(const ZPoly& f, long p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p);
FpPoly fp_mod(FpPoly a, const FpPoly& m, long p);
FpPoly fp_gcd(FpPoly a, FpPoly b, long p);
FpPoly fp_powmod(const FpPoly& base, Int e, const FpPoly& m, long p);
// distinct monic irreducible factors with multiplicities
std::vector<std::pair<FpPoly, long>> fp_factor(const FpPoly& f, long p);

// ---- factorization over Z ----
// f must be primitive with nonzero leading coefficient; returns irreducible
// factors with multiplicity (content dropped).
std::vector<std::pair<ZPoly, long>> z_factor(const ZPoly& f);
bool z_is_irreducible(const ZPoly& f);

}  // namespace hc
