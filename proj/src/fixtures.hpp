#pragma once

#include "ideal.hpp"
#include "lattice.hpp"
#include "nf.hpp"

#include <map>
#include <string>

namespace hc {

// JSON fixture schema:
// {
//   "name": "...", "degree": d,
//   "min_poly": [c0, ..., 1],                      // integers, low -> high
//   "integral_basis": [["p/q", ...], ...],         // rows, power-basis coords
//   "invariants": {"h": 1, "R": {"value": "...", "prec": "..."} | null,
//                  "w": 2, "disc": "..."},
//   "prime_overrides": [{"p": 5, "factors": [{"gens": [["...", ...]], "e": 2, "f": 2}]}]
// }
// Extension fixture: {"base": name, "top": name, "primitive_image": ["p/q", ...]}
OrderPtr order_from_json_text(const std::string& text);
std::string order_to_json_text(const OrderPtr& o, bool regulator_known = true);
OrderPtr load_order_file(const std::string& path);

// Built-in fixtures by name: "q", "qi", "qsqrt<m>" (e.g. qsqrt5), "qcbrt2",
// "q8". Names containing '.' or '/' are treated as file paths. Cached.
OrderPtr fixture_order(const std::string& name);

OrderPtr rationals();
// maximal order of Q(sqrt m), m squarefree, with certified invariants
OrderPtr quadratic_order(long m);
// Z[cbrt 2]
OrderPtr cubic_field_2();

// Certified multiquadratic order Q(sqrt m_1, ..., sqrt m_t): integral basis
// found by closure search, accepted only when the trace-form discriminant
// matches the conductor-discriminant target; splitting overrides computed for
// every prime dividing the index.
struct Multiquadratic {
  OrderPtr order;
  std::vector<long> ms;
  std::vector<Elem> monomials;  // indexed by mask over ms; sqrt of the squarefree part
};
Multiquadratic multiquadratic_order(const std::vector<long>& ms);

// cached degree-8 field Q(sqrt2, sqrt3, sqrt5) with overrides for its index primes
const Multiquadratic& appendix_field();
// cached Q(i, sqrt p) for a prime p = 3 mod 4
const Multiquadratic& gaussian_sqrt_field(long p);

ExtensionPtr extension_between(const OrderPtr& base, const OrderPtr& top);
ExtensionPtr fixture_extension(const std::string& base, const std::string& top);
ExtensionPtr extension_from_json_text(const std::string& text);

// real quadratic regulator: encloses log of the fundamental unit
// (x + y sqrt(disc))/2 with x^2 - disc y^2 = +-4 minimal
Interval fundamental_unit_log(long disc, long bits);

// runs the load-time invariants and returns a short report; throws on failure
std::string validate_order_report(const OrderPtr& o);

// lattice (basis + form) serialization for test fixtures
std::string lattice_to_json_text(const Lattice& l);
Lattice lattice_from_json_text(const std::string& text);

}  // namespace hc
