#pragma once

#include "interval.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "util.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace hc {

struct OrderInvariants {
  Int class_number = 1;
  bool class_number_known = true;
  Rat regulator = 1;
  Rat regulator_prec = 0;  // declared absolute precision of the regulator value
  bool regulator_known = true;
  long roots_of_unity = 2;
  Int disc = 1;
};

// Fixture-supplied splitting data for a rational prime (used when the prime
// divides the index [O : Z[gamma]]).
struct PrimeOverride {
  Int p;
  struct Factor {
    std::vector<QVec> gens;  // generators in integral-basis coordinates
    long e = 1;
    long f = 1;
  };
  std::vector<Factor> factors;
};

// One Archimedean place: a rigorous enclosure of the image of the primitive
// element. Real places come first (ascending root), then one representative
// per conjugate pair (positive imaginary part, ordered by (Re, Im)).
struct Place {
  bool real = true;
  Interval x;  // real root enclosure
  CBox z;      // complex root enclosure (when !real)
  long local_degree() const { return real ? 1 : 2; }
};

class Order;
using OrderPtr = std::shared_ptr<const Order>;

// An order in a number field, presented by a monic integer minimal polynomial
// and an integral basis written in power-basis coordinates. Immutable after
// construction; embedding enclosures refine behind a mutex and never widen.
class Order : public std::enable_shared_from_this<Order> {
 public:
  // Validates everything: irreducibility, ring closure (integer structure
  // constants), associativity and unitality on basis triples, trace-form
  // determinant against the declared discriminant, signature by Sturm count,
  // and the supplied prime overrides.
  static OrderPtr create(std::string name, ZPoly min_poly, QMat integral_basis,
                         OrderInvariants inv, std::vector<PrimeOverride> overrides = {},
                         QMat conj_map = {});

  const std::string& name() const { return name_; }
  long degree() const { return d_; }
  const ZPoly& min_poly() const { return min_poly_; }
  const QMat& basis() const { return basis_; }          // rows = basis in power coords
  const QMat& basis_inv() const { return basis_inv_; }  // power coords -> basis coords
  const OrderInvariants& invariants() const { return inv_; }
  long real_places() const { return r_; }
  long complex_places() const { return s_; }
  long num_places() const { return r_ + s_; }
  const std::vector<PrimeOverride>& overrides() const { return overrides_; }
  const PrimeOverride* override_for(const Int& p) const;
  // index [O : Z[gamma]] squared = disc(min_poly) / disc(O)
  const Int& index_square() const { return index_sq_; }

  // multiplication tensor: b_i * b_j = sum_k mult_[i][j][k] b_k
  const ZVec& mult_row(long i, long j) const { return mult_[i * d_ + j]; }

  QVec coords_of_one() const { return one_; }
  QVec to_power(const QVec& c) const;    // basis coords -> power coords
  QVec from_power(const QVec& p) const;  // power coords -> basis coords
  QVec mul(const QVec& a, const QVec& b) const;
  QMat mul_matrix(const QVec& a) const;  // column j = coords of a * b_j
  Rat trace_of(const QVec& a) const;
  Rat norm_of(const QVec& a) const;
  QPoly trace_form_row(long i) const;  // unused helper, see trace_form()
  const QMat& trace_form() const { return trace_form_; }

  // Archimedean data. place(i) returns the current enclosure; refine_places
  // shrinks every enclosure below the requested width. Thread-safe.
  Place place(long i) const;
  void refine_places(const Rat& width) const;

  // |sigma_i(a)| as an interval of width <= target (absolute), refining the
  // underlying root enclosures on demand.
  Interval abs_embedding(const QVec& a, long i, const Rat& target_width) const;
  // sigma_i(a) itself (real place: point interval in re; complex: box)
  CBox embedding_box(const QVec& a, long i, const Rat& target_width) const;

  // complex-conjugation automorphism on integral-basis coordinates, when the
  // field carries one commuting with every embedding (CM / totally real)
  bool has_conj() const { return s_ == 0 || !conj_.empty(); }
  QVec conj(const QVec& a) const;

 private:
  Order() = default;
  std::string name_;
  long d_ = 0;
  ZPoly min_poly_;
  QMat basis_, basis_inv_;
  OrderInvariants inv_;
  long r_ = 0, s_ = 0;
  std::vector<ZVec> mult_;
  QVec one_;
  QMat trace_form_;
  Int index_sq_;
  std::vector<PrimeOverride> overrides_;
  QMat conj_;

  mutable std::mutex place_mutex_;
  mutable std::vector<Place> places_;
  void refine_places_locked(const Rat& width) const;
};

// Field element in integral-basis coordinates.
struct Elem {
  OrderPtr order;
  QVec c;

  static Elem zero(const OrderPtr& o) { return {o, QVec(o->degree(), Rat(0))}; }
  static Elem one(const OrderPtr& o) { return {o, o->coords_of_one()}; }
  static Elem rational(const OrderPtr& o, const Rat& r);

  bool is_zero() const;
  bool operator==(const Elem& b) const;
  Elem operator+(const Elem& b) const;
  Elem operator-(const Elem& b) const;
  Elem operator-() const;
  Elem operator*(const Elem& b) const;
  Elem operator/(const Elem& b) const;  // exact; DivisionByZero on b = 0
  Elem operator*(const Rat& r) const;
  Elem pow(long e) const;
  Rat norm() const { return order->norm_of(c); }
  Rat trace() const { return order->trace_of(c); }
  std::string str() const;
};

void check_same_order(const Elem& a, const Elem& b);

// Embedding of a base order into a top order, given by the image of the
// base's primitive element.
class Extension;
using ExtensionPtr = std::shared_ptr<const Extension>;

class Extension {
 public:
  static ExtensionPtr create(OrderPtr base, OrderPtr top, QVec primitive_image);

  const OrderPtr& base() const { return base_; }
  const OrderPtr& top() const { return top_; }
  long relative_degree() const { return rel_deg_; }
  // base integral-basis coords -> top integral-basis coords
  const QMat& matrix() const { return embed_; }
  Elem embed(const Elem& a) const;
  // for each place w of the top field, the index of the base place below it
  const std::vector<long>& place_cover() const { return cover_; }
  std::vector<long> places_over(long v) const;
  // local degree d_w = [K_w : Q_w] of a top place
  long local_degree_top(long w) const { return top_->place(w).local_degree(); }

  // identity extension K/K
  static ExtensionPtr identity(const OrderPtr& o);

 private:
  Extension() = default;
  OrderPtr base_, top_;
  long rel_deg_ = 1;
  QMat embed_;  // d_top x d_base
  std::vector<long> cover_;
};

// Sum of phi-function style bound used to sanity-check roots of unity counts.
bool roots_of_unity_count_plausible(long w, long degree, long real_places);

}  // namespace hc
