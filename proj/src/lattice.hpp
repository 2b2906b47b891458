#pragma once

#include "ideal.hpp"
#include "powerprod.hpp"

#include <functional>
#include <optional>

namespace hc {

// Full-rank lattice given by basis rows in rational coordinates together with
// a symmetric positive-definite rational form on the coordinate space. The
// Gram matrix (and hence every squared length) is exact.
class Lattice {
 public:
  static Lattice standard(QMat basis);                 // Euclidean form
  static Lattice with_form(QMat basis, QMat form);

  long rank() const { return (long)basis_.size(); }
  const QMat& basis() const { return basis_; }
  const QMat& form() const { return form_; }
  const QMat& gram() const { return gram_; }

  Rat det2() const;               // det(gram) = (covolume)^2, exact
  PowerProduct det() const;       // covolume as an exact power product
  Interval det_interval(long bits) const;

  // squared length of an integer combination x of the basis rows
  Rat length2(const ZVec& x) const;
  QVec ambient(const ZVec& x) const;  // x * basis

  Lattice lll(const Rat& delta = rat(3, 4)) const;

  // all nonzero vectors with squared length <= c2, one per +-pair
  std::vector<ZVec> shorter_than(const Rat& c2, long cap = 2000000) const;

  // successive minima with attaining linearly independent vectors
  struct Minimum {
    Rat value2;   // exact squared length
    QVec vec;     // attaining vector in ambient coordinates
  };
  std::vector<Minimum> successive_minima(long upto) const;

  // orthogonal product of two lattices
  static Lattice product(const Lattice& a, const Lattice& b);

  // canonical HNF presentation for equality testing
  bool same_lattice(const Lattice& o) const;

 private:
  QMat basis_, form_, gram_;
  void refresh();
};

// Minkowski form on an order: the exact Gram matrix of the embedding
// x -> (sigma_1 x, ..., sigma_r x, Re sigma_{r+1} x, Im sigma_{r+1} x, ...).
// Exact for totally real and imaginary quadratic orders (UnsupportedShape
// otherwise); det = (2^-s sqrt|disc|)^2.
QMat minkowski_form(const OrderPtr& o);

// lattice sigma(I) of a fractional ideal under the Minkowski embedding
Lattice ideal_lattice(const Ideal& a);

struct Body {
  enum class Kind { Ball, Box, Star };
  Kind kind = Kind::Ball;
  Rat radius2;                                  // Ball: |x|_form^2 <= radius2
  std::vector<std::pair<Rat, Rat>> box;         // Box: ambient bounds (identity form)
  std::function<int(const QVec&)> star_member;  // +1 in, -1 out, 0 undecided
  Rat star_radius2;                             // bounding ball for Star
  bool exclude_zero = false;

  static Body ball(const Rat& r2, bool exclude_zero = false);
  static Body cube(const std::vector<std::pair<Rat, Rat>>& b);
};

long count_lattice_points(const Lattice& l, const Body& body);

// Lattice of coordinate tuples omega in k^(n+1) with every omega_j in the
// coordinate ideal `coord` and every generator form sum_j rows[i][j]*omega_j
// landing in the target ideal of the top field. Basis coordinates are indexed
// blockwise by (tuple position, base integral basis); the form is the
// blockwise Minkowski form of the base.
struct ConditionLattice {
  Lattice lattice;
  Ideal target;  // ideal of the top field
  Ideal coord;   // ideal of the base field
  long n = 1;
};

ConditionLattice build_condition_lattice(const ExtensionPtr& ext,
                                         const std::vector<std::vector<Elem>>& rows,
                                         const Ideal& target, const Ideal& coord, long n);

// index [Lambda(target, coord) : Lambda(target, coord * e)] for a base ideal e
Rat condition_lattice_index(const ExtensionPtr& ext, const std::vector<std::vector<Elem>>& rows,
                            const Ideal& target, const Ideal& coord, const Ideal& e);

}  // namespace hc
