#pragma once

#include "util.hpp"

#include <vector>

namespace hc {

using QVec = std::vector<Rat>;
using QMat = std::vector<std::vector<Rat>>;
using ZVec = std::vector<Int>;
using ZMat = std::vector<std::vector<Int>>;

QMat q_identity(size_t n);
QMat q_zero(size_t rows, size_t cols);
QMat q_mul(const QMat& a, const QMat& b);
QVec q_mul_vec(const QMat& a, const QVec& x);    // a * x (x as column)
QVec q_vec_mul(const QVec& x, const QMat& a);    // x (row) * a
QMat q_transpose(const QMat& a);
Rat q_det(QMat a);
QMat q_inverse(const QMat& a);                    // throws SingularBasis
bool q_solve(const QMat& a, const QVec& b, QVec& x);  // a x = b, a square
// basis of the right kernel {x : a x = 0}, rows of the result
QMat q_right_kernel(QMat a);
// characteristic polynomial of a square matrix, coefficients low->high (monic)
QVec q_charpoly(const QMat& a);
Rat q_trace(const QMat& a);

ZMat z_from_q(const QMat& a, Int* denom);  // clears denominators, a = result/denom
QMat q_from_z(const ZMat& a);

// Row-style Hermite normal form: returns H whose rows span the same Z-row
// space as a, with pivots left to right, positive, entries above each pivot
// reduced to [0, pivot). Zero rows are dropped. If u != nullptr it receives a
// unimodular U (square, |det|=1) with U*a = [H; 0-rows].
ZMat z_hnf(ZMat a, ZMat* u = nullptr);
// rows spanning {x : x * a = 0} over Z
ZMat z_left_kernel(const ZMat& a);
// basis (rows) of the lattice {x in Z^m : a * x^T in q Z^rows(a)}; the result
// always contains q Z^m, so it has full rank m
ZMat z_mod_kernel_lattice(const ZMat& a, const Int& q);

Int z_det(const ZMat& a);

}  // namespace hc
