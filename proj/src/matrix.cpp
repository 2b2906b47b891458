#include "matrix.hpp"

namespace hc {

QMat q_identity(size_t n) {
  QMat a(n, QVec(n, Rat(0)));
  for (size_t i = 0; i < n; i++) a[i][i] = 1;
  return a;
}

QMat q_zero(size_t rows, size_t cols) { return QMat(rows, QVec(cols, Rat(0))); }

QMat q_mul(const QMat& a, const QMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat c = q_zero(n, m);
  for (size_t i = 0; i < n; i++)
    for (size_t t = 0; t < k; t++) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < m; j++) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

QVec q_mul_vec(const QMat& a, const QVec& x) {
  QVec y(a.size(), Rat(0));
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < x.size(); j++) y[i] += a[i][j] * x[j];
  return y;
}

QVec q_vec_mul(const QVec& x, const QMat& a) {
  size_t m = a.empty() ? 0 : a[0].size();
  QVec y(m, Rat(0));
  for (size_t i = 0; i < a.size(); i++) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < m; j++) y[j] += x[i] * a[i][j];
  }
  return y;
}

QMat q_transpose(const QMat& a) {
  size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  QMat t = q_zero(m, n);
  for (size_t i = 0; i < n; i++)
    for (size_t j = 0; j < m; j++) t[j][i] = a[i][j];
  return t;
}

Rat q_det(QMat a) {
  size_t n = a.size();
  Rat det = 1;
  for (size_t c = 0; c < n; c++) {
    size_t p = c;
    while (p < n && a[p][c] == 0) p++;
    if (p == n) return Rat(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    Rat inv = Rat(1) / a[c][c];
    for (size_t i = c + 1; i < n; i++) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] * inv;
      for (size_t j = c; j < n; j++) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

QMat q_inverse(const QMat& a) {
  size_t n = a.size();
  QMat m = a;
  QMat inv = q_identity(n);
  for (size_t c = 0; c < n; c++) {
    size_t p = c;
    while (p < n && m[p][c] == 0) p++;
    if (p == n) fail(Errc::SingularBasis, "matrix not invertible");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Rat f = Rat(1) / m[c][c];
    for (size_t j = 0; j < n; j++) {
      m[c][j] *= f;
      inv[c][j] *= f;
    }
    for (size_t i = 0; i < n; i++) {
      if (i == c || m[i][c] == 0) continue;
      Rat g = m[i][c];
      for (size_t j = 0; j < n; j++) {
        m[i][j] -= g * m[c][j];
        inv[i][j] -= g * inv[c][j];
      }
    }
  }
  return inv;
}

bool q_solve(const QMat& a, const QVec& b, QVec& x) {
  size_t n = a.size();
  QMat m = a;
  QVec r = b;
  std::vector<size_t> perm(n);
  for (size_t c = 0; c < n; c++) {
    size_t p = c;
    while (p < n && m[p][c] == 0) p++;
    if (p == n) return false;
    std::swap(m[p], m[c]);
    std::swap(r[p], r[c]);
    Rat f = Rat(1) / m[c][c];
    for (size_t j = 0; j < n; j++) m[c][j] *= f;
    r[c] *= f;
    for (size_t i = 0; i < n; i++) {
      if (i == c || m[i][c] == 0) continue;
      Rat g = m[i][c];
      for (size_t j = 0; j < n; j++) m[i][j] -= g * m[c][j];
      r[i] -= g * r[c];
    }
  }
  x = r;
  return true;
}

QMat q_right_kernel(QMat a) {
  size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  std::vector<long> pivot_of_col(cols, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; c++) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) p++;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rat f = Rat(1) / a[r][c];
    for (size_t j = 0; j < cols; j++) a[r][j] *= f;
    for (size_t i = 0; i < rows; i++) {
      if (i == r || a[i][c] == 0) continue;
      Rat g = a[i][c];
      for (size_t j = 0; j < cols; j++) a[i][j] -= g * a[r][j];
    }
    pivot_of_col[c] = (long)r;
    r++;
  }
  QMat out;
  for (size_t c = 0; c < cols; c++) {
    if (pivot_of_col[c] != -1) continue;
    QVec v(cols, Rat(0));
    v[c] = 1;
    for (size_t c2 = 0; c2 < cols; c2++) {
      if (pivot_of_col[c2] != -1) v[c2] = -a[pivot_of_col[c2]][c];
    }
    out.push_back(v);
  }
  return out;
}

QVec q_charpoly(const QMat& a) {
  // Faddeev-LeVerrier
  size_t n = a.size();
  QVec c(n + 1, Rat(0));
  c[n] = 1;
  QMat m = q_zero(n, n);
  for (size_t k = 1; k <= n; k++) {
    // M_k = A*M_{k-1} + c_{n-k+1} I
    if (k > 1) {
      m = q_mul(a, m);
      for (size_t i = 0; i < n; i++) m[i][i] += c[n - k + 1];
    } else {
      m = q_identity(n);
    }
    QMat am = q_mul(a, m);
    Rat tr = 0;
    for (size_t i = 0; i < n; i++) tr += am[i][i];
    c[n - k] = -tr / Rat((long)k);
  }
  return c;
}

Rat q_trace(const QMat& a) {
  Rat t = 0;
  for (size_t i = 0; i < a.size(); i++) t += a[i][i];
  return t;
}

ZMat z_from_q(const QMat& a, Int* denom) {
  Int l = 1;
  for (auto& row : a)
    for (auto& x : row) l = l * den(x) / gcd(l, den(x));
  ZMat out(a.size(), ZVec(a.empty() ? 0 : a[0].size()));
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < a[i].size(); j++) out[i][j] = num(a[i][j]) * (l / den(a[i][j]));
  if (denom) *denom = l;
  return out;
}

QMat q_from_z(const ZMat& a) {
  QMat out(a.size(), QVec(a.empty() ? 0 : a[0].size(), Rat(0)));
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < a[i].size(); j++) out[i][j] = Rat(a[i][j]);
  return out;
}

ZMat z_hnf(ZMat a, ZMat* u) {
  size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  ZMat uu;
  if (u) {
    uu.assign(rows, ZVec(rows, Int(0)));
    for (size_t i = 0; i < rows; i++) uu[i][i] = 1;
  }
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; c++) {
    // clear column c below row r by gcd steps
    while (true) {
      size_t p = rows;
      for (size_t i = r; i < rows; i++)
        if (a[i][c] != 0) {
          if (p == rows || mpz_cmpabs(a[i][c].get_mpz_t(), a[p][c].get_mpz_t()) < 0) p = i;
        }
      if (p == rows) break;  // column is zero from r down
      if (p != r) {
        std::swap(a[p], a[r]);
        if (u) std::swap(uu[p], uu[r]);
      }
      bool done = true;
      for (size_t i = r + 1; i < rows; i++) {
        if (a[i][c] == 0) continue;
        Int q = floor_div(a[i][c], a[r][c]);
        if (q != 0) {
          for (size_t j = 0; j < cols; j++) a[i][j] -= q * a[r][j];
          if (u)
            for (size_t j = 0; j < rows; j++) uu[i][j] -= q * uu[r][j];
        }
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (size_t j = 0; j < cols; j++) a[r][j] = -a[r][j];
      if (u)
        for (size_t j = 0; j < rows; j++) uu[r][j] = -uu[r][j];
    }
    // reduce entries above the pivot into [0, pivot)
    for (size_t i = 0; i < r; i++) {
      Int q = floor_div(a[i][c], a[r][c]);
      if (q != 0) {
        for (size_t j = 0; j < cols; j++) a[i][j] -= q * a[r][j];
        if (u)
          for (size_t j = 0; j < rows; j++) uu[i][j] -= q * uu[r][j];
      }
    }
    r++;
  }
  if (u) *u = uu;
  a.resize(r);
  return a;
}

ZMat z_left_kernel(const ZMat& a) {
  ZMat u;
  ZMat h = z_hnf(a, &u);
  // rows of u beyond rank(a) map onto zero rows
  ZMat out;
  for (size_t i = h.size(); i < u.size(); i++) out.push_back(u[i]);
  return out;
}

ZMat z_mod_kernel_lattice(const ZMat& a, const Int& q) {
  size_t rows = a.size(), m = a.empty() ? 0 : a[0].size();
  if (q == 0) fail(Errc::DivisionByZero, "mod kernel with q = 0");
  // {x : a x^T = q y for some integer y}: left kernel of [a^T ; q I_rows]
  // stacked as columns of a combined matrix. Work with row conventions:
  // pairs (x, y) with x * a^T - y * (q I) = 0.
  ZMat stacked(m + rows, ZVec(rows, Int(0)));
  for (size_t i = 0; i < m; i++)
    for (size_t j = 0; j < rows; j++) stacked[i][j] = a[j][i];
  for (size_t j = 0; j < rows; j++) stacked[m + j][j] = -q;
  ZMat kern = z_left_kernel(stacked);
  ZMat xs;
  for (auto& row : kern) xs.push_back(ZVec(row.begin(), row.begin() + m));
  ZMat h = z_hnf(xs);
  if (h.size() != m) fail(Errc::SingularBasis, "mod kernel lattice lost rank");
  return h;
}

Int z_det(const ZMat& a) {
  Rat d = q_det(q_from_z(a));
  if (den(d) != 1) fail(Errc::SingularBasis, "integer determinant not integral");
  return num(d);
}

}  // namespace hc
