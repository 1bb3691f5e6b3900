#pragma once

// Dense linear algebra over a prime field F_p. Vectors and matrices hold
// canonical residues in [0, p).

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace peiffer::fp {

using Vector = std::vector<int>;
/// Row-major. A linear map F_p^n -> F_p^m is stored as m rows of length n.
using Matrix = std::vector<Vector>;

inline int reduce(long long a, int p)
{
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

inline int inverse(int a, int p)
{
  // p is tiny; Fermat via repeated multiplication.
  int result = 1;
  for (int e = 0; e < p - 2; ++e)
    result = (result * a) % p;
  return result;
}

inline Vector zero(std::size_t n) { return Vector(n, 0); }

inline Vector unit(std::size_t n, std::size_t i)
{
  Vector v(n, 0);
  v[i] = 1;
  return v;
}

inline bool is_zero(const Vector& v)
{
  for (int x : v)
    if (x != 0)
      return false;
  return true;
}

inline Vector add(const Vector& a, const Vector& b, int p)
{
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = (a[i] + b[i]) % p;
  return r;
}

inline Vector sub(const Vector& a, const Vector& b, int p)
{
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = reduce(a[i] - b[i], p);
  return r;
}

inline Vector scale(const Vector& a, int s, int p)
{
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = (a[i] * s) % p;
  return r;
}

inline void axpy(Vector& y, int s, const Vector& x, int p)
{
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = (y[i] + s * x[i]) % p;
}

inline Matrix zero_matrix(std::size_t rows, std::size_t cols)
{
  return Matrix(rows, Vector(cols, 0));
}

inline Matrix identity_matrix(std::size_t n)
{
  Matrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = 1;
  return m;
}

inline Vector apply(const Matrix& m, const Vector& v, int p)
{
  Vector r(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    long long acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
      acc += static_cast<long long>(m[i][j]) * v[j];
    r[i] = reduce(acc, p);
  }
  return r;
}

/// a * b, where b has `inner` rows and `cols` columns.
inline Matrix multiply(const Matrix& a, const Matrix& b, std::size_t inner,
                       std::size_t cols, int p)
{
  Matrix r = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0)
        continue;
      for (std::size_t j = 0; j < cols; ++j)
        r[i][j] = (r[i][j] + a[i][k] * b[k][j]) % p;
    }
  return r;
}

inline Vector column(const Matrix& m, std::size_t j)
{
  Vector c(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    c[i] = m[i][j];
  return c;
}

inline void set_column(Matrix& m, std::size_t j, const Vector& c)
{
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i][j] = c[i];
}

/// Reduced row echelon form of a set of row vectors. Zero rows are dropped,
/// so `rows` is a basis of the row span and `pivots[i]` is the leading column
/// of `rows[i]` (strictly increasing).
struct Echelon {
  std::size_t width = 0;
  Matrix rows;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return rows.size(); }
};

inline Echelon echelon(Matrix rows, std::size_t width, int p)
{
  Echelon e;
  e.width = width;
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0)
      ++piv;
    if (piv == rows.size())
      continue;
    std::swap(rows[piv], rows[r]);
    int s = inverse(rows[r][c], p);
    rows[r] = scale(rows[r], s, p);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][c] != 0)
        axpy(rows[i], p - rows[i][c], rows[r], p);
    e.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  return e;
}

/// v minus its projection onto the span along the pivot coordinates; zero iff
/// v lies in the span.
inline Vector residue(const Echelon& e, Vector v, int p)
{
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    int c = v[e.pivots[i]];
    if (c != 0)
      axpy(v, p - c, e.rows[i], p);
  }
  return v;
}

inline bool in_span(const Echelon& e, const Vector& v, int p)
{
  return is_zero(residue(e, v, p));
}

/// Coordinates of v (assumed in the span) with respect to e.rows.
inline Vector coordinates(const Echelon& e, const Vector& v)
{
  Vector c(e.rows.size());
  for (std::size_t i = 0; i < e.rows.size(); ++i)
    c[i] = v[e.pivots[i]];
  return c;
}

/// Basis of {v : m v = 0}, for m with `cols` columns.
inline Matrix nullspace(const Matrix& m, std::size_t cols, int p)
{
  Echelon e = echelon(m, cols, p);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivots)
    is_pivot[c] = true;
  Matrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f])
      continue;
    Vector v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i)
      v[e.pivots[i]] = reduce(-e.rows[i][f], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Intersection of two row spans inside F_p^width.
inline Matrix intersect(const Matrix& u, const Matrix& v, std::size_t width, int p)
{
  // Solve sum a_i u_i = sum b_j v_j; the kernel of [u; -v]^T gives (a, b).
  std::size_t n = u.size() + v.size();
  Matrix system = zero_matrix(width, n);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t k = 0; k < width; ++k)
      system[k][i] = u[i][k];
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t k = 0; k < width; ++k)
      system[k][u.size() + j] = reduce(-v[j][k], p);
  Matrix result;
  for (const Vector& sol : nullspace(system, n, p)) {
    Vector w(width, 0);
    for (std::size_t i = 0; i < u.size(); ++i)
      if (sol[i] != 0)
        axpy(w, sol[i], u[i], p);
    result.push_back(std::move(w));
  }
  return result;
}

/// Some x with m x = target, if one exists (m has `cols` columns).
inline bool solve(const Matrix& m, std::size_t cols, const Vector& target,
                  Vector& x, int p)
{
  std::size_t rows = m.size();
  Matrix aug = zero_matrix(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j)
      aug[i][j] = m[i][j];
    aug[i][cols] = target[i];
  }
  Echelon e = echelon(aug, cols + 1, p);
  x.assign(cols, 0);
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == cols)
      return false;
    x[e.pivots[i]] = e.rows[i][cols];
  }
  return true;
}

/// Number of vectors in a span of the given rank.
inline std::uint64_t span_size(std::size_t rank, int p)
{
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < rank; ++i)
    n *= static_cast<std::uint64_t>(p);
  return n;
}

/// All vectors of F_p^n in lexicographic order of base-p digits, with
/// coordinate 0 the least significant.
inline Vector decode(std::uint64_t index, std::size_t n, int p)
{
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<int>(index % static_cast<std::uint64_t>(p));
    index /= static_cast<std::uint64_t>(p);
  }
  return v;
}

} // namespace peiffer::fp
