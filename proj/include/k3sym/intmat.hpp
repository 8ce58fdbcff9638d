#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3sym {

namespace detail {
inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer matrix overflow");
  return r;
}
inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer matrix overflow");
  return r;
}
}  // namespace detail

/// Small dense integer matrix, row-major.
struct ZMatrix {
  int rows = 0, cols = 0;
  std::vector<long long> a;

  ZMatrix() = default;
  ZMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  ZMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows = static_cast<int>(init.size());
    cols = rows ? static_cast<int>(init.begin()->size()) : 0;
    for (const auto& row : init) {
      if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("ragged matrix");
      a.insert(a.end(), row.begin(), row.end());
    }
  }
  static ZMatrix identity(int n) {
    ZMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  long long& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  long long operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  ZMatrix operator*(const ZMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("dimension mismatch");
    ZMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        long long x = (*this)(i, k);
        if (!x) continue;
        for (int j = 0; j < o.cols; ++j)
          r(i, j) = detail::checked_add(r(i, j), detail::checked_mul(x, o(k, j)));
      }
    return r;
  }
  ZMatrix operator+(const ZMatrix& o) const {
    ZMatrix r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
  }
  ZMatrix operator-(const ZMatrix& o) const {
    ZMatrix r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
  }
  bool operator==(const ZMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  ZMatrix transpose() const {
    ZMatrix r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  std::vector<long long> column(int j) const {
    std::vector<long long> c(rows);
    for (int i = 0; i < rows; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<long long> apply(const std::vector<long long>& x) const {
    std::vector<long long> y(rows, 0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) y[i] = detail::checked_add(y[i], detail::checked_mul((*this)(i, j), x[j]));
    return y;
  }
  std::string str() const {
    std::ostringstream os;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) os << (j ? " " : "") << (*this)(i, j);
      os << "\n";
    }
    return os.str();
  }
};

/// Smith normal form U*A*V = D with U, V unimodular.
struct SmithForm {
  ZMatrix D, U, V;
  int rank = 0;
  std::vector<long long> invariants;  // nonzero diagonal entries, each divides the next
};

inline SmithForm smith(const ZMatrix& A) {
  using detail::checked_add;
  using detail::checked_mul;
  SmithForm s{A, ZMatrix::identity(A.rows), ZMatrix::identity(A.cols)};
  ZMatrix& D = s.D;
  auto row_op = [&](int dst, int src, long long f) {  // row dst += f*row src
    for (int j = 0; j < D.cols; ++j) D(dst, j) = checked_add(D(dst, j), checked_mul(f, D(src, j)));
    for (int j = 0; j < s.U.cols; ++j) s.U(dst, j) = checked_add(s.U(dst, j), checked_mul(f, s.U(src, j)));
  };
  auto col_op = [&](int dst, int src, long long f) {
    for (int i = 0; i < D.rows; ++i) D(i, dst) = checked_add(D(i, dst), checked_mul(f, D(i, src)));
    for (int i = 0; i < s.V.rows; ++i) s.V(i, dst) = checked_add(s.V(i, dst), checked_mul(f, s.V(i, src)));
  };
  auto swap_rows = [&](int i, int k) {
    for (int j = 0; j < D.cols; ++j) std::swap(D(i, j), D(k, j));
    for (int j = 0; j < s.U.cols; ++j) std::swap(s.U(i, j), s.U(k, j));
  };
  auto swap_cols = [&](int i, int k) {
    for (int r = 0; r < D.rows; ++r) std::swap(D(r, i), D(r, k));
    for (int r = 0; r < s.V.rows; ++r) std::swap(s.V(r, i), s.V(r, k));
  };
  auto negate_row = [&](int i) {
    for (int j = 0; j < D.cols; ++j) D(i, j) = -D(i, j);
    for (int j = 0; j < s.U.cols; ++j) s.U(i, j) = -s.U(i, j);
  };

  int n = std::min(D.rows, D.cols);
  for (int t = 0; t < n; ++t) {
    // pivot: smallest nonzero absolute value in the trailing block
    for (;;) {
      int pi = -1, pj = -1;
      long long best = 0;
      for (int i = t; i < D.rows; ++i)
        for (int j = t; j < D.cols; ++j)
          if (D(i, j) && (pi < 0 || std::llabs(D(i, j)) < best)) {
            best = std::llabs(D(i, j));
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        s.rank = t;
        goto done;
      }
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (int i = t + 1; i < D.rows; ++i) {
        long long q = D(i, t) / D(t, t);
        if (q) row_op(i, t, -q);
        if (D(i, t)) clean = false;
      }
      for (int j = t + 1; j < D.cols; ++j) {
        long long q = D(t, j) / D(t, t);
        if (q) col_op(j, t, -q);
        if (D(t, j)) clean = false;
      }
      if (!clean) continue;
      // divisibility of the trailing block
      int bad = -1;
      for (int i = t + 1; i < D.rows && bad < 0; ++i)
        for (int j = t + 1; j < D.cols; ++j)
          if (D(i, j) % D(t, t)) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_op(t, bad, 1);
    }
    if (D(t, t) < 0) negate_row(t);
    s.rank = t + 1;
  }
done:
  for (int t = 0; t < s.rank; ++t) s.invariants.push_back(D(t, t));
  return s;
}

/// Z-basis of the integer kernel of A, as columns.
inline ZMatrix integer_kernel(const ZMatrix& A) {
  SmithForm s = smith(A);
  ZMatrix K(A.cols, A.cols - s.rank);
  for (int j = s.rank; j < A.cols; ++j)
    for (int i = 0; i < A.cols; ++i) K(i, j - s.rank) = s.V(i, j);
  return K;
}

/// Some integer solution of A x = b, if one exists.
inline std::optional<std::vector<long long>> integer_solve(const ZMatrix& A, const std::vector<long long>& b) {
  SmithForm s = smith(A);
  std::vector<long long> c = s.U.apply(b);
  std::vector<long long> y(A.cols, 0);
  for (int i = 0; i < A.rows; ++i) {
    if (i < s.rank) {
      if (c[i] % s.D(i, i)) return std::nullopt;
      y[i] = c[i] / s.D(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(y);
}

inline int integer_rank(const ZMatrix& A) { return smith(A).rank; }

/// Characteristic polynomial coefficients det(xI - A), lowest degree first (Faddeev-LeVerrier;
/// every division is exact for integer matrices).
inline std::vector<long long> integer_charpoly(const ZMatrix& A) {
  int n = A.rows;
  std::vector<long long> c(n + 1, 0);
  c[n] = 1;
  ZMatrix M(n, n);
  for (int k = 1; k <= n; ++k) {
    ZMatrix t = A * M;
    for (int i = 0; i < n; ++i) t(i, i) = detail::checked_add(t(i, i), c[n - k + 1]);
    M = t;
    ZMatrix am = A * M;
    long long tr = 0;
    for (int i = 0; i < n; ++i) tr = detail::checked_add(tr, am(i, i));
    if (tr % k) throw std::logic_error("inexact Faddeev-LeVerrier step");
    c[n - k] = -tr / k;
  }
  return c;
}

}  // namespace k3sym
