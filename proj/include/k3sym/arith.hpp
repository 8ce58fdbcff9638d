#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3sym {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// ~100 significant decimal digits, enough for every embedding we print
using Real = boost::multiprecision::cpp_bin_float_100;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  return Rational(Integer(num), Integer(den));
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline long to_long(const Rational& q) {
  if (!is_integer(q)) throw std::domain_error("not an integer: " + q.str());
  return numerator(q).convert_to<long>();
}

inline long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

inline long gcd(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long lcm(long a, long b) { return a / gcd(a, b) * b; }

// inverse of a modulo n, requires gcd(a, n) == 1
inline long inv_mod(long a, long n) {
  long t = 0, nt = 1, r = n, nr = mod(a, n);
  while (nr) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("not invertible mod " + std::to_string(n));
  return mod(t, n);
}

inline int euler_phi(long n) {
  int phi = 0;
  for (long k = 1; k <= n; ++k)
    if (gcd(k, n) == 1) ++phi;
  return phi;
}

inline int moebius(long n) {
  int mu = 1;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Real to_real(const Rational& q) {
  return Real(numerator(q)) / Real(denominator(q));
}

/// Fixed-point decimal rendering with `places` digits after the point.
inline std::string decimal(const Real& x, int places = 5) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(places);
  os << x;
  std::string s = os.str();
  // avoid "-0.00000"
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string decimal(const Rational& q, int places = 5) { return decimal(to_real(q), places); }

/// Dense polynomial, coefficient i multiplies x^i. Kept trimmed (no leading zeros).
template <class T>
class Poly {
public:
  Poly() = default;
  Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
  static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
  static Poly monomial(int deg, const T& a = T(1)) {
    std::vector<T> c(deg + 1, T(0));
    c[deg] = a;
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : T(0); }
  T lead() const { return c_.empty() ? T(0) : c_.back(); }

  Poly operator+(const Poly& o) const {
    std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
  }
  Poly operator-() const {
    std::vector<T> r = c_;
    for (auto& a : r) a = -a;
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<T> r(c_.size() + o.c_.size() - 1, T(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
  }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  /// Quotient and remainder; exact when T is a field or the divisor is monic.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<T> r = c_;
    int dd = d.degree();
    if (degree() < dd) return {Poly(), *this};
    std::vector<T> q(degree() - dd + 1, T(0));
    for (int i = degree(); i >= dd; --i) {
      if (r[i] == 0) continue;
      T f = r[i] / d.lead();
      if (f * d.lead() != r[i]) throw std::domain_error("inexact polynomial division");
      q[i - dd] = f;
      for (int j = 0; j <= dd; ++j) r[i - dd + j] -= f * d.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
    return Poly(std::move(r));
  }

  Poly monic() const {
    if (is_zero()) return {};
    std::vector<T> r = c_;
    T l = lead();
    for (auto& a : r) a /= l;
    return Poly(std::move(r));
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      T a = c_[i];
      if (a == 0) continue;
      bool neg = a < 0;
      if (neg) a = -a;
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      bool unit = a == 1;
      if (!unit || i == 0) os << a;
      if (i > 0) os << (unit ? "" : "*") << var << (i > 1 ? "^" + std::to_string(i) : "");
    }
    return os.str();
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

using QPoly = Poly<Rational>;
using ZPoly = Poly<Integer>;

inline QPoly to_qpoly(const ZPoly& p) {
  std::vector<Rational> c;
  for (const auto& a : p.coeffs()) c.emplace_back(a);
  return QPoly(std::move(c));
}

/// Row-major dense matrix over rationals.
struct QMatrix {
  int rows = 0, cols = 0;
  std::vector<Rational> a;
  QMatrix() = default;
  QMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rational(0)) {}
  Rational& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rational& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  static QMatrix identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  QMatrix operator*(const QMatrix& o) const {
    QMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (int j = 0; j < o.cols; ++j) r(i, j) += (*this)(i, k) * o(k, j);
      }
    return r;
  }
};

/// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier.
inline QPoly charpoly(const QMatrix& m) {
  int n = m.rows;
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  QMatrix mk(n, n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    QMatrix t = m * mk;
    for (int i = 0; i < n; ++i) t(i, i) += c[n - k + 1];
    mk = t;
    QMatrix am = m * mk;
    Rational tr = 0;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / k;
  }
  return QPoly(std::move(c));
}

/// Solves M x = b; throws if M is singular.
inline std::vector<Rational> solve(QMatrix m, std::vector<Rational> b) {
  int n = m.rows;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("singular system");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      std::swap(b[piv], b[col]);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m(r, col) == 0) continue;
      Rational f = m(r, col) / m(col, col);
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
      b[r] -= f * b[col];
    }
  }
  for (int i = 0; i < n; ++i) b[i] /= m(i, i);
  return b;
}

inline int rank(QMatrix m) {
  int r = 0;
  for (int col = 0; col < m.cols && r < m.rows; ++col) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (m(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    for (int i = r + 1; i < m.rows; ++i) {
      if (m(i, col) == 0) continue;
      Rational f = m(i, col) / m(r, col);
      for (int j = col; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

inline Rational determinant(QMatrix m) {
  int n = m.rows;
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      Rational f = m(r, col) / m(col, col);
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

}  // namespace k3sym
