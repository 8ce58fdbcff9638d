#pragma once

#include "arith.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace k3sym {

namespace detail {

/// Cyclotomic polynomial Phi_n as the Moebius product of (x^d - 1)^mu(n/d).
inline ZPoly cyclotomic_poly(long n) {
  ZPoly num = ZPoly::constant(1), den = ZPoly::constant(1);
  for (long d = 1; d <= n; ++d) {
    if (n % d) continue;
    int mu = moebius(n / d);
    if (mu == 0) continue;
    ZPoly f = ZPoly::monomial(static_cast<int>(d)) - ZPoly::constant(1);
    (mu > 0 ? num : den) = (mu > 0 ? num : den) * f;
  }
  auto [q, r] = num.divmod(den);
  if (!r.is_zero()) throw std::logic_error("cyclotomic polynomial construction failed");
  return q;
}

/// Power-basis data for Q(zeta_n): reduction of zeta^k, 0 <= k < n.
struct FieldData {
  long n;
  int phi;
  ZPoly modulus;
  std::vector<std::vector<long>> powers;  // powers[k][j]: coefficient of zeta^j in zeta^k
};

inline const FieldData& field(long n) {
  static std::mutex m;
  static std::map<long, std::unique_ptr<FieldData>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto f = std::make_unique<FieldData>();
  f->n = n;
  f->modulus = cyclotomic_poly(n);
  f->phi = f->modulus.degree();
  f->powers.assign(n, std::vector<long>(f->phi, 0));
  std::vector<long> cur(f->phi, 0);
  cur[0] = 1;
  for (long k = 0; k < n; ++k) {
    f->powers[k] = cur;
    // multiply by zeta, reduce with the monic modulus
    std::vector<long> nxt(f->phi, 0);
    long top = cur[f->phi - 1];
    for (int j = f->phi - 1; j > 0; --j) nxt[j] = cur[j - 1];
    nxt[0] = 0;
    if (top != 0)
      for (int j = 0; j < f->phi; ++j) nxt[j] -= top * f->modulus[j].convert_to<long>();
    cur = nxt;
  }
  return *cache.emplace(n, std::move(f)).first->second;
}

inline long canonical_conductor(long n) { return n % 4 == 2 ? n / 2 : n; }

}  // namespace detail

struct Embedding {
  Real re, im;
};

/// Exact element of Q(mu_n), stored in the power basis 1, z, ..., z^(phi(n)-1).
class CycNum {
public:
  CycNum() : n_(1), c_(1, Rational(0)) {}
  CycNum(const Rational& q) : n_(1), c_(1, q) {}
  CycNum(long q) : CycNum(Rational(q)) {}

  static CycNum zeta(long n, long k) {
    if (n <= 0) throw std::invalid_argument("conductor must be positive");
    long sign = 1;
    if (n % 4 == 2) {
      // zeta_n = -zeta_m^((m+1)/2) with m = n/2 odd
      long m = n / 2;
      if (mod(k, 2)) sign = -1;
      k = k * ((m + 1) / 2);
      n = m;
    }
    const auto& f = detail::field(n);
    CycNum r;
    r.n_ = n;
    r.c_.assign(f.phi, Rational(0));
    const auto& pw = f.powers[mod(k, n)];
    for (int j = 0; j < f.phi; ++j) r.c_[j] = sign * pw[j];
    return r;
  }

  long conductor() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  /// The same element written over Q(mu_L); n_ must divide L.
  CycNum promote(long L) const {
    L = detail::canonical_conductor(L);
    if (L == n_) return *this;
    if (L % n_) throw std::invalid_argument("conductor does not divide target");
    const auto& f = detail::field(L);
    CycNum r;
    r.n_ = L;
    r.c_.assign(f.phi, Rational(0));
    long step = L / n_;
    for (size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      const auto& pw = f.powers[mod(static_cast<long>(j) * step, L)];
      for (int i = 0; i < f.phi; ++i)
        if (pw[i]) r.c_[i] += c_[j] * pw[i];
    }
    return r;
  }

  CycNum operator+(const CycNum& o) const {
    long L = lcm(n_, o.n_);
    CycNum a = promote(L), b = o.promote(L);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  CycNum operator-() const {
    CycNum r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  CycNum operator-(const CycNum& o) const { return *this + (-o); }
  CycNum operator*(const CycNum& o) const {
    long L = lcm(n_, o.n_);
    CycNum a = promote(L), b = o.promote(L);
    const auto& f = detail::field(L);
    CycNum r;
    r.n_ = L;
    r.c_.assign(f.phi, Rational(0));
    for (int i = 0; i < f.phi; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < f.phi; ++j) {
        if (b.c_[j] == 0) continue;
        Rational t = a.c_[i] * b.c_[j];
        const auto& pw = f.powers[(i + j) % L];
        for (int k = 0; k < f.phi; ++k)
          if (pw[k]) r.c_[k] += t * pw[k];
      }
    }
    return r;
  }
  CycNum inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    QMatrix m = mult_matrix();
    std::vector<Rational> e(c_.size(), Rational(0));
    e[0] = 1;
    CycNum r;
    r.n_ = n_;
    r.c_ = solve(m, e);
    return r;
  }
  CycNum operator/(const CycNum& o) const { return *this * o.inverse(); }
  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

  bool operator==(const CycNum& o) const {
    long L = lcm(n_, o.n_);
    return promote(L).c_ == o.promote(L).c_;
  }
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& a : c_)
      if (a != 0) return false;
    return true;
  }

  /// Image under zeta -> zeta^k, gcd(k, n) = 1.
  CycNum galois(long k) const {
    if (gcd(k, n_) != 1) throw std::invalid_argument("Galois exponent not a unit");
    CycNum r(0);
    for (size_t j = 0; j < c_.size(); ++j)
      if (c_[j] != 0) r += CycNum(c_[j]) * zeta(n_, static_cast<long>(j) * k);
    return r.promote(n_);
  }
  CycNum conj() const { return galois(-1); }

  /// Matrix of multiplication by this element in the power basis (columns = images of basis vectors).
  QMatrix mult_matrix() const {
    int phi = static_cast<int>(c_.size());
    QMatrix m(phi, phi);
    for (int j = 0; j < phi; ++j) {
      CycNum col = *this * zeta(n_, j);
      col = col.promote(n_);
      for (int i = 0; i < phi; ++i) m(i, j) = col.c_[i];
    }
    return m;
  }

  std::optional<Rational> as_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return std::nullopt;
    return c_[0];
  }

  Embedding embed() const {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    Real two_pi = 2 * boost::math::constants::pi<Real>();
    Embedding e{Real(0), Real(0)};
    for (size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      Real t = two_pi * Real(static_cast<long>(j)) / Real(n_);
      Real a = to_real(c_[j]);
      e.re += a * cos(t);
      e.im += a * sin(t);
    }
    return e;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      Rational a = c_[j];
      bool neg = a < 0;
      if (neg) a = -a;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      first = false;
      if (j == 0)
        os << a;
      else {
        if (a != 1) os << a << "*";
        os << "z" << n_ << (j > 1 ? "^" + std::to_string(j) : "");
      }
    }
    return first ? "0" : os.str();
  }

private:
  long n_;
  std::vector<Rational> c_;
};

inline CycNum operator+(long a, const CycNum& b) { return CycNum(a) + b; }
inline CycNum operator-(long a, const CycNum& b) { return CycNum(a) - b; }
inline CycNum operator*(long a, const CycNum& b) { return CycNum(a) * b; }

inline CycNum cyc_make(long n, long k) { return CycNum::zeta(n, k); }

/// (1+z^a)(1+z^b)/((1-z^a)(1-z^b)) for z = zeta_p; equals -cot(a pi/p) cot(b pi/p).
inline CycNum cot_product(long p, long a, long b) {
  if (mod(a, p) == 0 || mod(b, p) == 0) throw std::invalid_argument("cot_product: exponent divisible by p");
  CycNum za = cyc_make(p, a), zb = cyc_make(p, b);
  return ((1 + za) * (1 + zb)) / ((1 - za) * (1 - zb));
}

/// 4/((1-z^c)(1-z^-c)) = csc^2(c pi/p).
inline CycNum csc_squared(long p, long c) {
  if (mod(c, p) == 0) throw std::invalid_argument("csc_squared: exponent divisible by p");
  return CycNum(4) / ((1 - cyc_make(p, c)) * (1 - cyc_make(p, -c)));
}

/// csc(c pi/p) cot(c pi/p) = cos / sin^2, written with zeta_2p.
inline CycNum csc_cot(long p, long c) {
  if (mod(c, p) == 0) throw std::invalid_argument("csc_cot: exponent divisible by p");
  CycNum cosine = (cyc_make(2 * p, c) + cyc_make(2 * p, -c)) * CycNum(make_rational(1, 2));
  return cosine * csc_squared(p, c);
}

struct RealValue {
  Real re, im;
  std::string text;  // real part to the requested digits
};

/// Complex embedding zeta_n -> exp(2 pi i/n); digits capped at 60.
inline RealValue embed_real(const CycNum& x, int digits = 5) {
  if (digits < 0 || digits > 60) throw std::invalid_argument("digits must be in [0, 60]");
  Embedding e = x.embed();
  return {e.re, e.im, decimal(e.re, digits)};
}

inline std::optional<Rational> as_rational(const CycNum& x) { return x.as_rational(); }

/// Minimal polynomial over Q: squarefree part of the characteristic polynomial of multiplication.
inline QPoly minimal_polynomial(const CycNum& x) {
  QPoly cp = charpoly(x.mult_matrix());
  QPoly g = poly_gcd(cp, cp.derivative());
  return cp.divmod(g).first.monic();
}

}  // namespace k3sym
