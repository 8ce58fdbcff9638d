#pragma once

#include "cyclotomic.hpp"

#include <json.hpp>

#include <fstream>
#include <map>

namespace k3sym {

/// Local data of g at its fixed points: g acts on the tangent space at an isolated point
/// by (mu^a, mu^b), and on the normal bundle of a fixed surface by mu^c.
struct IsolatedPoint {
  long a, b;
  bool operator==(const IsolatedPoint&) const = default;
  auto operator<=>(const IsolatedPoint&) const = default;
};

struct FixedSurface {
  long genus = 0;
  long selfint = 0;
  long c = 1;
  bool operator==(const FixedSurface&) const = default;
};

/// (a,b) up to order and simultaneous sign: the lexicographically least representative.
inline IsolatedPoint canonical_pair(long p, long a, long b) {
  a = mod(a, p);
  b = mod(b, p);
  IsolatedPoint best{a, b};
  for (IsolatedPoint c : {IsolatedPoint{b, a}, IsolatedPoint{mod(-a, p), mod(-b, p)}, IsolatedPoint{mod(-b, p), mod(-a, p)}})
    if (c < best) best = c;
  return best;
}

struct FixedPointData {
  long p = 5;
  std::vector<IsolatedPoint> isolated;
  std::vector<FixedSurface> surfaces;

  void validate() const {
    if (p < 2) throw std::invalid_argument("order must be at least 2");
    for (const auto& m : isolated)
      if (gcd(m.a, p) != 1 || gcd(m.b, p) != 1 || m.a <= 0 || m.b <= 0 || m.a >= p || m.b >= p)
        throw std::invalid_argument("rotation numbers must be units in (0, p)");
    for (const auto& y : surfaces)
      if (gcd(y.c, p) != 1 || y.c <= 0 || y.c >= p || y.genus < 0)
        throw std::invalid_argument("normal rotation number must be a unit in (0, p)");
  }

  /// The same fixed set seen by g^k.
  FixedPointData power(long k) const {
    if (gcd(k, p) != 1) throw std::invalid_argument("power must be prime to the order");
    FixedPointData r{p, {}, surfaces};
    for (const auto& m : isolated) r.isolated.push_back({mod(k * m.a, p), mod(k * m.b, p)});
    for (auto& y : r.surfaces) y.c = mod(k * y.c, p);
    return r;
  }

  long euler_characteristic() const {
    long chi = static_cast<long>(isolated.size());
    for (const auto& y : surfaces) chi += 2 - 2 * y.genus;
    return chi;
  }

  /// Multiset of canonical pairs, for comparison up to the symmetries of (a,b).
  std::vector<IsolatedPoint> canonical() const {
    std::vector<IsolatedPoint> out;
    for (const auto& m : isolated) out.push_back(canonical_pair(p, m.a, m.b));
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// L(g, M) for a simply connected closed 4-manifold, from the trace on H_2.
inline long lefschetz(long trace_h2) { return 2 + trace_h2; }

/// Sign(g, M) by the fixed-point formula: -cot cot at points, csc^2 (Y.Y) along surfaces.
inline CycNum signature_g(const FixedPointData& d) {
  d.validate();
  CycNum s(0);
  for (const auto& m : d.isolated) s = s + cot_product(d.p, m.a, m.b);
  for (const auto& y : d.surfaces) s = s + csc_squared(d.p, y.c) * CycNum(y.selfint);
  return s;
}

inline Rational require_rational(const CycNum& x, const char* what) {
  auto q = x.as_rational();
  if (!q) throw std::logic_error(std::string(what) + " is not rational: " + x.str());
  return *q;
}

/// def(p, q) = sum over k of (1+z^k)(1+z^kq)/((1-z^k)(1-z^kq)).
inline Rational signature_defect(long p, long q) {
  if (p < 2 || gcd(q, p) != 1) throw std::invalid_argument("signature_defect: q must be a unit mod p");
  CycNum s(0);
  for (long k = 1; k < p; ++k) s = s + cot_product(p, k, k * q);
  return require_rational(s, "signature defect");
}

/// Dedekind sum s(q, p) = sum ((k/p)) ((kq/p)).
inline Rational dedekind_sum(long q, long p) {
  auto saw = [](const Rational& x) -> Rational {
    if (is_integer(x)) return Rational(0);
    Integer fl = numerator(x) / denominator(x);
    if (x < 0) fl -= 1;
    return x - Rational(fl) - make_rational(1, 2);
  };
  Rational s = 0;
  for (long k = 1; k < p; ++k) s += saw(make_rational(k, p)) * saw(make_rational(k * q, p));
  return s;
}

/// Defect of an isolated point with rotation numbers (a, b).
inline Rational point_defect(long p, const IsolatedPoint& m) { return signature_defect(p, m.b * inv_mod(m.a, p)); }

/// Defect of a fixed surface: (p^2 - 1)/3 (Y.Y).
inline Rational surface_defect(long p, long selfint) { return make_rational((p * p - 1) * selfint, 3); }

inline Rational total_defect(const FixedPointData& d) {
  d.validate();
  Rational s = 0;
  for (const auto& m : d.isolated) s += point_defect(d.p, m);
  for (const auto& y : d.surfaces) s += surface_defect(d.p, y.selfint);
  return s;
}

/// Sign(M/G) from |G| Sign(M/G) = Sign(M) + total defect; throws unless integral.
inline Rational orbifold_signature(long p, long sign_m, const Rational& defect) {
  Rational r = (Rational(sign_m) + defect) / Rational(p);
  if (!is_integer(r)) throw std::logic_error("orbifold signature is not an integer");
  return r;
}

inline Rational orbifold_signature(long sign_m, const FixedPointData& d) {
  return orbifold_signature(d.p, sign_m, total_defect(d));
}

// ----------------------------------------------------------------- spin

/// Spin(g, M) = sum d_k mu^k, normalised so that sum d_k is the index of the Dirac operator.
struct SpinVector {
  std::vector<long> d;

  long sum() const {
    long s = 0;
    for (long x : d) s += x;
    return s;
  }
  bool valid() const {
    if (d.empty() || d[0] % 2) return false;
    long p = static_cast<long>(d.size());
    for (long k = 1; k < p; ++k)
      if (d[k] != d[p - k]) return false;
    return true;
  }
  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
  }
  bool operator==(const SpinVector&) const = default;
};

/// Contribution mu^r / ((1 - mu^-a)(1 - mu^-b)) with 2r + a + b = 0 mod p.
inline CycNum spin_point_term(long p, long a, long b) {
  long r = mod(-(a + b) * inv_mod(2, p), p);
  return cyc_make(p, r) / ((1 - cyc_make(p, -a)) * (1 - cyc_make(p, -b)));
}

/// Contribution (-1)^k (Y.Y)/4 csc(c pi/p) cot(c pi/p), where kp = 2r + c with 0 < r < p.
inline CycNum spin_surface_term(long p, long c, long selfint) {
  long r = mod(-c * inv_mod(2, p), p);
  if (r == 0) r = p;
  long k = (2 * r + c) / p;
  Rational coef = make_rational(k % 2 ? -selfint : selfint, 4);
  return CycNum(coef) * csc_cot(p, c);
}

inline CycNum spin_value(const FixedPointData& d) {
  d.validate();
  if (d.p % 2 == 0 || !is_prime(d.p)) throw std::invalid_argument("spin numbers need an odd prime order");
  CycNum s(0);
  for (const auto& m : d.isolated) s = s + spin_point_term(d.p, m.a, m.b);
  for (const auto& y : d.surfaces) s = s + spin_surface_term(d.p, y.c, y.selfint);
  return s;
}

/// Coefficients of x in the basis 1, mu, ..., mu^(p-1), shifted by a multiple of (1,...,1)
/// so that they sum to index.
inline SpinVector to_spin_vector(const CycNum& x, long p, long index) {
  CycNum y = x.promote(p);
  const auto& c = y.coeffs();
  SpinVector v;
  v.d.assign(p, 0);
  long total = 0;
  for (long k = 0; k + 1 < p; ++k) {
    if (!is_integer(c[k])) throw std::logic_error("spin number is not an algebraic integer: " + x.str());
    v.d[k] = to_long(c[k]);
    total += v.d[k];
  }
  if ((index - total) % p) throw std::logic_error("spin number cannot be normalised to index " + std::to_string(index));
  long lambda = (index - total) / p;
  for (auto& e : v.d) e += lambda;
  if (!v.valid()) throw std::logic_error("spin vector violates parity or symmetry: " + v.str());
  return v;
}

struct SpinResult {
  CycNum value;
  SpinVector vec;
};

inline SpinResult spin_number(const FixedPointData& d, long index = 2) {
  CycNum v = spin_value(d);
  return {v, to_spin_vector(v, d.p, index)};
}

// -------------------------------------------------------------- filters

enum class Verdict { RuledOut, Survives };

inline const char* verdict_name(Verdict v) { return v == Verdict::RuledOut ? "ruled_out" : "survives"; }

/// If 2 d_k <= b2+ - 1 for all k then SW = 0 mod p; contradiction when SW is a unit mod p.
inline Verdict fang_test(const SpinVector& v, long b2plus, bool sw_nonzero_mod_p) {
  bool small = std::all_of(v.d.begin(), v.d.end(), [&](long x) { return 2 * x <= b2plus - 1; });
  return small && sw_nonzero_mod_p ? Verdict::RuledOut : Verdict::Survives;
}

/// Index of the Dirac operator on M/G must vanish or lie strictly inside (-b2-, b2+).
inline Verdict furuta_test(long index, long b2plus_quot, long b2minus_quot) {
  if (index == 0 || (-b2minus_quot < index && index < b2plus_quot)) return Verdict::Survives;
  return Verdict::RuledOut;
}

// ------------------------------------------------------ lens spaces

struct LensSpace {
  long p, q;
  bool operator==(const LensSpace&) const = default;
  auto operator<=>(const LensSpace&) const = default;
  std::string str() const { return "L(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
};

/// Link of an isolated fixed point with rotation numbers (a, b): L(p, b a^-1).
inline LensSpace link_of(long p, const IsolatedPoint& m) { return {p, mod(m.b * inv_mod(m.a, p), p)}; }

/// L(p,q) and L(p,q^-1) are orientation-preservingly homeomorphic.
inline LensSpace canonical_lens(const LensSpace& l) {
  long qi = inv_mod(l.q, l.p);
  return {l.p, std::min(mod(l.q, l.p), qi)};
}

struct RochlinEntry {
  long value;
  std::string source;
};

class RochlinTable {
public:
  static RochlinTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    RochlinTable t;
    for (const auto& e : j.at("entries"))
      t.entries_[canonical_lens({e.at("p").get<long>(), e.at("q").get<long>()})] = {e.at("value").get<long>(),
                                                                                  e.at("source").get<std::string>()};
    return t;
  }
  static std::string default_path() {
#ifdef K3SYM_DATA_DIR
    return std::string(K3SYM_DATA_DIR) + "/rochlin_lens.json";
#else
    return "data/rochlin_lens.json";
#endif
  }
  std::optional<RochlinEntry> find(const LensSpace& l) const {
    auto it = entries_.find(canonical_lens(l));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }
  size_t size() const { return entries_.size(); }

private:
  std::map<LensSpace, RochlinEntry> entries_;
};

struct KsResult {
  long roc_total = 0;
  long lhs = 0;  // Sign(N) + roc mod 16
  int ks = 0;
  bool consistent = true;  // lhs is 0 or 8 mod 16
  std::vector<std::string> missing;
};

/// 8 ks(N) = Sign(N) + roc(dN) mod 16.
inline KsResult ks_rochlin_test(const std::vector<LensSpace>& boundary, long sign_n, const RochlinTable& table) {
  KsResult r;
  for (const auto& l : boundary) {
    auto e = table.find(l);
    if (!e) {
      r.missing.push_back(l.str());
      continue;
    }
    r.roc_total += e->value;
  }
  if (!r.missing.empty()) {
    r.consistent = false;
    return r;
  }
  r.lhs = mod(sign_n + r.roc_total, 16);
  r.consistent = r.lhs % 8 == 0;
  r.ks = r.lhs == 8;
  return r;
}

}  // namespace k3sym
