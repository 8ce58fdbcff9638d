#pragma once

#include "sgnperm.hpp"

namespace k3sym {

/// Z[Z_p]-lattice Z[Z_p]^r + Z[mu_p]^s + Z^t.
struct RepDecomp {
  int r = 0, s = 0, t = 0;
  int rank(int p) const { return p * r + (p - 1) * s + t; }
  int trace() const { return t - s; }  // of any non-identity element
  int fixed_rank() const { return r + t; }
  bool operator==(const RepDecomp& o) const { return r == o.r && s == o.s && t == o.t; }
  bool operator<(const RepDecomp& o) const { return std::tie(r, s, t) < std::tie(o.r, o.s, o.t); }
  std::string str() const {
    return "(" + std::to_string(r) + "," + std::to_string(s) + "," + std::to_string(t) + ")";
  }
};

/// Admissible decompositions of a rank-8 E8 lattice under a nontrivial Z_p action:
/// s even, the trivial module excluded, and r = 0 only when s or t vanishes.
inline std::vector<RepDecomp> lemma45_census(int p, int rank = 8) {
  if (!is_prime(p) || p < 3) throw std::invalid_argument("census needs an odd prime");
  std::vector<RepDecomp> out;
  for (int r = 0; p * r <= rank; ++r)
    for (int s = 0; p * r + (p - 1) * s <= rank; ++s) {
      int t = rank - p * r - (p - 1) * s;
      if (s % 2) continue;
      if (r == 0 && s == 0) continue;
      if (r == 0 && s > 0 && t > 0) continue;
      out.push_back({r, s, t});
    }
  std::sort(out.begin(), out.end(), [](const RepDecomp& a, const RepDecomp& b) {
    return std::make_tuple(-a.t, a.s) < std::make_tuple(-b.t, b.s);
  });
  return out;
}

inline ZMatrix matrix_power(const ZMatrix& g, int k) {
  ZMatrix r = ZMatrix::identity(g.rows);
  for (int i = 0; i < k; ++i) r = r * g;
  return r;
}

inline ZPoly rep_charpoly(const RepDecomp& d, int p) {
  ZPoly xp = ZPoly::monomial(p) - ZPoly::constant(1);
  ZPoly phi = xp.divmod(ZPoly::monomial(1) - ZPoly::constant(1)).first;
  ZPoly cp = ZPoly::constant(1);
  for (int i = 0; i < d.r; ++i) cp = cp * xp;
  for (int i = 0; i < d.s; ++i) cp = cp * phi;
  for (int i = 0; i < d.t; ++i) cp = cp * (ZPoly::monomial(1) - ZPoly::constant(1));
  return cp;
}

/// Decomposition of Z^n under g of prime order p. The fixed rank gives r + t;
/// the invariants modulo norms, M^G / N M = (Z/p)^t, separate r from t.
inline RepDecomp decompose_module(const ZMatrix& g, int p) {
  int n = g.rows;
  if (!(matrix_power(g, p) == ZMatrix::identity(n))) throw std::invalid_argument("g^p != 1");
  ZMatrix K = integer_kernel(g - ZMatrix::identity(n));
  int f = K.cols;
  ZMatrix N(n, n);
  for (int k = 0; k < p; ++k) N = N + matrix_power(g, k);
  ZMatrix C(f, n);
  for (int j = 0; j < n; ++j) {
    auto c = integer_solve(K, N.column(j));
    if (!c) throw std::logic_error("norm image outside the fixed lattice");
    for (int i = 0; i < f; ++i) C(i, j) = (*c)[i];
  }
  SmithForm sf = smith(C);
  if (sf.rank != f) throw std::logic_error("norm image has lower rank than the fixed lattice");
  RepDecomp d;
  for (long long inv : sf.invariants) {
    if (inv != 1 && inv != p) throw std::logic_error("unexpected invariant factor " + std::to_string(inv));
    d.t += inv == p;
  }
  d.r = f - d.t;
  int rest = n - p * d.r - d.t;
  if (rest < 0 || rest % (p - 1)) throw std::logic_error("rank does not split");
  d.s = rest / (p - 1);
  auto cp = integer_charpoly(g);
  ZPoly expect = rep_charpoly(d, p);
  for (int i = 0; i <= n; ++i)
    if (expect[i] != cp[i]) throw std::logic_error("characteristic polynomial mismatch");
  return d;
}

inline RepDecomp decompose_element(const Isometry& g, int p) { return decompose_module(g.basis_matrix(), p); }
inline RepDecomp decompose_element(const SignedPerm& g, int p) { return decompose_element(g.isometry(), p); }

/// Random elements of H of order p (powers of random elements).
inline std::vector<SignedPerm> sample_order_p(int p, size_t count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SignedPerm> out;
  while (out.size() < count) {
    SignedPerm h = random_H(rng);
    int o = order_trace_charpoly(h).order;
    if (o % p) continue;
    out.push_back(h.power(o / p));
  }
  return out;
}

// ------------------------------------------------------------ lifting

enum class SummandType { Trivial, Regular, Cyclotomic };

inline const char* summand_name(SummandType t) {
  switch (t) {
    case SummandType::Trivial: return "trivial";
    case SummandType::Regular: return "regular";
    case SummandType::Cyclotomic: return "cyclotomic";
  }
  return "?";
}

struct LiftResult {
  bool exists = false;
  std::vector<long long> lift;                   // preimage generating an isomorphic summand
  std::vector<std::vector<long long>> generators;  // its orbit
  std::string diagnosis;
};

/// Given g of order p on Z^n, an invariant saturated sublattice S (basis in columns) and a
/// vector y whose image generates a summand of the given type in Z^n/S, look for a
/// preimage y + s generating a summand of the same type in Z^n.
inline LiftResult lift_summand(const ZMatrix& g, int p, const ZMatrix& S, const std::vector<long long>& y,
                               SummandType type) {
  int n = g.rows;
  if (!(matrix_power(g, p) == ZMatrix::identity(n))) throw std::invalid_argument("g^p != 1");
  ZMatrix gS = g * S;
  for (int j = 0; j < S.cols; ++j)
    if (!integer_solve(S, gS.column(j))) throw std::invalid_argument("sublattice is not invariant");
  ZMatrix N(n, n);
  for (int k = 0; k < p; ++k) N = N + matrix_power(g, k);
  ZMatrix I = ZMatrix::identity(n);

  auto in_S = [&](const std::vector<long long>& v) { return integer_solve(S, v).has_value(); };
  auto add = [](std::vector<long long> a, const std::vector<long long>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };
  auto neg = [](std::vector<long long> a) {
    for (auto& x : a) x = -x;
    return a;
  };

  LiftResult res;
  ZMatrix A;  // the lift condition is A (y + S c) = 0
  if (type == SummandType::Trivial) {
    A = g - I;
    if (!in_S(A.apply(y))) throw std::invalid_argument("image of y is not fixed in the quotient");
  } else if (type == SummandType::Cyclotomic) {
    A = N;
    if (!in_S(A.apply(y))) throw std::invalid_argument("norm of y is nonzero in the quotient");
  } else {
    // any preimage of a free generator generates a free summand
    res.exists = true;
    res.lift = y;
    std::vector<long long> cur = y;
    for (int k = 0; k < p; ++k) {
      res.generators.push_back(cur);
      cur = g.apply(cur);
    }
    res.diagnosis = "regular summand lifts to the orbit of any preimage";
    return res;
  }
  auto c = integer_solve(A * S, neg(A.apply(y)));
  if (!c) {
    res.diagnosis = std::string("no preimage of the ") + summand_name(type) + " generator satisfies the lift condition";
    return res;
  }
  res.exists = true;
  res.lift = add(y, S.apply(*c));
  std::vector<long long> cur = res.lift;
  int len = type == SummandType::Trivial ? 1 : p - 1;
  for (int k = 0; k < len; ++k) {
    res.generators.push_back(cur);
    cur = g.apply(cur);
  }
  res.diagnosis = std::string(summand_name(type)) + " summand lifts";
  return res;
}

/// A vector with small entries whose orbit under g is a Z-basis, when the module is Z[Z_p].
inline std::optional<std::vector<long long>> free_generator(const ZMatrix& g, int p, int bound = 2) {
  int n = g.rows;
  if (n != p) return std::nullopt;
  std::vector<long long> v(n, -bound);
  for (;;) {
    ZMatrix B(n, n);
    std::vector<long long> cur = v;
    for (int k = 0; k < p; ++k) {
      for (int i = 0; i < n; ++i) B(i, k) = cur[i];
      cur = g.apply(cur);
    }
    SmithForm sf = smith(B);
    if (sf.rank == n && sf.invariants.back() == 1) return v;
    int i = 0;
    while (i < n && v[i] == bound) v[i++] = -bound;
    if (i == n) return std::nullopt;
    ++v[i];
  }
}

}  // namespace k3sym
