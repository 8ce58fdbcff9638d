#pragma once

#include "e8.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace k3sym {

/// Element (eps)sigma of H = H0 x| S8 acting by e_i -> eps_{sigma(i)} e_{sigma(i)}.
/// Indices are 0-based; the sign vector has product +1.
struct SignedPerm {
  std::array<int8_t, 8> eps{1, 1, 1, 1, 1, 1, 1, 1};
  std::array<uint8_t, 8> perm{0, 1, 2, 3, 4, 5, 6, 7};

  static SignedPerm identity() { return {}; }

  static SignedPerm make(const std::array<int, 8>& signs, const std::array<int, 8>& p) {
    SignedPerm v;
    int prod = 1;
    std::array<bool, 8> seen{};
    for (int i = 0; i < 8; ++i) {
      if (signs[i] != 1 && signs[i] != -1) throw std::invalid_argument("signs must be +-1");
      if (p[i] < 0 || p[i] > 7 || seen[p[i]]) throw std::invalid_argument("not a permutation");
      seen[p[i]] = true;
      v.eps[i] = static_cast<int8_t>(signs[i]);
      v.perm[i] = static_cast<uint8_t>(p[i]);
      prod *= signs[i];
    }
    if (prod != 1) throw std::invalid_argument("sign vector must have product +1");
    return v;
  }

  /// Cycle notation with 1-based points, e.g. "(12)(34)" or "(1 2 3)"; digits may be unseparated.
  static SignedPerm from_cycles(const std::string& cycles, const std::array<int, 8>& signs = {1, 1, 1, 1, 1, 1, 1, 1}) {
    std::array<int, 8> p{0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<int> cur;
    auto close = [&] {
      for (size_t k = 0; k < cur.size(); ++k) p[cur[k]] = cur[(k + 1) % cur.size()];
      cur.clear();
    };
    for (char ch : cycles) {
      if (ch == '(') cur.clear();
      else if (ch == ')') close();
      else if (ch >= '1' && ch <= '8') cur.push_back(ch - '1');
      else if (ch != ' ' && ch != ',') throw std::invalid_argument("bad cycle string " + cycles);
    }
    return make(signs, p);
  }

  static SignedPerm diag(const std::array<int, 8>& signs) { return make(signs, {0, 1, 2, 3, 4, 5, 6, 7}); }

  SignedPerm operator*(const SignedPerm& o) const {
    // (eps, s)(del, t) = (eps_j del_{s^-1(j)}, s t)
    SignedPerm r;
    std::array<uint8_t, 8> sinv{};
    for (int i = 0; i < 8; ++i) sinv[perm[i]] = static_cast<uint8_t>(i);
    for (int j = 0; j < 8; ++j) {
      r.eps[j] = static_cast<int8_t>(eps[j] * o.eps[sinv[j]]);
      r.perm[j] = perm[o.perm[j]];
    }
    return r;
  }
  SignedPerm inverse() const {
    // (eps, s)^-1 = (eps'_j, s^-1) with eps'_j = eps_{s(j)}
    SignedPerm r;
    for (int i = 0; i < 8; ++i) r.perm[perm[i]] = static_cast<uint8_t>(i);
    for (int j = 0; j < 8; ++j) r.eps[j] = eps[perm[j]];
    return r;
  }
  SignedPerm operator-() const {
    SignedPerm r = *this;
    for (auto& s : r.eps) s = static_cast<int8_t>(-s);
    return r;
  }
  SignedPerm power(int k) const {
    SignedPerm r;
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }
  bool operator==(const SignedPerm& o) const { return eps == o.eps && perm == o.perm; }
  bool operator!=(const SignedPerm& o) const { return !(*this == o); }
  bool operator<(const SignedPerm& o) const { return code() < o.code(); }

  uint32_t code() const {
    uint32_t c = 0;
    for (int i = 0; i < 8; ++i) c = c << 3 | perm[i];
    for (int i = 0; i < 8; ++i) c = c << 1 | (eps[i] < 0);
    return c;
  }

  LatticeVec operator()(const LatticeVec& x) const {
    LatticeVec y;
    for (int i = 0; i < 8; ++i) y.d[perm[i]] = eps[perm[i]] * x.d[i];
    return y;
  }

  Isometry isometry() const {
    std::array<int, 64> m{};
    for (int i = 0; i < 8; ++i) m[perm[i] * 8 + i] = 4 * eps[perm[i]];
    return Isometry::from_quarter_entries(m);
  }

  bool perm_is_identity() const {
    for (int i = 0; i < 8; ++i)
      if (perm[i] != i) return false;
    return true;
  }
  int negative_signs() const {
    int n = 0;
    for (auto s : eps) n += s < 0;
    return n;
  }

  /// Cycles of the permutation part (0-based points), fixed points included.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::array<bool, 8> seen{};
    for (int i = 0; i < 8; ++i) {
      if (seen[i]) continue;
      std::vector<int> c;
      for (int j = i; !seen[j]; j = perm[j]) {
        seen[j] = true;
        c.push_back(j);
      }
      out.push_back(c);
    }
    return out;
  }

  long trace() const {
    long t = 0;
    for (int i = 0; i < 8; ++i)
      if (perm[i] == i) t += eps[i];
    return t;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < 8; ++i) s += eps[i] > 0 ? "+" : "-";
    s += "]";
    bool any = false;
    for (const auto& c : cycles()) {
      if (c.size() < 2) continue;
      any = true;
      s += "(";
      for (int x : c) s += std::to_string(x + 1);
      s += ")";
    }
    return any ? s : s + "()";
  }
};

struct SignedPermHash {
  size_t operator()(const SignedPerm& v) const { return v.code(); }
};

inline SignedPerm conjugate(const SignedPerm& h, const SignedPerm& v) { return h * v * h.inverse(); }

struct OrderTraceCharpoly {
  int order;
  long trace;
  ZPoly charpoly;
};

inline OrderTraceCharpoly order_trace_charpoly(const SignedPerm& v) {
  ZPoly cp = ZPoly::constant(1);
  long ord = 1;
  for (const auto& c : v.cycles()) {
    int s = 1;
    for (int x : c) s *= v.eps[x];
    int L = static_cast<int>(c.size());
    // a signed L-cycle with sign product s has characteristic polynomial x^L - s
    cp = cp * (ZPoly::monomial(L) - ZPoly::constant(s));
    ord = lcm(ord, s > 0 ? L : 2 * L);
  }
  return {static_cast<int>(ord), v.trace(), cp};
}

/// Visits all 2^7 * 8! elements of H.
template <class F>
void for_each_H(F&& f) {
  std::array<int, 8> p{0, 1, 2, 3, 4, 5, 6, 7};
  do {
    for (int mask = 0; mask < 256; ++mask) {
      if (__builtin_popcount(mask) % 2) continue;
      SignedPerm v;
      for (int i = 0; i < 8; ++i) {
        v.perm[i] = static_cast<uint8_t>(p[i]);
        v.eps[i] = (mask >> i) & 1 ? -1 : 1;
      }
      f(v);
    }
  } while (std::next_permutation(p.begin(), p.end()));
}

/// Visits the elements of H whose permutation part is `sigma`.
template <class F>
void for_each_with_perm(const std::array<uint8_t, 8>& sigma, F&& f) {
  for (int mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) % 2) continue;
    SignedPerm v;
    v.perm = sigma;
    for (int i = 0; i < 8; ++i) v.eps[i] = (mask >> i) & 1 ? -1 : 1;
    f(v);
  }
}

inline SignedPerm random_H(std::mt19937_64& rng) {
  SignedPerm v;
  std::array<int, 8> p{0, 1, 2, 3, 4, 5, 6, 7};
  std::shuffle(p.begin(), p.end(), rng);
  int prod = 1;
  for (int i = 0; i < 8; ++i) {
    v.perm[i] = static_cast<uint8_t>(p[i]);
    v.eps[i] = rng() & 1 ? -1 : 1;
    if (i < 7) prod *= v.eps[i];
  }
  v.eps[7] = static_cast<int8_t>(prod);
  return v;
}

// ------------------------------------------------------------ involutions

struct InvolutionClass {
  std::string label;  // "1A'", "2A", "3A", "4A", "4A'"
  int l = 0;          // number of -1 eigenvalues after normalising to l <= 4
  bool negated = false;
  std::optional<LatticeVec> witness;  // root x with (v(x), x) odd
  long witness_pairing = 0;
};

/// Conjugacy class of an involution v != +-1 in Aut(E8), read off from the
/// -1 eigenspace dimension and the parity of (v(r), r) over all roots.
inline InvolutionClass involution_class(const Isometry& v0) {
  if (!(v0 * v0 == Isometry::identity())) throw std::invalid_argument("not an involution");
  Isometry v = v0;
  InvolutionClass c;
  c.l = static_cast<int>((8 - v.trace()) / 2);
  if (c.l == 0 || c.l == 8) throw std::invalid_argument("involution is +-1");
  if (c.l > 4) {
    v = -v;
    c.l = 8 - c.l;
    c.negated = true;
  }
  std::vector<LatticeVec> order(standard_basis().f.begin(), standard_basis().f.end());
  order.insert(order.end(), e8_roots().begin(), e8_roots().end());
  for (const auto& r : order) {
    long s = ipair(v(r), r);
    if (s % 2) {
      c.witness = r;
      c.witness_pairing = s;
      break;
    }
  }
  static const char* names[] = {"", "1A'", "2A", "3A", "4A"};
  c.label = c.l == 4 && !c.witness ? "4A'" : names[c.l];
  return c;
}

inline InvolutionClass involution_class(const SignedPerm& v) { return involution_class(v.isometry()); }

/// Criterion for a 4A' involution inside H stated purely in terms of (eps, sigma).
inline bool is_4Aprime_by_criterion(const SignedPerm& v) {
  if (v.perm_is_identity()) return v.negative_signs() == 4;
  int transpositions = 0;
  for (const auto& c : v.cycles()) {
    if (c.size() == 2) {
      ++transpositions;
      if (v.eps[c[0]] != v.eps[c[1]]) return false;
    } else if (c.size() != 1) {
      return false;
    }
  }
  return transpositions == 4 && v.negative_signs() % 4 == 0;
}

struct Order4Class {
  char which = '?';      // 'i': sigma^2 = 1, 'j': two 4-cycles
  int transpositions = 0;  // for case 'i'
  long trace = 0;
  std::string normal_form;
};

/// Normal form of an order-4 element of H whose square is of type 4A'.
inline Order4Class classify_order4(const SignedPerm& v) {
  if (order_trace_charpoly(v).order != 4) throw std::invalid_argument("element does not have order 4");
  SignedPerm v2 = v * v;
  if (involution_class(v2).label != "4A'") throw std::invalid_argument("square is not of type 4A'");
  Order4Class c;
  c.trace = v.trace();
  auto cyc = v.cycles();
  bool sigma_involutive = true;
  for (const auto& cy : cyc) sigma_involutive &= cy.size() <= 2;
  if (sigma_involutive) {
    c.which = 'i';
    int odd = 0;
    for (const auto& cy : cyc) {
      if (cy.size() != 2) continue;
      ++c.transpositions;
      if (v.eps[cy[0]] * v.eps[cy[1]] < 0) ++odd;
    }
    if (odd != 2 || c.transpositions < 2) throw std::logic_error("order-4 element outside the expected normal forms: " + v.str());
    static const char* forms[] = {"", "", "(12)(34), e1e2=e3e4=-1", "(12)(34)(56), e1e2=e3e4=-1, e5e6=1",
                                  "(12)(34)(56)(78), e1e2=e3e4=-1, e5e6=e7e8=1"};
    c.normal_form = forms[c.transpositions];
  } else {
    c.which = 'j';
    if (cyc.size() != 2 || cyc[0].size() != 4 || cyc[1].size() != 4)
      throw std::logic_error("order-4 element outside the expected normal forms: " + v.str());
    for (const auto& cy : cyc) {
      int s = 1;
      for (int x : cy) s *= v.eps[x];
      if (s != 1) throw std::logic_error("4-cycle with sign product -1: " + v.str());
    }
    c.normal_form = "(1234)(5678), signs constant on each cycle";
  }
  if (c.trace % 2 || c.trace < -4 || c.trace > 4) throw std::logic_error("trace outside [-4, 4]");
  return c;
}

/// All involutions of H (v^2 = 1, v != 1).
inline std::vector<SignedPerm> involutions_of_H() {
  std::vector<SignedPerm> out;
  std::array<int, 8> p{0, 1, 2, 3, 4, 5, 6, 7};
  do {
    bool inv = true;
    for (int i = 0; i < 8; ++i) inv &= p[p[i]] == i;
    if (!inv) continue;
    std::array<uint8_t, 8> s;
    for (int i = 0; i < 8; ++i) s[i] = static_cast<uint8_t>(p[i]);
    for_each_with_perm(s, [&](const SignedPerm& v) {
      if (v * v == SignedPerm::identity() && v != SignedPerm::identity()) out.push_back(v);
    });
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// The 4A' involutions of H, classified by root parity (not by the criterion).
inline const std::vector<SignedPerm>& four_a_prime_elements() {
  static const std::vector<SignedPerm> out = [] {
    std::vector<SignedPerm> r;
    for (const auto& v : involutions_of_H()) {
      if (v == -SignedPerm::identity()) continue;
      if (involution_class(v).label == "4A'") r.push_back(v);
    }
    std::sort(r.begin(), r.end());
    return r;
  }();
  return out;
}

/// Generators of H: adjacent transpositions and paired sign changes.
inline std::vector<SignedPerm> H_generators() {
  std::vector<SignedPerm> g;
  for (int i = 0; i < 7; ++i) {
    std::array<int, 8> p{0, 1, 2, 3, 4, 5, 6, 7};
    std::swap(p[i], p[i + 1]);
    g.push_back(SignedPerm::make({1, 1, 1, 1, 1, 1, 1, 1}, p));
    std::array<int, 8> s{1, 1, 1, 1, 1, 1, 1, 1};
    s[i] = s[i + 1] = -1;
    g.push_back(SignedPerm::diag(s));
  }
  return g;
}

/// Splits a conjugation-closed set into H-conjugacy classes.
inline std::vector<std::vector<SignedPerm>> conjugacy_orbits(const std::vector<SignedPerm>& set) {
  std::unordered_set<SignedPerm, SignedPermHash> seen;
  std::vector<std::vector<SignedPerm>> orbits;
  auto gens = H_generators();
  for (const auto& x : set) {
    if (seen.count(x)) continue;
    std::vector<SignedPerm> orb{x};
    seen.insert(x);
    for (size_t k = 0; k < orb.size(); ++k)
      for (const auto& h : gens) {
        SignedPerm y = conjugate(h, orb[k]);
        if (seen.insert(y).second) orb.push_back(y);
      }
    std::sort(orb.begin(), orb.end());
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

// ----------------------------------------------------------- searches

struct Z2FourSearch {
  Rational averaged_dimension;     // (8 + sum of traces)/16 for an all-4A' (Z2)^4
  std::vector<long> traces;        // distinct traces of 4A' elements
  size_t four_a_prime_count = 0;
  size_t orbit_count = 0;
  std::map<int, size_t> subgroups_by_rank;  // subgroups containing an orbit representative
  bool found_rank4 = false;
  bool budget_exceeded = false;
  size_t nodes = 0;
};

/// Looks for elementary abelian 2-subgroups of H all of whose non-identity
/// elements are of type 4A'.
inline Z2FourSearch search_z2_4_obstruction(size_t budget = 50'000'000) {
  Z2FourSearch res;
  const auto& F = four_a_prime_elements();
  res.four_a_prime_count = F.size();
  std::unordered_set<SignedPerm, SignedPermHash> inF(F.begin(), F.end());
  std::set<long> tr;
  for (const auto& v : F) tr.insert(v.trace());
  res.traces.assign(tr.begin(), tr.end());
  if (res.traces.size() != 1) throw std::logic_error("4A' traces are not constant");
  res.averaged_dimension = Rational(8 + 15 * res.traces[0], 16);

  auto orbits = conjugacy_orbits(F);
  res.orbit_count = orbits.size();
  std::map<int, std::set<std::vector<uint32_t>>> found;
  std::function<void(std::vector<SignedPerm>&, const std::vector<SignedPerm>&)> rec =
      [&](std::vector<SignedPerm>& group, const std::vector<SignedPerm>& cand) {
        int rk = 0;
        for (size_t n = group.size(); n > 1; n >>= 1) ++rk;
        std::vector<uint32_t> key;
        for (const auto& g : group) key.push_back(g.code());
        std::sort(key.begin(), key.end());
        if (!found[rk].insert(key).second) return;
        if (rk == 4) {
          res.found_rank4 = true;
          return;
        }
        for (size_t i = 0; i < cand.size(); ++i) {
          if (++res.nodes > budget) {
            res.budget_exceeded = true;
            return;
          }
          const SignedPerm& h = cand[i];
          std::vector<SignedPerm> bigger = group;
          for (const auto& g : group) bigger.push_back(g * h);
          std::vector<SignedPerm> next;
          for (size_t j = i + 1; j < cand.size(); ++j) {
            const SignedPerm& x = cand[j];
            if (!(x * h == h * x) || !inF.count(x * h)) continue;
            bool in_group = false;
            for (const auto& g : bigger) in_group |= g == x;
            if (in_group) continue;
            bool ok = true;
            for (const auto& g : bigger)
              if (g != SignedPerm::identity() && !inF.count(g * x)) {
                ok = false;
                break;
              }
            if (ok) next.push_back(x);
          }
          rec(bigger, next);
          if (res.budget_exceeded) return;
        }
      };
  for (const auto& orb : orbits) {
    const SignedPerm& g1 = orb.front();
    std::vector<SignedPerm> group{SignedPerm::identity(), g1};
    std::vector<SignedPerm> cand;
    for (const auto& x : F)
      if (x != g1 && x * g1 == g1 * x && inF.count(x * g1)) cand.push_back(x);
    rec(group, cand);
    if (res.budget_exceeded) break;
  }
  for (const auto& [rk, s] : found) res.subgroups_by_rank[rk] = s.size();
  return res;
}

struct TraceTriple {
  long i, j, k;
  bool operator<(const TraceTriple& o) const { return std::tie(i, j, k) < std::tie(o.i, o.j, o.k); }
  bool operator==(const TraceTriple& o) const { return i == o.i && j == o.j && k == o.k; }
};

struct Q8Search {
  std::set<TraceTriple> triples;       // (tr i, tr j, tr k) over Q8 images in H with 4A' centre
  size_t images = 0;                   // ordered generating pairs examined
  std::optional<std::pair<TraceTriple, TraceTriple>> sum_minus4;  // pair of images with sum (-4,-4,-4)
  bool budget_exceeded = false;
};

/// Enumerates pairs (i, j) in H with i^2 = j^2 = z of type 4A' and j i j^-1 = i^-1,
/// for z running over H-class representatives, and records trace triples.
inline Q8Search search_q8_obstruction(size_t budget = 200'000'000) {
  Q8Search res;
  auto orbits = conjugacy_orbits(four_a_prime_elements());
  size_t work = 0;
  for (const auto& orb : orbits) {
    const SignedPerm z = orb.front();
    std::vector<SignedPerm> roots;
    std::array<int, 8> p{0, 1, 2, 3, 4, 5, 6, 7};
    do {
      bool match = true;
      for (int i = 0; i < 8 && match; ++i) match = p[p[i]] == z.perm[i];
      if (!match) continue;
      std::array<uint8_t, 8> s;
      for (int i = 0; i < 8; ++i) s[i] = static_cast<uint8_t>(p[i]);
      for_each_with_perm(s, [&](const SignedPerm& g) {
        if (g * g == z) roots.push_back(g);
      });
    } while (std::next_permutation(p.begin(), p.end()));
    for (const auto& a : roots) {
      SignedPerm ainv = a.inverse();
      for (const auto& b : roots) {
        if (++work > budget) {
          res.budget_exceeded = true;
          return res;
        }
        if (!(b * a * b.inverse() == ainv)) continue;
        ++res.images;
        res.triples.insert({a.trace(), b.trace(), (a * b).trace()});
      }
    }
  }
  for (const auto& t1 : res.triples)
    for (const auto& t2 : res.triples)
      if (t1.i + t2.i == -4 && t1.j + t2.j == -4 && t1.k + t2.k == -4 && !res.sum_minus4) res.sum_minus4 = {t1, t2};
  return res;
}

}  // namespace k3sym
