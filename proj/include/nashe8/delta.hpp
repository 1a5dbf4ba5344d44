// delta-invariants of curve germs on X, from parametrisations.
//
// The oracle: the image of K{x,y,z} in the product of the branch rings is a
// subalgebra A; delta = dim (prod K[[tau]]) / A. Truncating every branch at
// tau^T, A mod tau^T is the span saturated from 1 under multiplication by x,
// y, z. Once T passes every conductor, n T - dim(span) = delta.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "curves.hpp"
#include "modp.hpp"

namespace nashe8 {

template <class K>
using SpaceBranch = std::array<PowerSeries<K>, 3>;
template <class K>
using SpaceGerm = std::vector<SpaceBranch<K>>;

struct Unstabilized : std::runtime_error {
  explicit Unstabilized(const std::string& w) : std::runtime_error("unstabilized: " + w) {}
};

struct SaturationResult {
  int dim = 0;
  int rounds = 0;  // polynomial degree reached
  bool saturated = false;
  std::vector<int> pivots;  // global coordinate index c*T + k
};

namespace detail {

template <class K>
class EchelonSpace {
 public:
  explicit EchelonSpace(size_t n) : n_(n) {}
  // Reduces v; returns true (and stores it) if it was independent.
  bool insert(std::vector<K>& v) {
    for (size_t i = 0; i < n_; ++i) {
      if (v[i].is_zero()) continue;
      auto it = rows_.find(i);
      if (it == rows_.end()) {
        const K inv = K(1) / v[i];
        for (size_t j = i; j < n_; ++j)
          if (!v[j].is_zero()) v[j] = v[j] * inv;
        rows_.emplace(i, v);
        return true;
      }
      const K f = v[i];
      const auto& r = it->second;
      for (size_t j = i; j < n_; ++j)
        if (!r[j].is_zero()) v[j] = v[j] - f * r[j];
    }
    return false;
  }
  size_t dim() const { return rows_.size(); }
  std::vector<int> pivots() const {
    std::vector<int> p;
    for (const auto& [i, r] : rows_) p.push_back(static_cast<int>(i));
    return p;
  }

 private:
  size_t n_;
  std::map<size_t, std::vector<K>> rows_;
};

}  // namespace detail

// Span of the image of polynomials of degree <= max_rounds, truncated at tau^T.
template <class K>
SaturationResult saturate(const SpaceGerm<K>& germ, int T, int max_rounds) {
  const size_t n = germ.size(), N = n * static_cast<size_t>(T);
  // dense generator coefficients per branch
  std::vector<std::array<std::vector<std::pair<int, K>>, 3>> gen(n);
  for (size_t c = 0; c < n; ++c)
    for (int g = 0; g < 3; ++g) {
      for (const auto& [k, v] : germ[c][static_cast<size_t>(g)].coeffs())
        if (k < T) gen[c][static_cast<size_t>(g)].emplace_back(k, v);
      if (germ[c][static_cast<size_t>(g)].prec() < T) throw InsufficientPrecision("germ branch known below tau^T");
    }
  detail::EchelonSpace<K> space(N);
  std::vector<K> one(N, K(0));
  for (size_t c = 0; c < n; ++c) one[c * static_cast<size_t>(T)] = K(1);
  std::vector<std::vector<K>> frontier;
  {
    auto v = one;
    space.insert(v);
    frontier.push_back(v);
  }
  SaturationResult r;
  while (!frontier.empty() && r.rounds < max_rounds) {
    std::vector<std::vector<K>> next;
    for (const auto& row : frontier)
      for (int g = 0; g < 3; ++g) {
        std::vector<K> p(N, K(0));
        bool any = false;
        for (size_t c = 0; c < n; ++c) {
          const size_t off = c * static_cast<size_t>(T);
          for (int i = 0; i < T; ++i) {
            const K& a = row[off + static_cast<size_t>(i)];
            if (a.is_zero()) continue;
            for (const auto& [k, b] : gen[c][static_cast<size_t>(g)]) {
              if (i + k >= T) break;
              p[off + static_cast<size_t>(i + k)] += a * b;
              any = true;
            }
          }
        }
        if (any && space.insert(p)) next.push_back(std::move(p));
      }
    frontier = std::move(next);
    ++r.rounds;
  }
  r.saturated = frontier.empty();
  r.dim = static_cast<int>(space.dim());
  r.pivots = space.pivots();
  return r;
}

struct DeltaResult {
  int delta = 0;
  int T = 0;  // final truncation
  int D = 0;  // degree (saturation rounds) at the final truncation
  int plateau = 0;  // consecutive doublings with the same value
  std::vector<std::pair<int, int>> history;  // (T, delta(T))
};

struct DeltaPolicy {
  int T0 = 32;
  int Tcap = 768;
  int Dcap = 256;
  int plateau = 2;
};

// delta(T) = nT - dim, doubled until it repeats `plateau` times.
template <class K>
DeltaResult delta_oracle(const SpaceGerm<K>& germ, const DeltaPolicy& pol = {}) {
  DeltaResult res;
  for (int T = pol.T0; T <= pol.Tcap; T *= 2) {
    auto s = saturate(germ, T, pol.Dcap);
    if (!s.saturated) throw Unstabilized("degree cap " + std::to_string(pol.Dcap) + " reached at T=" + std::to_string(T));
    const int d = static_cast<int>(germ.size()) * T - s.dim;
    if (!res.history.empty() && res.history.back().second == d) ++res.plateau;
    else res.plateau = 0;
    res.history.emplace_back(T, d);
    res.delta = d;
    res.T = T;
    res.D = s.rounds;
    if (res.plateau >= pol.plateau) return res;
  }
  std::string h;
  for (const auto& [T, d] : res.history) h += " T=" + std::to_string(T) + ":" + std::to_string(d);
  throw Unstabilized("no plateau within T cap;" + h);
}

// Value semigroup of one branch. Exact: the pivots of the saturated span are
// the semigroup below T, and a run of m consecutive values from c on (m the
// multiplicity) puts every larger integer in it.
struct SemigroupResult {
  int multiplicity = 0;
  int conductor = 0;
  std::vector<int> gaps;
  int T = 0;
  int delta() const { return static_cast<int>(gaps.size()); }
};

template <class K>
SemigroupResult branch_semigroup(const SpaceBranch<K>& b, int T0 = 16, int Tcap = 512) {
  for (int T = T0; T <= Tcap; T *= 2) {
    auto s = saturate(SpaceGerm<K>{b}, T, 1 << 20);
    std::vector<bool> in(static_cast<size_t>(T), false);
    for (int p : s.pivots) in[static_cast<size_t>(p)] = true;
    int m = 0;
    for (int k = 1; k < T && !m; ++k)
      if (in[static_cast<size_t>(k)]) m = k;
    if (!m) continue;
    // smallest c with [c, c + m) inside the semigroup
    for (int c = 0; c + m <= T; ++c) {
      bool run = true;
      for (int k = c; k < c + m && run; ++k) run = in[static_cast<size_t>(k)];
      if (!run) continue;
      SemigroupResult r;
      r.multiplicity = m;
      r.conductor = c;
      r.T = T;
      for (int k = 1; k < c; ++k)
        if (!in[static_cast<size_t>(k)]) r.gaps.push_back(k);
      // c is the conductor only if c - 1 is a gap (or c = 0)
      while (r.conductor > 0 && in[static_cast<size_t>(r.conductor - 1)]) --r.conductor;
      return r;
    }
  }
  throw Unstabilized("semigroup conductor not certified below T=" + std::to_string(Tcap));
}

// ---- images of model branches on X ----

// p o branch, in the parameter tau = t^s of the image (s = branch stabiliser order).
// Coefficients go to K through to_k; moduli variables take the given values.
template <class K, class ToK>
SpaceBranch<K> image_branch(const Branch& b, ToK to_k, const std::map<int, K>& values, int T) {
  const int s = static_cast<int>(branch_stabiliser(b).size());
  const int cap = s * T + 1;
  auto var = [&](int i) -> K {
    auto it = values.find(i);
    if (it == values.end()) throw std::invalid_argument("no value for modulus variable " + std::to_string(i));
    return it->second;
  };
  using SK = PowerSeries<K>;
  SK w(cap);
  for (const auto& [e, c] : b.y) w = w + SK::monomial(c.template map_to<K>(to_k, var), e, cap);
  const SK x = SK::monomial(K(1), b.a, cap);
  const SK u = x.scaled(to_k(b.frame.a)) + w.scaled(to_k(b.frame.b));
  const SK v = x.scaled(to_k(b.frame.c)) + w.scaled(to_k(b.frame.d));
  const auto& G = icosahedral();
  SpaceBranch<K> out{eval_form(G.E60().template map<K>(to_k), u, v), eval_form(G.F60().template map<K>(to_k), u, v),
                     eval_form(G.V60().template map<K>(to_k), u, v)};
  for (auto& z : out) z = z.deflate(s);
  return out;
}

inline SpaceBranch<Q60> image_branch_exact(const Branch& b, const std::map<int, Q60>& values, int T) {
  return image_branch<Q60>(b, [](const Q60& c) { return c; }, values, T);
}

template <uint64_t P>
SpaceBranch<Zp<P>> image_branch_modp(const Branch& b, const std::map<int, Zp<P>>& values, int T) {
  return image_branch<Zp<P>>(b, [](const Q60& c) { return reduce<P, 60>(c); }, values, T);
}

// ---- exact delta of a single class and of unions ----

struct ClassDelta {
  int k = 0;
  int stabiliser = 0;
  SemigroupResult semigroup;
};

// delta of the image of a transverse arc through E_k. For a != b the
// modulus is immaterial: scaling (u, v) by kappa and reparametrising maps the
// germ for lambda to the one for lambda kappa^((a-b)/a), through the weighted
// automorphism of X. Class 1 has a = b; there lambda only needs to avoid the
// special orbits, which the orders (30, 20, 12) certify.
inline ClassDelta class_delta(const DivisorRow& row) {
  const Branch b = model_branch(row, kModulus0);
  ClassDelta r;
  r.k = row.k;
  r.stabiliser = static_cast<int>(branch_stabiliser(b).size());
  for (long lam = 1;; ++lam) {
    auto img = image_branch_exact(b, {{kModulus0, Q60(lam)}}, 64);
    if (row.a == row.b) {
      // orders in t are (30, 20, 12); in tau they are divided by s
      const int s = r.stabiliser;
      if (*img[0].order() * s != 30 || *img[1].order() * s != 20 || *img[2].order() * s != 12) continue;
    }
    r.semigroup = branch_semigroup(img);
    return r;
  }
}

inline const ClassDelta& class_delta_cached(const DivisorRow& row) {
  static std::mutex mu;
  static std::map<std::array<int, 3>, ClassDelta> cache;
  std::lock_guard<std::mutex> lock(mu);
  const std::array<int, 3> key{row.orbit, row.a, row.b};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, class_delta(row)).first;
  return it->second;
}

// (C_a . C_b) = dim O_X / (f_a, f_b) = I(W_b, beta_a) / s_a, with independent moduli.
struct PairTerm {
  int a = 0, b = 0;
  int I_ab = 0;  // I(W_b, beta_a)
  int I_ba = 0;  // I(W_a, beta_b), for the symmetry check
  int value = 0;
  bool consistent = false;
};

inline PairTerm pair_term(const DivisorRow& ra, const DivisorRow& rb) {
  static std::mutex mu;
  static std::map<std::array<int, 6>, PairTerm> cache;
  const std::array<int, 6> key{ra.orbit, ra.a, ra.b, rb.orbit, rb.a, rb.b};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const Branch ba = model_branch(ra, kModulus0), bb = model_branch(rb, kModulus0 + 1);
  const int sa = static_cast<int>(branch_stabiliser(ba).size()), sb = static_cast<int>(branch_stabiliser(bb).size());
  PairTerm p;
  p.a = ra.k;
  p.b = rb.k;
  p.I_ab = intersect_branch(orbit_curve(bb, false).branches, ba);
  p.I_ba = intersect_branch(orbit_curve(ba, false).branches, bb);
  p.consistent = p.I_ab % sa == 0 && p.I_ba % sb == 0 && p.I_ab / sa == p.I_ba / sb;
  p.value = p.I_ab / sa;
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, p);
  return p;
}

struct UnionDelta {
  std::vector<int> classes;
  std::vector<int> singles;
  std::vector<PairTerm> pairs;
  int delta = 0;
  bool consistent = true;
};

// delta(C_1 u ... u C_r) = sum delta(C_i) + sum_{i<j} (C_i . C_j).
inline UnionDelta union_delta(const std::array<DivisorRow, 8>& t1, const std::vector<int>& classes) {
  UnionDelta u;
  u.classes = classes;
  for (int k : classes) {
    u.singles.push_back(class_delta_cached(t1.at(static_cast<size_t>(k - 1))).semigroup.delta());
    u.delta += u.singles.back();
  }
  for (size_t i = 0; i < classes.size(); ++i)
    for (size_t j = i + 1; j < classes.size(); ++j) {
      auto p = pair_term(t1.at(static_cast<size_t>(classes[i] - 1)), t1.at(static_cast<size_t>(classes[j] - 1)));
      u.consistent = u.consistent && p.consistent;
      u.delta += p.value;
      u.pairs.push_back(p);
    }
  return u;
}

// Oracle cross-check on the union germ over F_p, moduli drawn from seed.
// Rank can only drop mod p or at special moduli, so this bounds delta from above.
namespace detail {

struct ModpUnion {
  std::vector<Branch> models;
  std::vector<FpA> lams;
  ModpUnion(const std::array<DivisorRow, 8>& t1, const std::vector<int>& classes, uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int k : classes) models.push_back(model_branch(t1.at(static_cast<size_t>(k - 1)), kModulus0));
    for (size_t c = 0; c < models.size(); ++c) lams.push_back(FpA::raw(rng() % (FpA::modulus - 2) + 2));
  }
  SpaceGerm<FpA> germ(int T) const {
    SpaceGerm<FpA> g;
    for (size_t c = 0; c < models.size(); ++c) g.push_back(image_branch_modp<kPrimeA>(models[c], {{kModulus0, lams[c]}}, T));
    return g;
  }
};

}  // namespace detail

inline DeltaResult union_delta_modp(const std::array<DivisorRow, 8>& t1, const std::vector<int>& classes,
                                    uint64_t seed, const DeltaPolicy& pol = {}) {
  const detail::ModpUnion u(t1, classes, seed);
  DeltaResult res;
  for (int T = pol.T0; T <= pol.Tcap; T *= 2) {
    const auto g = u.germ(T);
    auto s = saturate(g, T, pol.Dcap);
    if (!s.saturated) throw Unstabilized("degree cap reached at T=" + std::to_string(T));
    const int d = static_cast<int>(g.size()) * T - s.dim;
    if (!res.history.empty() && res.history.back().second == d) ++res.plateau;
    else res.plateau = 0;
    res.history.emplace_back(T, d);
    res.delta = d;
    res.T = T;
    res.D = s.rounds;
    if (res.plateau >= pol.plateau) return res;
  }
  throw Unstabilized("mod-p union oracle did not plateau");
}

// delta(T) of the same germ at one fixed (T, D); nullopt if D rounds do not saturate.
inline std::optional<int> union_delta_modp_at(const std::array<DivisorRow, 8>& t1, const std::vector<int>& classes,
                                              uint64_t seed, int T, int D) {
  const auto g = detail::ModpUnion(t1, classes, seed).germ(T);
  const auto s = saturate(g, T, D);
  if (!s.saturated) return std::nullopt;
  return static_cast<int>(g.size()) * T - s.dim;
}

template <class K>
std::optional<int> delta_at(const SpaceGerm<K>& germ, int T, int D) {
  const auto s = saturate(germ, T, D);
  if (!s.saturated) return std::nullopt;
  return static_cast<int>(germ.size()) * T - s.dim;
}

}  // namespace nashe8
