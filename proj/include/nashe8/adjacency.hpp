// Elimination calculus over the 56 ordered pairs (i, j), "N_i in the closure
// of N_j". Every inequality compares intersection numbers of orbit curves with
// a fixed set of test curves: a generic line and the tangent lines L_2..L_8.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "curves.hpp"

namespace nashe8 {

using Pair = std::pair<int, int>;

inline std::vector<int> test_curves() { return {kGenericTest, 2, 3, 4, 5, 6, 7, 8}; }

struct Witness {
  int test = -1;
  int lhs = 0, rhs = 0;  // the violated inequality lhs >= rhs
  std::string str() const { return test_curve_name(test) + ": " + std::to_string(lhs) + " < " + std::to_string(rhs); }
};

enum class Verdict { kEliminated, kSurvives };

struct EliminationReport {
  Pair pair;
  int stage = 0;
  Verdict verdict = Verdict::kSurvives;
  std::string rule;
  Witness witness;
};

// Non-transverse return: a smooth point of E_k with contact m, or a crossing E_k n E_l.
struct NtMarker {
  bool crossing = false;
  int k = 0;
  int m = 0;  // contact order, or l for a crossing
  std::vector<int> surrogate() const {
    if (crossing) return {k, m};
    return std::vector<int>(static_cast<size_t>(m), k);
  }
  std::string str() const {
    return crossing ? "nt N" + std::to_string(k) + "^N" + std::to_string(m)
                    : "nt N" + std::to_string(k) + "[" + std::to_string(m) + "]";
  }
  friend auto operator<=>(const NtMarker&, const NtMarker&) = default;
};

struct ReturnProfile {
  std::vector<int> transverse;  // sorted
  std::vector<NtMarker> nt;
  std::vector<int> surrogate() const {
    std::vector<int> s = transverse;
    for (const auto& m : nt) {
      auto x = m.surrogate();
      s.insert(s.end(), x.begin(), x.end());
    }
    std::sort(s.begin(), s.end());
    return s;
  }
  std::string str() const {
    std::string s = "{";
    for (size_t n = 0; n < transverse.size(); ++n) s += (n ? "," : "") + std::string("N") + std::to_string(transverse[n]);
    for (size_t n = 0; n < nt.size(); ++n) s += (n || !transverse.empty() ? "," : "") + nt[n].str();
    return s + "}";
  }
  friend auto operator<=>(const ReturnProfile&, const ReturnProfile&) = default;
};

struct ProfileResult {
  Pair pair;
  ReturnProfile profile;
  bool survives = false;
  Witness witness;
};

// Inequality I(W_i, C) >= I(W_j, C) + sum_k I(W_k, C) over all test curves.
inline std::optional<Witness> violated(const CurveData& d, int i, int j, const std::vector<int>& returns) {
  for (int c : test_curves()) {
    int rhs = d.I[j][c];
    for (int k : returns) rhs += d.I[k][c];
    if (d.I[i][c] < rhs) return Witness{c, d.I[i][c], rhs};
  }
  return std::nullopt;
}

struct EliminationResult {
  std::vector<EliminationReport> stage1, stage2, stage3;
  std::vector<Pair> rule1, rule1_generic, rule2, remaining;
  bool returns_forced_everywhere = false;
  int min_return = 0;
};

// Stage 1: semicontinuity. Stage 2: a return is forced (boundary count, or
// per-branch tangent orders when b_i = b_j). Stage 3: any return adds at
// least min_k m_k at L_j.
inline EliminationResult eliminate(const CurveData& d) {
  EliminationResult r;
  std::vector<Pair> s1;
  for (int i = 1; i <= 8; ++i)
    for (int j = 1; j <= 8; ++j) {
      if (i == j) continue;
      EliminationReport rep{{i, j}, 1, Verdict::kSurvives, "semicontinuity", {}};
      if (d.I[i][kGenericTest] < d.I[j][kGenericTest]) r.rule1_generic.push_back({i, j});
      if (auto w = violated(d, i, j, {})) {
        rep.verdict = Verdict::kEliminated;
        rep.witness = *w;
        r.rule1.push_back({i, j});
      } else {
        s1.push_back({i, j});
      }
      r.stage1.push_back(rep);
    }
  r.returns_forced_everywhere = true;
  for (auto [i, j] : s1) {
    EliminationReport rep{{i, j}, 2, Verdict::kSurvives, "", {}};
    if (d.branches[i] != d.branches[j]) {
      rep.rule = "boundary count b_" + std::to_string(i) + "=" + std::to_string(d.branches[i]) + " != b_" +
                 std::to_string(j) + "=" + std::to_string(d.branches[j]) + ": return forced";
    } else if (d.tangent_order[i] < d.tangent_order[j]) {
      rep.rule = "equal branch counts, per-branch order at L_" + std::to_string(j) + ": return forced";
      rep.witness = {j, d.tangent_order[i], d.tangent_order[j]};
    } else {
      rep.rule = "no return forced";
      r.returns_forced_everywhere = false;
    }
    r.stage2.push_back(rep);
  }
  r.min_return = 1 << 30;
  for (int k = 2; k <= 8; ++k) r.min_return = std::min(r.min_return, d.mult[k]);
  for (auto [i, j] : s1) {
    EliminationReport rep{{i, j}, 3, Verdict::kSurvives, "minimum return", {}};
    const int rhs = d.I[j][j == 1 ? kGenericTest : j] + r.min_return;
    const int lhs = d.I[i][j == 1 ? kGenericTest : j];
    if (lhs < rhs) {
      rep.verdict = Verdict::kEliminated;
      rep.witness = {j == 1 ? kGenericTest : j, lhs, rhs};
      r.rule2.push_back({i, j});
    } else {
      r.remaining.push_back({i, j});
    }
    r.stage3.push_back(rep);
  }
  return r;
}

// Edges of the resolution graph; crossing returns sit on these.
inline std::vector<Pair> graph_edges() { return resolution_graph_edges(); }

struct ProfileEnumeration {
  std::vector<ProfileResult> results;  // every profile tried
  std::vector<ProfileResult> transverse_survivors;
  std::vector<ProfileResult> nt_survivors;
  // rows (i, sorted {j} u returns), the symmetric labelling
  std::set<std::pair<int, std::vector<int>>> rows;
  int cap_total = 0;
};

inline int profile_cap(const CurveData& d, int i, int j, int min_return) {
  return std::max(0, (d.mult[i] - d.mult[j]) / min_return);
}

// All multisets of {2..8} with 1..cap elements, plus one non-transverse marker
// with any transverse rest, each judged through its surrogate.
inline ProfileEnumeration enumerate_profiles(const CurveData& d, const EliminationResult& e) {
  ProfileEnumeration out;
  for (auto [i, j] : e.remaining) {
    const int cap = profile_cap(d, i, j, e.min_return);
    out.cap_total += cap;
    std::vector<std::vector<int>> multisets{{}};
    for (int size = 1; size <= cap; ++size) {
      std::vector<std::vector<int>> grown;
      for (const auto& m : multisets)
        if (static_cast<int>(m.size()) == size - 1)
          for (int k = m.empty() ? 2 : m.back(); k <= 8; ++k) {
            auto x = m;
            x.push_back(k);
            grown.push_back(x);
          }
      multisets.insert(multisets.end(), grown.begin(), grown.end());
    }
    std::vector<NtMarker> markers;
    for (int k = 2; k <= 8; ++k)
      for (int m = 2; m <= cap; ++m) markers.push_back({false, k, m});
    for (auto [a, b] : graph_edges()) markers.push_back({true, std::min(a, b), std::max(a, b)});
    for (const auto& m : multisets) {
      if (!m.empty()) {
        ProfileResult pr{{i, j}, {m, {}}, false, {}};
        auto w = violated(d, i, j, m);
        pr.survives = !w;
        if (w) pr.witness = *w;
        out.results.push_back(pr);
        if (pr.survives) {
          out.transverse_survivors.push_back(pr);
          auto row = m;
          row.push_back(j);
          std::sort(row.begin(), row.end());
          out.rows.insert({i, row});
        }
      }
      for (const auto& mk : markers) {
        ReturnProfile p{m, {mk}};
        if (static_cast<int>(p.surrogate().size()) > cap) continue;
        ProfileResult pr{{i, j}, p, false, {}};
        auto w = violated(d, i, j, p.surrogate());
        pr.survives = !w;
        if (w) pr.witness = *w;
        out.results.push_back(pr);
        if (pr.survives) out.nt_survivors.push_back(pr);
      }
    }
  }
  return out;
}

// A surviving non-transverse return reduces to transverse returns along the
// divisor it meets: contact m at E_k becomes m transverse returns in N_k.
struct NtReduction {
  ProfileResult from;
  ReturnProfile to;
  bool target_survives = false;
};

inline std::vector<NtReduction> nt_reduction(const ProfileEnumeration& pe) {
  std::vector<NtReduction> out;
  for (const auto& s : pe.nt_survivors) {
    NtReduction r{s, {s.profile.surrogate(), {}}, false};
    for (const auto& t : pe.transverse_survivors)
      if (t.pair == s.pair && t.profile == r.to) r.target_survives = true;
    out.push_back(r);
  }
  return out;
}

// (i; j + K) survives for (i, j) with returns K iff it survives for (i, k)
// with returns {j} u K - {k}, whenever both pairs remain.
inline bool symmetric_labelling_consistent(const CurveData& d, const EliminationResult& e) {
  std::set<Pair> rem(e.remaining.begin(), e.remaining.end());
  for (auto [i, j] : e.remaining) {
    const int cap = profile_cap(d, i, j, e.min_return);
    for (int k = 2; k <= 8; ++k) {
      if (!rem.count({i, k}) || cap < 1) continue;
      // single return k for (i, j) vs single return j for (i, k)
      const bool a = !violated(d, i, j, {k});
      const bool b = !violated(d, i, k, {j});
      if (a != b) return false;
    }
  }
  return true;
}

}  // namespace nashe8
