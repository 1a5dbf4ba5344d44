// Reference data: the divisor table, the intersection table, the strata table,
// the four versal families, and the shapes of invariant curve equations.
// Everything here is input to be checked, never trusted by the computation.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nashe8 {

// Divisor row. Stabiliser "Cn,q" is the cyclic quotient of order n at the
// tangent point of the blow-up; "Z2" is the generic stabiliser {+-Id}.
struct DivisorRow {
  int k = 0;
  std::string stabiliser;
  char orbit = '?';  // 'P' regular, 'E', 'F', 'V'
  int dicriticals = 0;
  int degree = 0;  // covering degree of a dicritical over E_k
  int a = 0, b = 0;  // model branch (t^a, lambda t^b)
};

struct IntersectionRow {
  int k = 0;
  int branches = 0;
  int mult = 0;  // 0 where no reference value exists
  int tangent_I = 0;
};

struct StratumRow {
  int i = 0;
  std::vector<int> returns;  // component classes of the union, first = j
  int delta = 0;
  std::vector<int> S;  // indices n with b_n = 0 on the stratum
  std::vector<int> A;  // indices with b_n = 0 on the special-arc locus inside it
  std::string note;
};

struct Monomial {
  int x = 0, y = 0, z = 0;
  int weight() const { return 30 * x + 20 * y + 12 * z; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct VersalFamily {
  int i = 0;
  std::vector<std::pair<long, Monomial>> h0;
  std::vector<Monomial> params;  // params[n-1] multiplies b_n
  std::pair<int, int> special_range;  // A_i = {b_lo = ... = b_hi = 0}
};

// Invariant-equation shape: monomials E^i F^j V^k with i <= 1.
struct ShapeTerm {
  int e = 0, f = 0, v = 0;
  bool nonzero = false;  // "generically nonzero"; otherwise present but possibly zero
  int weight() const { return 30 * e + 20 * f + 12 * v; }
  Monomial mono() const { return {e, f, v}; }
};

struct Shape {
  std::vector<int> curves;  // component classes; a 0 marks a non-transverse or crossing model
  std::string label;
  std::vector<ShapeTerm> terms;
};

struct ReferenceTables {
  std::array<DivisorRow, 8> divisors;
  std::array<IntersectionRow, 8> orbit_data;
  std::vector<StratumRow> strata;
  std::vector<VersalFamily> versal;
  std::vector<Shape> single_shapes;  // one per class 2..8
};

inline std::string case_label(int i, const std::vector<int>& returns) {
  std::string s = "N" + std::to_string(i) + ":";
  for (size_t n = 0; n < returns.size(); ++n) s += (n ? "+" : "") + std::to_string(returns[n]);
  return s;
}

inline std::vector<int> range_incl(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

inline std::vector<int> cat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline ReferenceTables reference_tables() {
  ReferenceTables t;
  t.divisors = {{{1, "Z2", 'P', 1, 60, 1, 1},
               {2, "C4,2", 'E', 30, 1, 1, 3},
               {3, "C6,4", 'F', 20, 1, 1, 5},
               {4, "C6,4", 'F', 20, 2, 1, 2},
               {5, "C10,8", 'V', 12, 1, 1, 9},
               {6, "C10,8", 'V', 12, 2, 1, 4},
               {7, "C10,8", 'V', 12, 1, 3, 7},
               {8, "C10,8", 'V', 12, 2, 2, 3}}};
  t.orbit_data = {{{1, 60, 0, 60},
               {2, 30, 30, 32},
               {3, 20, 20, 24},
               {4, 40, 40, 42},
               {5, 12, 12, 20},
               {6, 24, 24, 30},
               {7, 12, 36, 40},
               {8, 24, 48, 50}}};
  auto R = range_incl;
  t.strata = {
      {7, {3, 5}, 1, R(9, 13), {8}, ""},
      {7, {5, 5}, 2, cat({9}, R(11, 13)), {8, 10}, ""},
      {8, {2, 5}, 2, R(14, 21), {12, 13}, ""},
      {8, {3, 3}, 2, cat({13}, R(15, 21)), {12, 14},
       "reference S list starts at b11 and overlaps A; stored S is the derived one"},
      {8, {3, 5}, 5, R(17, 21), R(12, 16), ""},
      {8, {3, 6}, 1, R(13, 21), {12}, ""},
      {8, {5, 6}, 3, cat({14}, R(16, 21)), {12, 13, 15}, ""},
      {8, {5, 5}, 6, cat({17}, R(19, 21)), cat(R(12, 16), {18}), ""},
      {4, {3, 5}, 2, R(11, 15), {9, 10}, ""},
      {4, {5, 5}, 3, cat({11}, R(13, 15)), {9, 10, 12}, "reference S list has an open end; read as running to b15"},
      {1, {2, 3}, 4, R(20, 30), R(16, 19), ""},
      {1, {2, 5}, 7, R(23, 30), R(16, 22), ""},
      {1, {2, 6}, 2, R(18, 30), {16, 17}, ""},
      {1, {3, 3}, 7, cat({22}, R(24, 30)), cat(R(16, 21), {23}), ""},
      {1, {3, 5}, 10, R(26, 30), R(16, 25), ""},
      {1, {3, 5, 5}, 5, cat({19}, R(22, 30)), {16, 17, 18, 20, 21}, ""},
      {1, {3, 6}, 6, R(22, 30), R(16, 21), ""},
      {1, {3, 7}, 1, R(17, 30), {16}, ""},
      {1, {4, 5}, 3, R(19, 30), {16, 17, 18}, ""},
      {1, {5, 3, 3}, 2, cat({17}, R(19, 30)), {16, 18}, ""},
      {1, {5, 5}, 11, cat({26}, R(28, 30)), cat(R(16, 25), {27}), ""},
      {1, {5, 5, 5}, 6, cat({19, 22, 23}, R(25, 30)), {16, 17, 18, 20, 21, 24}, ""},
      {1, {5, 6}, 8, cat({23}, R(25, 30)), cat(R(16, 22), {24}), ""},
      {1, {5, 7}, 4, cat({19}, R(21, 30)), {16, 17, 18, 20}, ""},
      {1, {6, 6}, 3, cat({18, 19}, R(21, 30)), {16, 17, 20}, ""},
  };

  t.versal = {
      {7, {{1, {0, 2, 0}}, {1, {0, 0, 3}}},
       {{2, 0, 1}, {2, 0, 0}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {1, 0, 1}, {0, 2, 0},
        {0, 1, 1}, {1, 0, 0}, {0, 0, 2}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}},
       {8, 13}},
      {8, {{1, {0, 0, 4}}, {1, {1, 1, 0}}},
       {{3, 0, 1}, {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {0, 2, 2}, {2, 0, 0},
        {0, 1, 3}, {1, 0, 2}, {0, 2, 1}, {1, 1, 0}, {0, 1, 2}, {1, 0, 1}, {0, 2, 0},
        {0, 0, 3}, {0, 1, 1}, {1, 0, 0}, {0, 0, 2}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}},
       {12, 21}},
      {4, {{1, {0, 2, 0}}, {1, {1, 0, 1}}},
       {{2, 1, 0}, {2, 0, 1}, {2, 0, 0}, {0, 1, 3}, {1, 1, 0}, {0, 0, 4}, {0, 1, 2},
        {1, 0, 1}, {0, 0, 3}, {0, 1, 1}, {1, 0, 0}, {0, 0, 2}, {0, 1, 0}, {0, 0, 1},
        {0, 0, 0}},
       {9, 15}},
      {1, {{1, {2, 0, 0}}, {2, {0, 3, 0}}},
       {{2, 1, 3}, {2, 1, 2}, {2, 0, 3}, {2, 1, 1}, {1, 1, 3}, {2, 0, 2}, {2, 1, 0},
        {0, 2, 3}, {1, 1, 2}, {2, 0, 1}, {0, 1, 4}, {1, 0, 3}, {0, 2, 2}, {1, 1, 1},
        {2, 0, 0}, {0, 1, 3}, {1, 0, 2}, {0, 2, 1}, {1, 1, 0}, {0, 0, 4}, {0, 1, 2},
        {1, 0, 1}, {0, 2, 0}, {0, 0, 3}, {0, 1, 1}, {1, 0, 0}, {0, 0, 2}, {0, 1, 0},
        {0, 0, 1}, {0, 0, 0}},
       {16, 30}},
  };

  // Leading shapes of the orbit-curve equations of a single transverse arc.
  t.single_shapes = {
      {{2}, "2", {{1, 0, 0, true}, {0, 1, 1, false}}},
      {{3}, "3", {{0, 1, 0, true}, {0, 0, 2, false}}},
      {{4}, "4", {{0, 2, 0, true}, {1, 0, 1, true}}},
      {{5}, "5", {{0, 0, 1, true}, {0, 1, 0, false}}},
      {{6}, "6", {{0, 0, 2, true}, {1, 0, 0, true}}},
      {{7}, "7", {{0, 0, 3, true}, {0, 2, 0, true}}},
      {{8}, "8", {{0, 0, 4, true}, {1, 1, 0, true}}},
  };
  return t;
}

// Shapes of unions and of non-transverse models, as written in the case tables
// for each tangent cone. Labels use "k" for a transverse arc, "ntk[m]" for
// contact m at a general point of E_k and "k^l" for a curve through E_k n E_l.
inline std::vector<Shape> union_shapes() {
  return {
      {{3, 3}, "3+3", {{0, 2, 0, true}, {0, 1, 2, false}}},
      {{5, 5}, "5+5", {{0, 0, 2, true}, {0, 1, 1, false}}},
      {{5, 6}, "5+6", {{0, 0, 3, true}, {1, 0, 1, false}}},
      {{5, 5, 5}, "5+5+5", {{0, 0, 3, true}, {0, 1, 2, false}, {0, 0, 4, false}, {0, 2, 1, false}}},
      {{5, 7}, "5+7", {{0, 0, 4, true}, {0, 2, 1, false}}},
      {{6, 6}, "6+6", {{0, 0, 4, true}, {1, 0, 2, false}}},
      {{5, 5, 6}, "5+5+6",
       {{0, 0, 4, true}, {1, 0, 2, false}, {0, 1, 3, false}, {0, 0, 5, false}, {1, 1, 1, false}}},
      {{3, 6}, "3+6", {{0, 1, 2, true}, {0, 0, 4, false}, {1, 1, 0, true}}},
      {{5, 5, 5, 5}, "5+5+5+5",
       {{0, 0, 4, true}, {0, 1, 3, false}, {0, 0, 5, false}, {0, 2, 2, false}, {1, 0, 3, false},
        {0, 1, 4, false}, {0, 0, 6, false}}},
  };
}

// A component of a test curve: transverse arc through E_k, contact m with a
// general point of E_k, or a curvette through E_k n E_l.
struct CurveSpec {
  enum Kind { kTransverse, kContact, kCrossing } kind = kTransverse;
  int k = 0;
  int m = 0;  // contact order, or the second divisor l for a crossing
  std::string str() const {
    if (kind == kTransverse) return std::to_string(k);
    if (kind == kContact) return "nt" + std::to_string(k) + "[" + std::to_string(m) + "]";
    return std::to_string(k) + "^" + std::to_string(m);
  }
};

// Reference intersection numbers of invariant curves with generic test arcs.
struct TestIntersection {
  std::string cone;
  std::vector<CurveSpec> parts;
  char test_orbit = 'V';
  int test_a = 1, test_b = 9;
  int value = 0;
};

inline std::vector<TestIntersection> reference_test_intersections() {
  using C = CurveSpec;
  const C n3{C::kTransverse, 3}, n4{C::kTransverse, 4}, n5{C::kTransverse, 5}, n6{C::kTransverse, 6},
      n7{C::kTransverse, 7}, n8{C::kTransverse, 8};
  return {
      {"F2", {n4}, 'F', 1, 5, 42},
      {"F2", {n3, n3}, 'F', 1, 5, 48},
      {"V2", {n6}, 'V', 1, 9, 30},
      {"V2", {n5, n5}, 'V', 1, 9, 40},
      {"V3", {n7}, 'V', 1, 9, 40},
      {"V3", {n5, n6}, 'V', 1, 9, 50},
      {"V3", {{C::kCrossing, 5, 6}}, 'V', 1, 9, 50},
      {"V3", {n5, n5, n5}, 'V', 1, 9, 60},
      {"V3", {n5, {C::kContact, 5, 2}}, 'V', 1, 9, 60},
      {"V3", {{C::kContact, 5, 3}}, 'V', 1, 9, 60},
      {"V4", {n8}, 'V', 1, 9, 50},
      {"V4", {n5, n7}, 'V', 1, 9, 60},
      {"V4", {n6, n6}, 'V', 1, 9, 60},
      {"V4", {{C::kContact, 6, 2}}, 'V', 1, 9, 60},
      {"V4", {n5, n7}, 'V', 1, 4, 55},
      {"V4", {n6, n6}, 'V', 1, 4, 60},
      {"V4", {{C::kContact, 6, 2}}, 'V', 1, 4, 60},
      {"V4", {n5, n5, n6}, 'V', 1, 9, 70},
      {"V4", {n6, {C::kContact, 5, 2}}, 'V', 1, 9, 70},
      {"V4", {n5, n5, n5, n5}, 'V', 1, 9, 80},
      {"V4", {{C::kContact, 5, 4}}, 'V', 1, 9, 80},
  };
}

// Reference t-orders of (x, y, z) along generic test arcs at a vertex.
struct QuotientOrderRow {
  int a = 1, b = 9;
  std::array<int, 3> orders;
};
inline std::vector<QuotientOrderRow> reference_quotient_orders() { return {{1, 9, {30, 20, 20}}, {1, 4, {30, 20, 15}}}; }

// Edges of the resolution graph (E1 is the trivalent node).
inline const std::vector<std::pair<int, int>>& resolution_graph_edges() {
  static const std::vector<std::pair<int, int>> e{{1, 2}, {1, 4}, {4, 3}, {1, 8}, {8, 7}, {7, 6}, {6, 5}};
  return e;
}

// Reference outcome of the elimination stages.
inline std::vector<std::pair<int, int>> reference_stage1() {
  return {{5, 3}, {5, 6}, {5, 2}, {5, 7}, {5, 4}, {5, 8}, {5, 1}, {3, 6}, {3, 2}, {3, 7},
          {3, 4}, {3, 8}, {3, 1}, {6, 2}, {6, 7}, {6, 4}, {6, 8}, {6, 1}, {2, 7}, {2, 4},
          {2, 8}, {2, 1}, {7, 4}, {7, 8}, {7, 1}, {4, 8}, {4, 1}, {8, 1}};
}
inline std::vector<std::pair<int, int>> reference_stage3() {
  return {{1, 8}, {2, 3}, {2, 5}, {2, 6}, {3, 5}, {4, 2}, {4, 6},
          {4, 7}, {6, 3}, {6, 5}, {7, 2}, {7, 6}, {8, 4}, {8, 7}};
}
inline std::vector<std::pair<int, int>> reference_remaining() {
  return {{7, 3}, {7, 5}, {8, 2}, {8, 3}, {8, 5}, {8, 6}, {4, 3},
          {4, 5}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 7}};
}

}  // namespace nashe8
