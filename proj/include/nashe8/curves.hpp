// Orbit curves of model branches under the binary icosahedral group:
// branch counts, multiplicities, tangents, intersection numbers, and the
// equations of the curves in the invariant ring C[x, y, z].
#pragma once

#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eliminate.hpp"
#include "icosahedral.hpp"
#include "linalg.hpp"
#include "substitute.hpp"
#include "tables.hpp"

namespace nashe8 {

using P60 = MPoly<Q60>;
using S60 = PowerSeries<P60>;

// Variable layout. Plane: u, v then moduli. Invariant ring: x, y, z then Lambda_c.
inline constexpr int kU = 0, kV = 1;
inline constexpr int kModulus0 = 2;
inline constexpr int kTestModulus = 10;
inline constexpr int kSlope = 11;
inline constexpr int kX = 0, kY = 1, kZ = 2, kLambda0 = 3;
inline const std::vector<int>& invariant_weights() {
  static const std::vector<int> w{30, 20, 12};
  return w;
}

// p(a u + b v, c u + d v) for p in the variables u, v (other variables untouched).
inline P60 linear_change(const P60& p, const G60& A) {
  const P60 U = P60::var(kU).scaled(A.a) + P60::var(kV).scaled(A.b);
  const P60 V = P60::var(kU).scaled(A.c) + P60::var(kV).scaled(A.d);
  std::map<int, P60> up{{0, P60(Q60(1))}}, vp{{0, P60(Q60(1))}};
  auto pw = [](std::map<int, P60>& cache, const P60& base, int e) -> const P60& {
    for (int k = static_cast<int>(cache.size()); k <= e; ++k) cache[k] = cache[k - 1] * base;
    return cache[e];
  };
  P60 out;
  for (const auto& [e, c] : p.terms()) {
    Exponent rest = e;
    rest[kU] = rest[kV] = 0;
    out += P60::monomial(rest, c) * pw(up, U, e[kU]) * pw(vp, V, e[kV]);
  }
  return out;
}

// F(p, q) for a binary form and polynomial arguments.
inline P60 eval_form_at(const Form<Q60>& f, const P60& p, const P60& q) {
  P60 s(f[0]), qp(Q60(1));
  for (int k = 1; k <= f.degree(); ++k) {
    qp = qp * q;
    s = s * p + qp.scaled(f[k]);
  }
  return s;
}

// t -> frame . (t^a, sum_e c_e t^e)
struct Branch {
  G60 frame = G60::identity();
  int a = 1;
  std::vector<std::pair<int, P60>> y;  // increasing exponents

  static Branch monomial(const G60& frame, int a, int b, int modulus_var) {
    return {frame, a, {{b, P60::var(modulus_var)}}};
  }
  int lead_b() const { return y.empty() ? 0 : y.front().first; }

  std::pair<S60, S60> series(int cap = kDefaultTruncation) const {
    const S60 x = S60::monomial(P60(Q60(1)), a, cap);
    S60 w(cap);
    for (const auto& [e, c] : y) w = w + S60::monomial(c, e, cap);
    return {x.scaled(P60(frame.a)) + w.scaled(P60(frame.b)), x.scaled(P60(frame.c)) + w.scaled(P60(frame.d))};
  }
  Branch moved(const G60& g) const {
    Branch r = *this;
    r.frame = g * frame;
    return r;
  }
  // Defining polynomial in frame coordinates U = var 0, V = var 1.
  P60 frame_equation() const {
    TPoly<Q60> x(static_cast<size_t>(a) + 1), w;
    x[static_cast<size_t>(a)] = P60(Q60(1));
    for (const auto& [e, c] : y) {
      if (w.size() <= static_cast<size_t>(e)) w.resize(static_cast<size_t>(e) + 1);
      w[static_cast<size_t>(e)] += c;
    }
    return eliminate_t(x, w, kU, kV);
  }
  P60 equation() const { return linear_change(frame_equation(), frame.inverse()); }
  std::string str() const {
    std::string s = "(t^" + std::to_string(a) + ", ";
    for (size_t n = 0; n < y.size(); ++n) {
      std::string c = y[n].second.str({"u", "v", "l", "m", "n", "o", "p", "q", "r", "s", "mu", "k"});
      s += (n ? " + " : "") + c + "*t^" + std::to_string(y[n].first);
    }
    return s + ")";
  }
};

// Lowest-order coefficient vector of (u(t), v(t)).
inline std::pair<P60, P60> tangent_vector(const Branch& b) {
  auto [u, v] = b.series();
  auto ou = u.order(), ov = v.order();
  int o = std::min(ou.value_or(1 << 20), ov.value_or(1 << 20));
  return {u.coeff(o), v.coeff(o)};
}

// Frame attached to a point class: columns are the eigenvectors of an axis
// element for mu and mu^-1, so the stabiliser of the axis becomes diagonal.
struct ClassFrame {
  char orbit = 'P';
  G60 M = G60::identity();
  G5 axis = G5::identity();
};

inline G60 frame_from_axis(const G60& g, const Q60& mu) {
  auto [p, q] = eigenvector(g, mu);
  auto [r, s] = eigenvector(g, mu.inverse());
  G60 M{p, r, q, s};
  if (M.det().is_zero()) throw ConsistencyError("degenerate frame");
  if (!(M.inverse() * g * M).is_diagonal()) throw ConsistencyError("frame does not diagonalise the axis");
  return M;
}

inline ClassFrame class_frame(char orbit) {
  const auto& G = icosahedral();
  if (orbit == 'P') return {'P', G60::identity(), G5::identity()};
  if (orbit == 'V') {
    const G5 g = G.generator_diag();
    return {'V', frame_from_axis(to60(g), to60(g.a)), g};
  }
  const int ord = orbit == 'E' ? 4 : 6;
  for (const auto& g : G.elements()) {
    if (element_order(g) != ord) continue;
    if (orbit == 'F' && g.trace() != Q5(1)) continue;
    const Q60 mu = Q60::zeta_pow(orbit == 'E' ? 15 : 10);
    const G60 h = to60(g);
    if (!(mu * mu - h.trace() * mu + Q60(1)).is_zero()) continue;
    return {orbit, frame_from_axis(h, mu), g};
  }
  throw ConsistencyError(std::string("no axis element for orbit ") + orbit);
}

// Which special orbit contains the tangent of b ('P' if none).
inline char tangent_orbit(const Branch& b) {
  const auto& G = icosahedral();
  auto [p, q] = tangent_vector(b);
  if (eval_form_at(G.V60(), p, q).is_zero()) return 'V';
  if (eval_form_at(G.F60(), p, q).is_zero()) return 'F';
  if (eval_form_at(G.E60(), p, q).is_zero()) return 'E';
  return 'P';
}

// Model branch of class k from a divisor row (orbit label and exponents are input).
inline Branch model_branch(const DivisorRow& row, int modulus_var = kModulus0) {
  if (row.a < 1 || row.b < row.a || std::gcd(row.a, row.b) != 1)
    throw std::invalid_argument("model exponents must satisfy 1 <= a <= b, gcd(a, b) = 1");
  const ClassFrame f = class_frame(row.orbit);
  Branch b = Branch::monomial(f.M, row.a, row.b, modulus_var);
  if (row.orbit != 'P' && tangent_orbit(b) != row.orbit)
    throw ConsistencyError("frame tangent lies outside the declared orbit");
  return b;
}

inline const std::vector<Q60>& roots_of_unity60() {
  static const std::vector<Q60> r = [] {
    std::vector<Q60> v;
    for (int j = 0; j < 60; ++j) v.push_back(Q60::zeta_pow(j));
    return v;
  }();
  return r;
}

// Group elements g with g . model = model as parametrised sets:
// M^-1 g M = diag(mu, nu) and some u in mu_60 has u^a = mu, u^e = nu for all e.
inline std::vector<G5> branch_stabiliser(const Branch& model) {
  const auto& G = icosahedral();
  const auto& rt = roots_of_unity60();
  const G60 Mi = model.frame.inverse();
  std::vector<G5> H;
  for (size_t n = 0; n < G.order(); ++n) {
    const G60 h = Mi * G.elements60()[n] * model.frame;
    if (!h.is_diagonal()) continue;
    for (int j = 0; j < 60; ++j) {
      if (rt[static_cast<size_t>((j * model.a) % 60)] != h.a) continue;
      bool ok = true;
      for (const auto& [e, c] : model.y) ok = ok && rt[static_cast<size_t>((j * e) % 60)] == h.d;
      if (ok) {
        H.push_back(G.elements()[n]);
        break;
      }
    }
  }
  return H;
}

// Order of the cyclic stabiliser of the tangent axis (10, 6, 4 at V, F, E).
inline int axis_stabiliser_order(const Branch& model) {
  const auto& G = icosahedral();
  const G60 Mi = model.frame.inverse();
  int n = 0;
  for (const auto& g : G.elements60())
    if ((Mi * g * model.frame).is_diagonal()) ++n;
  return n;
}

// Contact m with a general point of E_k (s = branch stabiliser order, g = gcd(s, m)):
// (t^(a m/g), lambda t^(b m/g) + c t^(b m/g + s/g)).
inline Branch contact_branch(const DivisorRow& row, int m, int lvar, int cvar) {
  const Branch base = model_branch(row, lvar);
  const int s = static_cast<int>(branch_stabiliser(base).size());
  const int g = std::gcd(s, m);
  const int A = row.a * m / g, B = row.b * m / g;
  return {base.frame, A, {{B, P60::var(lvar)}, {B + s / g, P60::var(cvar)}}};
}

// Curvette through E_k n E_l on one axis: sum of the toric generators
// e_k = (a_k, b_k) n / (a_k + b_k), n the axis stabiliser order.
inline Branch crossing_branch(const DivisorRow& rk, const DivisorRow& rl, int lvar) {
  if (rk.orbit != rl.orbit || rk.orbit == 'P') throw std::invalid_argument("crossing needs two divisors over one special axis");
  const Branch bk = model_branch(rk, lvar);
  const int n = axis_stabiliser_order(bk);
  auto gen = [n](const DivisorRow& r) {
    if ((n * r.a) % (r.a + r.b) || (n * r.b) % (r.a + r.b)) throw ConsistencyError("exponents are not a toric generator");
    return std::make_pair(n * r.a / (r.a + r.b), n * r.b / (r.a + r.b));
  };
  auto [p1, q1] = gen(rk);
  auto [p2, q2] = gen(rl);
  int p = p1 + p2, q = q1 + q2, g = std::gcd(p, q);
  return Branch::monomial(bk.frame, p / g, q / g, lvar);
}

struct OrbitCurve {
  Branch model;
  std::vector<Branch> branches;
  std::vector<size_t> reps;  // indices into the group element list
  int stabiliser = 0;
  bool cross_checked = false;
};

// All distinct images g . model. Coset enumeration by the branch stabiliser;
// optionally cross-checked by counting distinct monic equations over all 120 g.
inline OrbitCurve orbit_curve(const Branch& model, bool cross_check = true) {
  const auto& G = icosahedral();
  std::map<G5, size_t> index;
  for (size_t n = 0; n < G.order(); ++n) index[G.elements()[n]] = n;
  const auto H = branch_stabiliser(model);
  OrbitCurve W;
  W.model = model;
  W.stabiliser = static_cast<int>(H.size());
  std::vector<bool> used(G.order(), false);
  for (size_t n = 0; n < G.order(); ++n) {
    if (used[n]) continue;
    W.reps.push_back(n);
    W.branches.push_back(model.moved(G.elements60()[n]));
    for (const auto& h : H) used[index.at(G.elements()[n] * h)] = true;
  }
  if (W.branches.size() * H.size() != G.order()) throw ConsistencyError("orbit-stabiliser count");
  if (cross_check) {
    const P60 eq0 = model.frame_equation();
    const G60 Mi = model.frame.inverse();
    std::set<P60> eqs;
    for (const auto& g : G.elements60()) eqs.insert(linear_change(eq0, Mi * g.inverse()).monic());
    if (eqs.size() != W.branches.size()) throw ConsistencyError("orbit count by equations disagrees with cosets");
    W.cross_checked = true;
  }
  return W;
}

// Union of orbit curves for a list of component specs, fresh moduli per component.
inline std::vector<OrbitCurve> build_components(const std::array<DivisorRow, 8>& t1, const std::vector<CurveSpec>& parts) {
  std::vector<OrbitCurve> out;
  int var = kModulus0;
  for (const auto& p : parts) {
    const DivisorRow& r = t1.at(static_cast<size_t>(p.k - 1));
    switch (p.kind) {
      case CurveSpec::kTransverse:
        out.push_back(orbit_curve(model_branch(r, var++)));
        break;
      case CurveSpec::kContact:
        out.push_back(orbit_curve(contact_branch(r, p.m, var, var + 1), false));
        var += 2;
        break;
      case CurveSpec::kCrossing:
        out.push_back(orbit_curve(crossing_branch(r, t1.at(static_cast<size_t>(p.m - 1)), var++)));
        break;
    }
    if (var >= kTestModulus) throw std::invalid_argument("too many components");
  }
  return out;
}

inline std::vector<Branch> all_branches(const std::vector<OrbitCurve>& comps) {
  std::vector<Branch> b;
  for (const auto& c : comps) b.insert(b.end(), c.branches.begin(), c.branches.end());
  return b;
}

// alpha u + beta v
struct Line {
  P60 alpha, beta;
  std::string str() const { return "(" + alpha.str({"u", "v"}) + ")*u + (" + beta.str({"u", "v"}) + ")*v"; }
};

inline Line tangent_line(const Branch& b) {
  auto [p, q] = tangent_vector(b);
  return {q, -p};
}
// v - mu u with a fresh slope indeterminate.
inline Line generic_line() { return {-P60::var(kSlope), P60(Q60(1))}; }

inline int intersect_line(const Branch& b, const Line& L) {
  auto [u, v] = b.series();
  return t_order(u.scaled(L.alpha) + v.scaled(L.beta));
}
inline int intersect_line(const std::vector<Branch>& W, const Line& L) {
  int s = 0;
  for (const auto& b : W) s += intersect_line(b, L);
  return s;
}

inline int multiplicity(const std::vector<Branch>& W) { return intersect_line(W, generic_line()); }

// Order of a branch against its own tangent line (unbounded for a line).
inline int per_branch_tangent_order(const Branch& b) {
  if (b.a == b.lead_b()) throw std::invalid_argument("branch is a line through its tangent");
  return intersect_line(b, tangent_line(b));
}

// Distinct tangent directions with the number of branches along each.
inline std::vector<std::pair<std::pair<P60, P60>, int>> tangent_structure(const std::vector<Branch>& W) {
  std::vector<std::pair<std::pair<P60, P60>, int>> out;
  for (const auto& b : W) {
    auto t = tangent_vector(b);
    bool found = false;
    for (auto& [s, n] : out)
      if ((s.first * t.second - s.second * t.first).is_zero()) {
        ++n;
        found = true;
        break;
      }
    if (!found) out.push_back({t, 1});
  }
  return out;
}

// I(sigma, beta): pull sigma into the frame of beta and compose with beta's frame equation.
inline int intersect_branch(const std::vector<Branch>& gamma, const Branch& test, int cap = kDefaultTruncation) {
  const P60 eq = test.frame_equation();
  const G60 Ni = test.frame.inverse();
  int total = 0;
  for (const auto& s : gamma) {
    auto [u, v] = s.series(cap);
    S60 U = u.scaled(P60(Ni.a)) + v.scaled(P60(Ni.b));
    S60 V = u.scaled(P60(Ni.c)) + v.scaled(P60(Ni.d));
    total += t_order(substitute_series(eq, {{kU, U}, {kV, V}}, cap));
  }
  return total;
}

// t-orders of (x, y, z) along a branch.
inline std::array<int, 3> quotient_orders(const Branch& b) {
  auto [u, v] = b.series();
  auto q = quotient_map(u, v);
  return {t_order(q[0]), t_order(q[1]), t_order(q[2])};
}

// ---------------------------------------------------------------------------
// Equations in the invariant ring.

inline const Form<Q60>& invariant_monomial_form(int i, int j, int k) {
  static std::map<std::array<int, 3>, Form<Q60>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::array<int, 3>{i, j, k};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const auto& G = icosahedral();
  Form<Q60> f = G.E60().pow(static_cast<unsigned>(i)) * G.F60().pow(static_cast<unsigned>(j)) *
                G.V60().pow(static_cast<unsigned>(k));
  return cache.emplace(key, std::move(f)).first->second;
}

// Monomials x^i y^j z^k, i <= 1, of weighted degree d.
inline std::vector<std::array<int, 3>> invariant_basis(int d) {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; 30 * i + 20 * j <= d; ++j) {
      int r = d - 30 * i - 20 * j;
      if (r % 12 == 0) out.push_back({i, j, r / 12});
    }
  return out;
}

// Rewrite an invariant binary form as a polynomial in x, y, z (x-degree <= 1).
inline P60 form_to_invariant(const Form<Q60>& f) {
  if (f.is_zero()) return P60();
  const auto basis = invariant_basis(f.degree());
  if (basis.empty()) throw ConsistencyError("nonzero invariant of degree " + std::to_string(f.degree()));
  Matrix<Q60> m(static_cast<size_t>(f.degree()) + 1, std::vector<Q60>(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c) {
    const auto& g = invariant_monomial_form(basis[c][0], basis[c][1], basis[c][2]);
    for (int r = 0; r <= f.degree(); ++r) m[static_cast<size_t>(r)][c] = g[r];
  }
  auto sol = linear_solve(m, f.coeffs());
  if (sol.kind == Solution<Q60>::kNone) throw ConsistencyError("form is not in the invariant ring");
  if (sol.kind != Solution<Q60>::kUnique) throw ConsistencyError("invariant basis is dependent");
  P60 h;
  for (size_t c = 0; c < basis.size(); ++c) {
    Exponent e{};
    e[kX] = static_cast<uint16_t>(basis[c][0]);
    e[kY] = static_cast<uint16_t>(basis[c][1]);
    e[kZ] = static_cast<uint16_t>(basis[c][2]);
    h.add_term(e, sol.particular[c]);
  }
  return h;
}

struct InvariantEquation {
  P60 h;                 // in x, y, z, Lambda (truncated above cap)
  Form<Q60> cone;        // lowest homogeneous part in (u, v)
  int cap = 0;
  int lambda_var = kLambda0;
};

// Equation of a transverse orbit curve, as a polynomial in x, y, z and
// Lambda = lambda^a. The coefficient of Lambda^m is the invariant form
// e_m = [Lambda^m] prod_sigma (V_sigma^a - Lambda U_sigma^b), of degree n a + m (b - a).
inline InvariantEquation invariant_equation(const OrbitCurve& W, int lambda_var, int cap) {
  const Branch& mdl = W.model;
  if (mdl.y.size() != 1 || mdl.a >= mdl.lead_b()) throw std::invalid_argument("invariant_equation needs a monomial model with a < b");
  const int a = mdl.a, b = mdl.lead_b(), n = static_cast<int>(W.branches.size());
  const int base = n * a;
  const int mmax = cap < base ? 0 : (cap - base) / (b - a);
  std::vector<std::optional<Form<Q60>>> P(static_cast<size_t>(mmax) + 1);
  P[0] = Form<Q60>::constant(Q60(1));
  for (const auto& s : W.branches) {
    const G60 Fi = s.frame.inverse();
    const Form<Q60> Va = Form<Q60>::linear(Fi.c, Fi.d).pow(static_cast<unsigned>(a));
    const Form<Q60> Ub = Form<Q60>::linear(Fi.a, Fi.b).pow(static_cast<unsigned>(b));
    for (int m = mmax; m >= 0; --m) {
      std::optional<Form<Q60>> next;
      if (P[static_cast<size_t>(m)]) next = *P[static_cast<size_t>(m)] * Va;
      if (m > 0 && P[static_cast<size_t>(m) - 1]) {
        Form<Q60> t = -(*P[static_cast<size_t>(m) - 1] * Ub);
        next = next ? *next + t : t;
      }
      P[static_cast<size_t>(m)] = next;
    }
  }
  InvariantEquation out;
  out.cap = cap;
  out.lambda_var = lambda_var;
  out.cone = *P[0];
  const P60 Lam = P60::var(lambda_var);
  for (int m = 0; m <= mmax; ++m) out.h += form_to_invariant(*P[static_cast<size_t>(m)]) * Lam.pow(static_cast<unsigned>(m));
  return out;
}

// x^2 -> -y^3 - z^5 (the surface relation).
inline P60 reduce_syzygy(P60 p) {
  for (;;) {
    bool changed = false;
    P60 r;
    for (const auto& [e, c] : p.terms()) {
      if (e[kX] < 2) {
        r.add_term(e, c);
        continue;
      }
      Exponent f = e;
      f[kX] = static_cast<uint16_t>(f[kX] - 2);
      r += P60::monomial(f, c) * (-P60::var(kY, 3) - P60::var(kZ, 5));
      changed = true;
    }
    p = r;
    if (!changed) return p;
  }
}

inline P60 union_equation(const std::vector<P60>& parts, int cap) {
  P60 h(Q60(1));
  for (const auto& p : parts) h = reduce_syzygy(h * p).truncate_weighted(invariant_weights(), cap);
  return h;
}

// Equation of a union of transverse orbit curves up to weighted degree cap.
inline P60 union_invariant_equation(const std::vector<OrbitCurve>& comps, int cap) {
  std::vector<int> low;
  for (const auto& c : comps) low.push_back(static_cast<int>(c.branches.size()) * c.model.a);
  int total = 0;
  for (int w : low) total += w;
  std::vector<P60> parts;
  for (size_t c = 0; c < comps.size(); ++c) {
    const int own_cap = cap - (total - low[c]);
    parts.push_back(invariant_equation(comps[c], kLambda0 + static_cast<int>(c), own_cap).h);
  }
  return union_equation(parts, cap);
}

// E^e F^f V^v with lowest part = product; throws if a non-special factor remains.
inline std::array<int, 3> tangent_cone_class(const Form<Q60>& cone) {
  const auto& G = icosahedral();
  std::array<int, 3> ex{0, 0, 0};
  Form<Q60> r = cone;
  const std::array<const Form<Q60>*, 3> fs{&G.E60(), &G.F60(), &G.V60()};
  for (int i = 0; i < 3; ++i)
    while (r.degree() >= fs[static_cast<size_t>(i)]->degree()) {
      auto q = r.divide(*fs[static_cast<size_t>(i)]);
      if (!q) break;
      r = *q;
      ++ex[static_cast<size_t>(i)];
    }
  if (r.degree() != 0) throw ConsistencyError("tangent cone has a factor outside the special orbits");
  return ex;
}

// Coefficient of x^i y^j z^k as a polynomial in the remaining variables.
inline std::map<std::array<int, 3>, P60> coefficients_xyz(const P60& h) {
  std::map<std::array<int, 3>, P60> out;
  for (const auto& [e, c] : h.terms()) {
    Exponent rest = e;
    rest[kX] = rest[kY] = rest[kZ] = 0;
    out[{e[kX], e[kY], e[kZ]}].add_term(rest, c);
  }
  return out;
}

struct ShapeReport {
  bool ok = true;
  std::vector<std::string> problems;
  std::string observed;  // monomials present up to the shape's top weight
};

inline std::string monomial_name(int i, int j, int k) {
  std::string s;
  auto put = [&](const char* n, int e) {
    if (!e) return;
    s += n;
    if (e > 1) s += std::to_string(e);
  };
  put("E", i);
  put("F", j);
  put("V", k);
  return s.empty() ? "1" : s;
}

// Written "nonzero" terms must be generically nonzero; nothing outside the
// written set may appear up to the top written weight.
inline ShapeReport check_shape(const P60& h, const Shape& shape) {
  ShapeReport r;
  int top = 0;
  std::set<std::array<int, 3>> written;
  for (const auto& t : shape.terms) {
    top = std::max(top, t.weight());
    written.insert({t.e, t.f, t.v});
  }
  const auto cs = coefficients_xyz(h);
  for (const auto& t : shape.terms) {
    auto it = cs.find({t.e, t.f, t.v});
    if (t.nonzero && (it == cs.end() || it->second.is_zero())) {
      r.ok = false;
      r.problems.push_back(monomial_name(t.e, t.f, t.v) + " expected nonzero");
    }
  }
  for (const auto& [m, c] : cs) {
    if (30 * m[0] + 20 * m[1] + 12 * m[2] > top || c.is_zero()) continue;
    if (!r.observed.empty()) r.observed += " ";
    r.observed += monomial_name(m[0], m[1], m[2]);
    // the unwritten tail starts at the top written weight
    if (!written.count(m) && 30 * m[0] + 20 * m[1] + 12 * m[2] < top) {
      r.ok = false;
      r.problems.push_back(monomial_name(m[0], m[1], m[2]) + " present but not in the written shape");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// The intersection data consumed by the elimination calculus, computed from
// divisor rows. Test curves: index 0 is a generic line, j = 2..8 is L_j.

inline constexpr int kGenericTest = 0;

struct CurveData {
  std::array<int, 9> branches{}, mult{}, tangent_I{}, tangent_order{}, stabiliser{};
  std::array<int, 9> tangents{}, per_tangent{};  // distinct tangent lines, branches along each
  std::array<std::array<int, 9>, 9> I{};  // I[k][j]
  std::array<int, 9> orbit_size{};  // size of the orbit of the tangent point
};

inline std::string test_curve_name(int j) { return j == kGenericTest ? "generic line" : "L" + std::to_string(j); }

// Orbit curves are cached by model (orbit, a, b) so repeated runs on
// perturbed tables only pay for what changed.
inline const OrbitCurve& class_orbit_curve(const DivisorRow& row) {
  static std::mutex mu;
  static std::map<std::array<int, 3>, OrbitCurve> cache;
  const std::array<int, 3> key{row.orbit, row.a, row.b};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  OrbitCurve W = orbit_curve(model_branch(row, kModulus0));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(W)).first->second;
}

inline int cached_intersect_line(const DivisorRow& rk, const DivisorRow& rj) {
  static std::mutex mu;
  static std::map<std::array<int, 6>, int> cache;
  const std::array<int, 6> key{rk.orbit, rk.a, rk.b, rj.orbit, rj.a, rj.b};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const int v = intersect_line(class_orbit_curve(rk).branches, tangent_line(model_branch(rj, kModulus0 + 1)));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, v);
  return v;
}

inline CurveData compute_curve_data(const std::array<DivisorRow, 8>& t1) {
  CurveData d;
  for (int k = 1; k <= 8; ++k) {
    const auto& row = t1.at(static_cast<size_t>(k - 1));
    const OrbitCurve& W = class_orbit_curve(row);
    d.branches[k] = static_cast<int>(W.branches.size());
    d.stabiliser[k] = W.stabiliser;
    d.mult[k] = multiplicity(W.branches);
    d.I[k][kGenericTest] = d.mult[k];
    const auto ts = tangent_structure(W.branches);
    d.tangents[k] = static_cast<int>(ts.size());
    d.per_tangent[k] = ts.front().second;
    for (const auto& t : ts)
      if (t.second != d.per_tangent[k]) d.per_tangent[k] = -1;
    d.orbit_size[k] = row.orbit == 'P' ? 1 : d.tangents[k];
    if (row.a == row.b) {
      d.tangent_order[k] = 0;  // a line: no own tangent order
      d.tangent_I[k] = d.mult[k];
    } else {
      d.tangent_order[k] = per_branch_tangent_order(W.model);
    }
  }
  for (int k = 1; k <= 8; ++k)
    for (int j = 2; j <= 8; ++j) d.I[k][j] = cached_intersect_line(t1.at(static_cast<size_t>(k - 1)), t1.at(static_cast<size_t>(j - 1)));
  for (int k = 2; k <= 8; ++k)
    if (t1.at(static_cast<size_t>(k - 1)).a != t1.at(static_cast<size_t>(k - 1)).b) d.tangent_I[k] = d.I[k][k];
  return d;
}

}  // namespace nashe8
