// The binary icosahedral group in SL(2, Q(zeta5)), its special orbits on P^1,
// the invariant forms E, F, V and the rescaling to E^2 + F^3 + V^5 = 0.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "form.hpp"
#include "linalg.hpp"
#include "power_series.hpp"

namespace nashe8 {

using G5 = Mat2<Q5>;
using G60 = Mat2<Q60>;

inline Q60 to60(const Q5& a) { return a.embed<60>(); }
inline G60 to60(const G5& g) { return {to60(g.a), to60(g.b), to60(g.c), to60(g.d)}; }

// Inverse of the embedding Q(zeta5) -> Q(zeta60), if a lies in the image.
inline std::optional<Q5> to5(const Q60& a) {
  static const std::vector<Q60> basis = [] {
    std::vector<Q60> b;
    for (int k = 0; k < Q5::degree; ++k) b.push_back(Q5::zeta_pow(k).embed<60>());
    return b;
  }();
  Matrix<mpq_class> m(Q60::degree, std::vector<mpq_class>(Q5::degree));
  std::vector<mpq_class> rhs(Q60::degree);
  for (int i = 0; i < Q60::degree; ++i) {
    for (int k = 0; k < Q5::degree; ++k) m[i][k] = basis[static_cast<size_t>(k)].coord(i);
    rhs[static_cast<size_t>(i)] = a.coord(i);
  }
  // mpq_class lacks is_zero(); solve by hand on the small system
  std::vector<std::vector<mpq_class>> aug = m;
  for (int i = 0; i < Q60::degree; ++i) aug[i].push_back(rhs[static_cast<size_t>(i)]);
  const int cols = Q5::degree;
  int r = 0;
  std::vector<int> piv;
  for (int c = 0; c <= cols && r < Q60::degree; ++c) {
    int p = r;
    while (p < Q60::degree && aug[p][c] == 0) ++p;
    if (p == Q60::degree) continue;
    if (c == cols) return std::nullopt;
    std::swap(aug[p], aug[r]);
    mpq_class inv = 1 / aug[r][c];
    for (int k = c; k <= cols; ++k) aug[r][k] *= inv;
    for (int i = 0; i < Q60::degree; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      mpq_class f = aug[i][c];
      for (int k = c; k <= cols; ++k) aug[i][k] -= f * aug[r][k];
    }
    piv.push_back(c);
    ++r;
  }
  for (int i = r; i < Q60::degree; ++i)
    if (aug[i][cols] != 0) return std::nullopt;
  std::vector<mpq_class> x(cols);
  for (int i = 0; i < r; ++i) x[static_cast<size_t>(piv[static_cast<size_t>(i)])] = aug[i][cols];
  return Q5::from_coords(x);
}

// Homogeneous point [a : b], normalised to b = 1, or a = 1 when b = 0.
template <class K>
struct ProjPoint {
  K a{0}, b{0};
  static ProjPoint make(const K& x, const K& y) {
    if (!y.is_zero()) return {x / y, K(1)};
    if (x.is_zero()) throw std::invalid_argument("[0:0] is not a point");
    return {K(1), K(0)};
  }
  friend bool operator==(const ProjPoint& p, const ProjPoint& q) { return p.a == q.a && p.b == q.b; }
  friend bool operator<(const ProjPoint& p, const ProjPoint& q) {
    if (p.b != q.b) return p.b < q.b;
    return p.a < q.a;
  }
  ProjPoint act(const Mat2<K>& g) const { return make(g.a * a + g.b * b, g.c * a + g.d * b); }
  // linear form b u - a v vanishing at the point
  Form<K> linear_form() const { return Form<K>::linear(b, -a); }
  std::string str() const { return "[" + a.str() + " : " + b.str() + "]"; }
};

inline int element_order(const G5& g) {
  G5 p = g;
  for (int n = 1; n <= 120; ++n) {
    if (p == G5::identity()) return n;
    p = p * g;
  }
  throw ConsistencyError("element of infinite order");
}

// Eigenvector of g for eigenvalue mu: (b, mu - a), else (mu - d, c), else a basis vector.
template <class K>
std::pair<K, K> eigenvector(const Mat2<K>& g, const K& mu) {
  if (!g.b.is_zero()) return {g.b, mu - g.a};
  if (!g.c.is_zero()) return {mu - g.d, g.c};
  if (g.a == mu) return {K(1), K(0)};
  if (g.d == mu) return {K(0), K(1)};
  throw std::invalid_argument("not an eigenvalue");
}

struct InvariantForm {
  Form<Q5> form;
  int degree = 0;
  char label = '?';  // 'E', 'F', 'V' or 'R' (regular orbit)
};

struct Syzygy {
  Q5 alpha, beta, gamma;  // alpha E^2 + beta F^3 + gamma V^5 = 0, raw forms
  int nullity = 0;
  Q5 cE, cF, cV;  // rescaled forms are cE*E, cF*F, cV*V
};

class BinaryIcosahedral {
 public:
  BinaryIcosahedral() {
    build();
    find_special_orbits();
    build_forms();
  }

  const std::vector<G5>& elements() const { return elems_; }
  const std::vector<G60>& elements60() const { return elems60_; }
  size_t order() const { return elems_.size(); }
  const G5& generator_diag() const { return gen_diag_; }
  const G5& generator_s() const { return gen_s_; }

  // Projective image: elements modulo +-Id.
  size_t projective_order() const {
    std::set<G5> reps;
    for (const auto& g : elems_) reps.insert(std::min(g, -g));
    return reps.size();
  }
  std::map<int, int> order_census() const {
    std::map<int, int> c;
    for (const auto& g : elems_) ++c[element_order(g)];
    return c;
  }
  bool contains(const G5& g) const { return elem_set_.count(g) > 0; }
  bool contains(const G60& g) const {
    auto a = to5(g.a), b = to5(g.b), c = to5(g.c), d = to5(g.d);
    return a && b && c && d && contains(G5{*a, *b, *c, *d});
  }

  // Closure under the two generators.
  template <class K>
  std::vector<ProjPoint<K>> orbit(const ProjPoint<K>& p) const {
    const auto gens = generators_as<K>();
    std::set<ProjPoint<K>> s{p};
    std::vector<ProjPoint<K>> frontier{p};
    while (!frontier.empty()) {
      std::vector<ProjPoint<K>> next;
      for (const auto& q : frontier)
        for (const auto& g : gens) {
          auto r = q.act(g);
          if (s.insert(r).second) next.push_back(r);
        }
      frontier = std::move(next);
    }
    return {s.begin(), s.end()};
  }
  // Order of the stabiliser of p in the projective group.
  template <class K>
  int projective_stabiliser(const ProjPoint<K>& p) const {
    int n = 0;
    for (const auto& g : group_as<K>())
      if (p.act(g) == p) ++n;
    return n / 2;
  }

  // Special orbits keyed by 'V', 'F', 'E' (points over Q(zeta60)).
  const std::map<char, std::vector<ProjPoint<Q60>>>& special_orbits() const { return orbits_; }
  // A representative group element of order 10 / 6 / 4 fixing the first point of the orbit.
  const G5& axis_element(char label) const { return axis_elem_.at(label); }

  // Product of the linear forms of an invariant point set, normalised, certified invariant.
  InvariantForm orbit_form(const std::vector<ProjPoint<Q60>>& pts, char label) const {
    std::set<ProjPoint<Q60>> s(pts.begin(), pts.end());
    for (const auto& g : generators_as<Q60>())
      for (const auto& p : pts)
        if (!s.count(p.act(g))) throw std::invalid_argument("point set is not invariant");
    Form<Q60> f = Form<Q60>::constant(Q60(1));
    for (const auto& p : pts) f = f * p.linear_form();
    f = f.normalized();
    std::vector<Q5> c;
    for (const auto& x : f.coeffs()) {
      auto y = to5(x);
      if (!y) throw ConsistencyError("orbit form not defined over Q(zeta5)");
      c.push_back(*y);
    }
    InvariantForm out{Form<Q5>(c), f.degree(), label};
    if (!is_invariant(out.form)) throw ConsistencyError("orbit form not invariant");
    return out;
  }
  // Invariance under the generators implies invariance under the group.
  bool is_invariant(const Form<Q5>& f) const {
    return f.compose(gen_diag_) == f && f.compose(gen_s_) == f;
  }
  bool is_invariant_exhaustive(const Form<Q5>& f) const {
    for (const auto& g : elems_)
      if (f.compose(g) != f) return false;
    return true;
  }

  const InvariantForm& raw(char label) const { return raw_.at(label); }
  const Syzygy& syzygy() const { return syz_; }
  // Rescaled forms with E^2 + F^3 + V^5 = 0.
  const Form<Q5>& E() const { return hatE_; }
  const Form<Q5>& F() const { return hatF_; }
  const Form<Q5>& V() const { return hatV_; }
  const Form<Q60>& E60() const { return hatE60_; }
  const Form<Q60>& F60() const { return hatF60_; }
  const Form<Q60>& V60() const { return hatV60_; }

 private:
  std::vector<G5> elems_;
  std::vector<G60> elems60_;
  std::set<G5> elem_set_;
  G5 gen_diag_, gen_s_;
  std::map<char, std::vector<ProjPoint<Q60>>> orbits_;
  std::map<char, G5> axis_elem_;
  std::map<char, InvariantForm> raw_;
  Syzygy syz_;
  Form<Q5> hatE_, hatF_, hatV_;
  Form<Q60> hatE60_, hatF60_, hatV60_;

  template <class K>
  std::array<Mat2<K>, 2> generators_as() const {
    if constexpr (std::is_same_v<K, Q5>) return {gen_diag_, gen_s_};
    else return {to60(gen_diag_), to60(gen_s_)};
  }
  template <class K>
  const std::vector<Mat2<K>>& group_as() const {
    if constexpr (std::is_same_v<K, Q5>) return elems_;
    else return elems60_;
  }

  void build() {
    const Q5 z = Q5::zeta();
    const Q5 sqrt5 = Q5(2) * z + Q5(2) * z.pow(4) + Q5(1);
    if (sqrt5 * sqrt5 != Q5(5)) throw ConsistencyError("sqrt5");
    const Q5 p = (z - z.pow(4)) / sqrt5, q = (z.pow(2) - z.pow(3)) / sqrt5;
    gen_diag_ = {z.pow(3), Q5(0), Q5(0), z.pow(2)};
    gen_s_ = {p, q, q, -p};
    std::vector<G5> frontier{G5::identity()};
    elem_set_.insert(G5::identity());
    while (!frontier.empty()) {
      std::vector<G5> next;
      for (const auto& g : frontier)
        for (const auto& h : {gen_diag_, gen_s_}) {
          G5 x = g * h;
          if (elem_set_.insert(x).second) next.push_back(x);
        }
      if (elem_set_.size() > 240) throw ConsistencyError("group closure exceeded bound");
      frontier = std::move(next);
    }
    elems_.assign(elem_set_.begin(), elem_set_.end());
    for (const auto& g : elems_) {
      if (g.det() != Q5(1)) throw ConsistencyError("element with det != 1");
      elems60_.push_back(to60(g));
    }
  }

  void find_special_orbits() {
    // The order-10/6/4 axes carry the vertex / face / edge orbits.
    const std::map<char, std::pair<int, int>> want{{'V', {10, 1}}, {'F', {6, 10}}, {'E', {4, 15}}};
    for (const auto& [label, spec] : want) {
      const auto [ord, root] = spec;
      for (const auto& g : elems_) {
        if (element_order(g) != ord) continue;
        // eigenvalue zeta60^root, or zeta10 power for V
        G60 h = to60(g);
        std::optional<Q60> mu;
        for (int k = 0; k < 60 && !mu; ++k) {
          Q60 m = Q60::zeta_pow(k);
          // m is an eigenvalue iff m^2 - tr m + 1 = 0
          if ((m * m - h.trace() * m + Q60(1)).is_zero()) mu = m;
        }
        auto [x, y] = eigenvector(h, *mu);
        auto pt = ProjPoint<Q60>::make(x, y);
        orbits_[label] = orbit(pt);
        axis_elem_[label] = g;
        break;
      }
    }
  }

  void build_forms() {
    for (char l : {'E', 'F', 'V'}) raw_[l] = orbit_form(orbits_.at(l), l);
    const Form<Q5> E2 = raw_['E'].form.pow(2), F3 = raw_['F'].form.pow(3), V5 = raw_['V'].form.pow(5);
    Matrix<Q5> m(61, std::vector<Q5>(3));
    for (int i = 0; i <= 60; ++i) {
      m[i][0] = E2[i];
      m[i][1] = F3[i];
      m[i][2] = V5[i];
    }
    auto ns = nullspace(m, 3);
    syz_.nullity = static_cast<int>(ns.size());
    if (ns.size() != 1) throw ConsistencyError("syzygy space has dimension " + std::to_string(ns.size()));
    syz_.alpha = ns[0][0];
    syz_.beta = ns[0][1];
    syz_.gamma = ns[0][2];
    rescale();
    hatE_ = raw_['E'].form.scaled(syz_.cE);
    hatF_ = raw_['F'].form.scaled(syz_.cF);
    hatV_ = raw_['V'].form.scaled(syz_.cV);
    if (!(hatE_.pow(2) + hatF_.pow(3) + hatV_.pow(5)).is_zero()) throw ConsistencyError("rescaled syzygy");
    auto up = [](const Form<Q5>& f) { return f.map<Q60>([](const Q5& x) { return to60(x); }); };
    hatE60_ = up(hatE_);
    hatF60_ = up(hatF_);
    hatV60_ = up(hatV_);
  }

  // Exact n-th root of a rational, if it exists.
  static std::optional<mpq_class> rational_root(const mpq_class& x, unsigned n) {
    if (x < 0 && n % 2 == 0) return std::nullopt;
    mpz_class num = abs(x.get_num()), den = x.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n)) return std::nullopt;
    mpq_class r(rn, rd);
    if (x < 0) r = -r;
    return r;
  }

  void rescale() {
    const Q5 &a = syz_.alpha, &b = syz_.beta, &c = syz_.gamma;
    if (a.is_rational() && b.is_rational() && c.is_rational()) {
      // k = sign(a) * prod p^e_p with e_p solving the CRT system mod 30
      mpq_class qa = a.coord(0), qb = b.coord(0), qc = c.coord(0);
      std::set<mpz_class> primes;
      for (const mpq_class* q : {&qa, &qb, &qc})
        for (mpz_class n : {mpz_class(abs(q->get_num())), mpz_class(q->get_den())}) {
          for (mpz_class p = 2; p * p <= n; ++p)
            while (n % p == 0) {
              primes.insert(p);
              n /= p;
            }
          if (n > 1) primes.insert(n);
        }
      auto val = [](const mpq_class& q, const mpz_class& p) {
        int v = 0;
        mpz_class n = q.get_num(), d = q.get_den();
        while (n % p == 0) { n /= p; ++v; }
        while (d % p == 0) { d /= p; --v; }
        return v;
      };
      mpq_class k = qa < 0 ? -1 : 1;
      for (const auto& p : primes) {
        int e = 0;
        for (; e < 30; ++e)
          if ((val(qa, p) + e) % 2 == 0 && ((val(qb, p) + e) % 3 + 3) % 3 == 0 && ((val(qc, p) + e) % 5 + 5) % 5 == 0) break;
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
        k *= pe;
      }
      auto ra = rational_root(qa * k, 2), rb = rational_root(qb * k, 3), rc = rational_root(qc * k, 5);
      if (ra && rb && rc) {
        syz_.cE = Q5(*ra);
        syz_.cF = Q5(*rb);
        syz_.cV = Q5(*rc);
        return;
      }
    }
    // general fallback: k = a^15 b^20 c^24
    syz_.cE = a.pow(8) * b.pow(10) * c.pow(12);
    syz_.cF = a.pow(5) * b.pow(7) * c.pow(8);
    syz_.cV = a.pow(3) * b.pow(4) * c.pow(5);
  }
};

// Shared read-only instance.
inline const BinaryIcosahedral& icosahedral() {
  static const BinaryIcosahedral g;
  return g;
}

// Binary form evaluated on series: F(u(t), v(t)).
template <class K, class R>
PowerSeries<R> eval_form(const Form<K>& f, const PowerSeries<R>& u, const PowerSeries<R>& v) {
  const int cap = std::min(u.cap(), v.cap());
  PowerSeries<R> h = PowerSeries<R>::constant(R(f[0]), cap), vp = PowerSeries<R>::constant(R(1), cap);
  for (int k = 1; k <= f.degree(); ++k) {
    vp = vp * v;
    h = h * u + vp.scaled(R(f[k]));
  }
  return h;
}

// (x, y, z) = (E, F, V)(u, v) with the rescaled forms.
template <class R>
std::array<PowerSeries<R>, 3> quotient_map(const PowerSeries<R>& u, const PowerSeries<R>& v) {
  const auto& G = icosahedral();
  return {eval_form(G.E60(), u, v), eval_form(G.F60(), u, v), eval_form(G.V60(), u, v)};
}

}  // namespace nashe8
