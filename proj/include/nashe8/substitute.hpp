// Composition of a polynomial with power series: p(s_1(t), ..., s_r(t)).
// Unassigned variables stay symbolic inside the series coefficients.
#pragma once

#include <map>
#include <vector>

#include "mpoly.hpp"
#include "power_series.hpp"

namespace nashe8 {

template <class K>
PowerSeries<MPoly<K>> substitute_series(const MPoly<K>& p, const std::map<int, PowerSeries<MPoly<K>>>& assign,
                                        int cap = kDefaultTruncation) {
  using S = PowerSeries<MPoly<K>>;
  for (const auto& [v, s] : assign) cap = std::min(cap, s.cap());
  std::map<int, std::vector<S>> powers;  // powers[v][e-1] = s_v^e
  auto power = [&](int v, int e) -> const S& {
    auto& pv = powers[v];
    while (static_cast<int>(pv.size()) < e) pv.push_back(pv.empty() ? assign.at(v) : pv.back() * assign.at(v));
    return pv[static_cast<size_t>(e) - 1];
  };
  S out = S(cap);
  for (const auto& [e, c] : p.terms()) {
    Exponent rest = e;
    S term = S::constant(MPoly<K>(K(1)), cap);
    for (const auto& [v, s] : assign) {
      if (!e[v]) continue;
      rest[v] = 0;
      term = term * power(v, e[v]);
    }
    out = out + term.scaled(MPoly<K>::monomial(rest, c));
  }
  return out;
}

}  // namespace nashe8
