#pragma once

// The extension evaluator: the unique state of O_n extending a periodic pure
// product state, parameterized by a circle measure and evaluated in closed
// form through the tensor-product realization of the underlying GNS data.
// The linking vector is fixed to e_1^{(x)p} (x) f_1 (x) f_2 (x) ... on the
// canonicalized sequence, which pins the phase ambiguity deterministically.

#include "cuntzkit/measure.hpp"
#include "cuntzkit/product_state.hpp"

namespace cuntzkit {

struct ExtensionState {
  ProductState base;
  CircleMeasure measure;

  ExtensionState(ProductState f, CircleMeasure mu)
      : base(std::move(f)), measure(std::move(mu)) {}
};

namespace detail {

// Value on a monomial with k = |s| - |t| >= 0:
//   0 unless p | k, else T(s,t) * moment(mu, k/p), where with m = |s|,
//   T(s,t) = prod_{j=1}^{|t|} <f_j, e_{t_j}>
//          * prod_{j=1}^{m} <e_{s_j}, f_j>
//          * prod_{j=m+1}^{|preperiod|+k} <f_{j-k}, f_j>.
// The first product comes from the k leading e_1 slots of xi_k pairing
// trivially against the k letters of 1 appended to t; the last product is
// finite because the canonicalized sequence satisfies f_{j-k} = f_j exactly
// beyond the preperiod when p | k.
inline cd extend_eval_monomial_nonneg(const ProductState& f, int p, const CircleMeasure& mu,
                                      const MultiIndex& s, const MultiIndex& t) {
  const int k = static_cast<int>(s.size()) - static_cast<int>(t.size());
  if (k % p != 0) return cd(0.0);
  const std::size_t m = s.size();
  cd value(1.0);
  for (std::size_t j = 0; j < t.size(); ++j) value *= f.at(j + 1)(t[j] - 1);
  for (std::size_t j = 0; j < m; ++j) value *= std::conj(f.at(j + 1)(s[j] - 1));
  const std::size_t tail_end = f.preperiod.size() + static_cast<std::size_t>(k);
  for (std::size_t j = m + 1; j <= tail_end; ++j) value *= ip(f.at(j - k), f.at(j));
  return value * moment(mu, k / p);
}

}  // namespace detail

// Linear extension over terms; negative degrees via the Hermitian symmetry
// rho~(x) = conj(rho~(x*)). Total on O_n.
inline cd extend_eval(const ExtensionState& rho, const AlgebraElement& x) {
  if (x.ambient() != rho.base.n) throw ambient_mismatch();
  const int p = period(rho.base);
  cd total(0.0);
  for (auto& [mono, c] : x.terms()) {
    cd v;
    if (mono.degree() >= 0)
      v = detail::extend_eval_monomial_nonneg(rho.base, p, rho.measure, mono.s, mono.t);
    else
      v = std::conj(
          detail::extend_eval_monomial_nonneg(rho.base, p, rho.measure, mono.t, mono.s));
    total += c * v;
  }
  return total;
}

}  // namespace cuntzkit
