#pragma once

// Pure product states of the gauge-invariant core from eventually periodic
// sequences of unit vectors: evaluation, the backward/forward shifts, period,
// quasi-orbit representatives and shift-equivalence.

#include <cstddef>
#include <optional>
#include <vector>

#include "cuntzkit/algebra.hpp"

namespace cuntzkit {

inline Eigen::VectorXcd basis_vector(int n, int a) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  v(a - 1) = cd(1.0);
  return v;
}

inline void require_unit_vector(const Eigen::VectorXcd& v) {
  if (std::abs(v.norm() - 1.0) > tol::unit_norm) throw invalid_value("vector is not unit norm");
}

// [u] = [v] iff |<u,v>| > 1 - tol::line; the single threshold governing all
// line classification.
inline bool same_line(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  return std::abs(ip(u, v)) > 1.0 - tol::line;
}

// Rescale so the first coordinate of modulus > 1e-10 is real positive.
inline Eigen::VectorXcd canonical_phase(Eigen::VectorXcd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-10) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

// Deterministic total order on canonical vectors (coordinatewise on re, im
// with tolerance 1e-9); used only to pick rotation-minimal tuples.
inline bool vector_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() < b(i).real() - 1e-9) return true;
    if (a(i).real() > b(i).real() + 1e-9) return false;
    if (a(i).imag() < b(i).imag() - 1e-9) return true;
    if (a(i).imag() > b(i).imag() + 1e-9) return false;
  }
  return false;
}

// An eventually periodic sequence of unit vectors in C^n. Stored in canonical
// form: every vector phase-fixed, the period block of minimal length, and
// preperiod entries that already follow the periodic pattern absorbed into it.
struct ProductState {
  int n;
  std::vector<Eigen::VectorXcd> preperiod;
  std::vector<Eigen::VectorXcd> period_block;  // nonempty

  ProductState(int n_, std::vector<Eigen::VectorXcd> pre, std::vector<Eigen::VectorXcd> block)
      : n(n_), preperiod(std::move(pre)), period_block(std::move(block)) {
    if (n < 2) throw invalid_value("ambient n must be >= 2");
    if (period_block.empty()) throw invalid_value("period block must be nonempty");
    for (auto& v : preperiod) {
      if (v.size() != n) throw ambient_mismatch();
      require_unit_vector(v);
    }
    for (auto& v : period_block) {
      if (v.size() != n) throw ambient_mismatch();
      require_unit_vector(v);
    }
    canonicalize();
  }

  // Constant sequence f == v.
  static ProductState constant(int n, const Eigen::VectorXcd& v) {
    return ProductState(n, {}, {v});
  }

  // f_i, 1-based.
  const Eigen::VectorXcd& at(std::size_t i) const {
    if (i <= preperiod.size()) return preperiod[i - 1];
    return period_block[(i - 1 - preperiod.size()) % period_block.size()];
  }

 private:
  void canonicalize() {
    for (auto& v : preperiod) v = canonical_phase(std::move(v));
    for (auto& v : period_block) v = canonical_phase(std::move(v));

    // Minimal block length: smallest divisor d of L with all cyclic line
    // matches (eventual line equality is forced for eventually periodic
    // sequences of finite period).
    const std::size_t L = period_block.size();
    for (std::size_t d = 1; d < L; ++d) {
      if (L % d != 0) continue;
      bool ok = true;
      for (std::size_t i = 0; i < L && ok; ++i)
        ok = same_line(period_block[i], period_block[(i + d) % L]);
      if (ok) {
        period_block.resize(d);
        break;
      }
    }

    // Absorb preperiod entries that extend the periodic pattern backwards:
    // if the last preperiod vector matches the block element preceding
    // block[0] cyclically, drop it and rotate the block right.
    while (!preperiod.empty() && same_line(preperiod.back(), period_block.back())) {
      preperiod.pop_back();
      period_block.insert(period_block.begin(), period_block.back());
      period_block.pop_back();
    }
  }
};

inline bool same_canonical_state(const ProductState& f, const ProductState& g) {
  if (f.n != g.n || f.preperiod.size() != g.preperiod.size() ||
      f.period_block.size() != g.period_block.size())
    return false;
  for (std::size_t i = 0; i < f.preperiod.size(); ++i)
    if ((f.preperiod[i] - g.preperiod[i]).norm() > tol::gram) return false;
  for (std::size_t i = 0; i < f.period_block.size(); ++i)
    if ((f.period_block[i] - g.period_block[i]).norm() > tol::gram) return false;
  return true;
}

// omega_f(v_s v_t*) = prod_i <e_{s_i}, f_i><f_i, e_{t_i}>, linear over terms.
// Every term must have gauge degree 0.
inline cd eval_product_state(const ProductState& f, const AlgebraElement& x) {
  if (x.ambient() != f.n) throw ambient_mismatch();
  cd total(0.0);
  for (auto& [m, c] : x.terms()) {
    if (m.degree() != 0) throw not_in_core();
    cd v(1.0);
    for (std::size_t i = 0; i < m.s.size(); ++i) {
      const Eigen::VectorXcd& fi = f.at(i + 1);
      v *= std::conj(fi(m.s[i] - 1)) * fi(m.t[i] - 1);
    }
    total += c * v;
  }
  return total;
}

// alpha*: drop f_1.
inline ProductState shift_back(const ProductState& f) {
  std::vector<Eigen::VectorXcd> pre = f.preperiod;
  std::vector<Eigen::VectorXcd> block = f.period_block;
  if (!pre.empty()) {
    pre.erase(pre.begin());
  } else {
    block.push_back(block.front());
    block.erase(block.begin());
  }
  return ProductState(f.n, std::move(pre), std::move(block));
}

// beta*: prepend e_1 (the fixed choice of v_1).
inline ProductState shift_forward(const ProductState& f) {
  std::vector<Eigen::VectorXcd> pre = f.preperiod;
  pre.insert(pre.begin(), basis_vector(f.n, 1));
  return ProductState(f.n, std::move(pre), f.period_block);
}

// Smallest p with [f_{i+p}] = [f_i] beyond the preperiod. On the canonical
// form this is the block length; the divisor scan keeps it so by construction.
inline int period(const ProductState& f) {
  const std::size_t L = f.period_block.size();
  for (std::size_t d = 1; d < L; ++d) {
    if (L % d != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < L && ok; ++i)
      ok = same_line(f.period_block[i], f.period_block[(i + d) % L]);
    if (ok) return static_cast<int>(d);
  }
  return static_cast<int>(L);
}

// A tuple of canonical line representatives in C^n.
struct LineTuple {
  int n;
  std::vector<Eigen::VectorXcd> lines;
};

inline LineTuple rotate(const LineTuple& t, int k) {
  const int p = static_cast<int>(t.lines.size());
  LineTuple r{t.n, {}};
  r.lines.reserve(t.lines.size());
  for (int j = 0; j < p; ++j) r.lines.push_back(t.lines[(j + k) % p]);
  return r;
}

// The tail line tuple of one minimal period.
inline LineTuple tail_tuple(const ProductState& f) { return LineTuple{f.n, f.period_block}; }

// Canonical quasi-orbit representative: the lexicographically least cyclic
// rotation of the tail line tuple.
inline LineTuple quasi_orbit_rep(const ProductState& f) {
  const LineTuple t = tail_tuple(f);
  const int p = static_cast<int>(t.lines.size());
  int best = 0;
  for (int k = 1; k < p; ++k) {
    for (int j = 0; j < p; ++j) {
      const Eigen::VectorXcd& a = t.lines[(j + k) % p];
      const Eigen::VectorXcd& b = t.lines[(j + best) % p];
      if (vector_less(a, b)) {
        best = k;
        break;
      }
      if (vector_less(b, a)) break;
    }
  }
  return rotate(t, best);
}

inline bool same_quasi_orbit(const ProductState& f, const ProductState& g) {
  if (f.n != g.n) throw ambient_mismatch();
  const LineTuple a = quasi_orbit_rep(f);
  const LineTuple b = quasi_orbit_rep(g);
  if (a.lines.size() != b.lines.size()) return false;
  for (std::size_t i = 0; i < a.lines.size(); ++i)
    if (!same_line(a.lines[i], b.lines[i])) return false;
  return true;
}

// beta^{*k} rho ~u beta^{*l} rho iff p | k - l.
inline bool shifts_unitarily_equivalent(const ProductState& f, int k, int l) {
  return (k - l) % period(f) == 0;
}

}  // namespace cuntzkit
