#pragma once

// Decision procedures: unitary equivalence of line tuples (with explicit
// witness construction), cyclic-shift matching, conjugacy of the states and
// of the induced endomorphisms, and comparison of extensions.

#include <optional>
#include <string>
#include <vector>

#include "cuntzkit/measure.hpp"
#include "cuntzkit/product_state.hpp"

namespace cuntzkit {

enum class Verdict {
  equivalent,
  disjoint,
  equivalent_up_to_gauge,
  not_conjugate,
  conjugate,
  neither,
};

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::disjoint: return "disjoint";
    case Verdict::equivalent_up_to_gauge: return "equivalent_up_to_gauge";
    case Verdict::not_conjugate: return "not_conjugate";
    case Verdict::conjugate: return "conjugate";
    case Verdict::neither: return "neither";
  }
  return "?";
}

struct Witness {
  std::optional<int> shift;
  std::optional<Eigen::MatrixXcd> unitary;
  std::optional<cd> rotation;
};

struct ConjugacyVerdict {
  Verdict verdict;
  Witness witness;
  std::string detail;
};

namespace detail {

// Orthonormal completion of the columns of q to a full basis of C^n.
inline Eigen::MatrixXcd complete_basis(int n, const Eigen::MatrixXcd& q) {
  Eigen::MatrixXcd full(n, n);
  Eigen::Index cols = q.cols();
  full.leftCols(cols) = q;
  for (int k = 0; k < n && cols < n; ++k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v(k) = cd(1.0);
    for (Eigen::Index i = 0; i < cols; ++i) v -= ip(v, full.col(i)) * full.col(i);
    const double nn = v.norm();
    if (nn > 1e-6) full.col(cols++) = v / nn;
  }
  return full;
}

}  // namespace detail

// Unitary W with [W f_j] = [g_j] for all j, if one exists. Gram moduli must
// match entrywise; phases making the Grams equal are found by spanning-forest
// propagation over the nonzero-Gram graph and checked on every remaining
// edge; the witness comes from a shared rank-revealing orthogonalization of
// both tuples plus matched orthonormal complements, then a replay check.
inline std::optional<Eigen::MatrixXcd> line_tuple_equiv(const LineTuple& F, const LineTuple& G) {
  if (F.n != G.n) throw ambient_mismatch();
  if (F.lines.size() != G.lines.size())
    throw invalid_value("line tuples must have equal length");
  const int p = static_cast<int>(F.lines.size());
  const int n = F.n;

  Eigen::MatrixXcd A(p, p), B(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      A(i, j) = ip(F.lines[i], F.lines[j]);
      B(i, j) = ip(G.lines[i], G.lines[j]);
      if (std::abs(std::abs(A(i, j)) - std::abs(B(i, j))) > tol::gram) return std::nullopt;
    }

  // theta_j with <theta_i g_i, theta_j g_j> = <f_i, f_j> on a spanning forest
  // of the graph {|B_ij| above noise}; roots get phase 1.
  std::vector<cd> theta(p, cd(0.0));
  std::vector<int> stack;
  for (int root = 0; root < p; ++root) {
    if (theta[root] != cd(0.0)) continue;
    theta[root] = cd(1.0);
    stack.push_back(root);
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < p; ++j) {
        if (j == i || std::abs(B(i, j)) <= tol::gram || theta[j] != cd(0.0)) continue;
        // <theta_i g_i, theta_j g_j> = theta_i conj(theta_j) B_ij = A_ij
        theta[j] = std::conj(A(i, j) / (theta[i] * B(i, j)));
        theta[j] /= std::abs(theta[j]);
        stack.push_back(j);
      }
    }
  }
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      if (std::abs(B(i, j)) <= tol::gram) continue;
      if (std::abs(theta[i] * std::conj(theta[j]) * B(i, j) - A(i, j)) > tol::gram)
        return std::nullopt;
    }

  // Shared-coefficient orthogonalization: the same elimination applied to f_j
  // and to theta_j g_j yields matched orthonormal frames for the two spans.
  std::vector<Eigen::VectorXcd> qf, qg;
  for (int j = 0; j < p; ++j) {
    Eigen::VectorXcd u = F.lines[j];
    Eigen::VectorXcd v = theta[j] * G.lines[j];
    for (std::size_t i = 0; i < qf.size(); ++i) {
      const cd c = ip(u, qf[i]);
      u -= c * qf[i];
      v -= c * qg[i];
    }
    const double nu = u.norm();
    if (nu <= tol::pivot) continue;
    qf.push_back(u / nu);
    qg.push_back(v / v.norm());
  }

  const int r = static_cast<int>(qf.size());
  Eigen::MatrixXcd QF(n, r), QG(n, r);
  for (int i = 0; i < r; ++i) {
    QF.col(i) = qf[i];
    QG.col(i) = qg[i];
  }
  const Eigen::MatrixXcd BF = detail::complete_basis(n, QF);
  const Eigen::MatrixXcd BG = detail::complete_basis(n, QG);
  Eigen::MatrixXcd W = BG * BF.adjoint();

  for (int j = 0; j < p; ++j)
    if (std::abs(ip(W * F.lines[j], G.lines[j])) < 1.0 - tol::gram) return std::nullopt;
  return W;
}

// Conjugate iff some cyclic rotation of G is unitarily equivalent to F;
// first matching shift wins (deterministic).
inline ConjugacyVerdict cuntz_state_conjugate(const LineTuple& F, const LineTuple& G) {
  if (F.n != G.n) throw ambient_mismatch();
  if (F.lines.size() != G.lines.size())
    throw invalid_value("line tuples must have equal length");
  const int p = static_cast<int>(F.lines.size());
  for (int k = 0; k < p; ++k) {
    if (auto w = line_tuple_equiv(F, rotate(G, k)))
      return {Verdict::conjugate, {k, std::move(*w), std::nullopt}, ""};
  }
  return {Verdict::not_conjugate, {}, "no shift admits a line-tuple unitary"};
}

// Conjugacy of the states under quasi-free automorphisms: equal periods and
// tail tuples matching up to rotation and a unitary.
inline ConjugacyVerdict ergodic_conjugate(const ProductState& f, const ProductState& g) {
  if (f.n != g.n) throw ambient_mismatch();
  if (period(f) != period(g)) return {Verdict::not_conjugate, {}, "periods differ"};
  return cuntz_state_conjugate(tail_tuple(f), tail_tuple(g));
}

// Conjugacy of the induced endomorphisms: state conjugacy plus the measures
// related by a rotation of the circle.
inline ConjugacyVerdict endo_conjugate(const ProductState& f, const CircleMeasure& mu,
                                       const ProductState& g, const CircleMeasure& nu) {
  ConjugacyVerdict base = ergodic_conjugate(f, g);
  if (base.verdict != Verdict::conjugate) return base;
  auto lambda = translate_equivalent(mu, nu);
  if (!lambda)
    return {Verdict::not_conjugate, {}, "no rotation carries one measure class to the other"};
  base.witness.rotation = *lambda;
  return base;
}

// Unitary equivalence / disjointness of the extensions. Different quasi-orbits
// are disjoint; over one sequence the verdict is the measure comparison; over
// one quasi-orbit but different sequences only the up-to-gauge relation is
// decided.
inline ConjugacyVerdict extension_compare(const ProductState& f, const CircleMeasure& mu,
                                          const ProductState& g, const CircleMeasure& nu) {
  if (f.n != g.n) throw ambient_mismatch();
  if (!same_quasi_orbit(f, g))
    return {Verdict::disjoint, {}, "different quasi-orbits"};

  if (same_canonical_state(f, g)) {
    if (measures_equivalent(mu, nu)) return {Verdict::equivalent, {}, "equivalent measures"};
    if (measures_disjoint(mu, nu)) return {Verdict::disjoint, {}, "mutually singular measures"};
    return {Verdict::neither, {},
            "measures overlap without equal supports: neither equivalent nor disjoint"};
  }

  if (auto lambda = translate_equivalent(mu, nu)) {
    ConjugacyVerdict r{Verdict::equivalent_up_to_gauge, {}, "same quasi-orbit, translate-equivalent measures"};
    r.witness.rotation = *lambda;
    return r;
  }
  return {Verdict::disjoint, {}, "same quasi-orbit but no translate matches the measure classes"};
}

}  // namespace cuntzkit
