#pragma once

// Probability measures on the unit circle of the form
// haar_weight * Haar + sum_j w_j * delta_{c_j}, the class parameterizing all
// state extensions handled by this library. Supports exact moments and the
// equivalence / disjointness / translation comparisons of that class.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "cuntzkit/algebra.hpp"

namespace cuntzkit {

struct CircleMeasure {
  double haar_weight = 0.0;
  std::vector<std::pair<cd, double>> atoms;  // (unimodular point, weight > 0), sorted by argument

  CircleMeasure(double haar, std::vector<std::pair<cd, double>> atoms_)
      : haar_weight(haar), atoms(std::move(atoms_)) {
    if (haar_weight < -tol::unit_norm) throw invalid_value("negative Haar weight");
    haar_weight = std::max(haar_weight, 0.0);
    double total = haar_weight;
    for (auto& [c, w] : atoms) {
      if (w <= 0.0) throw invalid_value("atom weights must be positive");
      if (std::abs(std::abs(c) - 1.0) > 1e-6) throw invalid_value("atom point not on the circle");
      c /= std::abs(c);
      total += w;
    }
    if (std::abs(total - 1.0) > tol::unit_norm)
      throw invalid_value("measure mass must equal 1");
    std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) {
      return std::arg(a.first) < std::arg(b.first);
    });
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
      if (std::abs(atoms[i].first - atoms[i + 1].first) <= tol::line)
        throw invalid_value("atom points must be pairwise distinct");
  }

  static CircleMeasure haar() { return CircleMeasure(1.0, {}); }
  static CircleMeasure point(cd c) { return CircleMeasure(0.0, {{c, 1.0}}); }

  bool has_haar() const { return haar_weight > tol::unit_norm; }
};

// integral of z^m: haar_weight * [m = 0] + sum_j w_j c_j^m.
inline cd moment(const CircleMeasure& mu, long m) {
  cd r = m == 0 ? cd(mu.haar_weight) : cd(0.0);
  for (auto& [c, w] : mu.atoms) r += w * ipow(c, m);
  return r;
}

// The extension is pure iff mu is a unit point mass.
inline bool is_pure_extension(const CircleMeasure& mu) {
  return !mu.has_haar() && mu.atoms.size() == 1 &&
         std::abs(mu.atoms[0].second - 1.0) <= tol::unit_norm;
}

// Atoms rotated c -> lambda * c; weights untouched.
inline CircleMeasure rotate(const CircleMeasure& mu, cd lambda) {
  require_unimodular(lambda);
  std::vector<std::pair<cd, double>> atoms = mu.atoms;
  for (auto& [c, w] : atoms) c *= lambda;
  return CircleMeasure(mu.haar_weight, std::move(atoms));
}

// rho~[mu] . gamma_lambda = rho~[mu rotated by lambda^p].
inline CircleMeasure gauge_on_measure(cd lambda, int p, const CircleMeasure& mu) {
  require_unimodular(lambda);
  return rotate(mu, ipow(lambda, p));
}

namespace detail {
inline bool same_atom_support(const CircleMeasure& mu, const CircleMeasure& nu) {
  if (mu.atoms.size() != nu.atoms.size()) return false;
  for (std::size_t i = 0; i < mu.atoms.size(); ++i)
    if (std::abs(mu.atoms[i].first - nu.atoms[i].first) > tol::line) return false;
  return true;
}
}  // namespace detail

// Equivalence of measures within the Haar-plus-atoms class: equal null sets,
// i.e. matching Haar flags and equal atom supports.
inline bool measures_equivalent(const CircleMeasure& mu, const CircleMeasure& nu) {
  return mu.has_haar() == nu.has_haar() && detail::same_atom_support(mu, nu);
}

inline bool measures_disjoint(const CircleMeasure& mu, const CircleMeasure& nu) {
  if (mu.has_haar() && nu.has_haar()) return false;
  for (auto& [c, w] : mu.atoms)
    for (auto& [d, u] : nu.atoms)
      if (std::abs(c - d) <= tol::line) return false;
  return true;
}

// Some lambda with mu equivalent to nu rotated by lambda, if one exists.
// Candidates are quotients of support points; lambda = 1 when both measures
// are pure Haar.
inline std::optional<cd> translate_equivalent(const CircleMeasure& mu, const CircleMeasure& nu) {
  if (mu.has_haar() != nu.has_haar()) return std::nullopt;
  if (mu.atoms.size() != nu.atoms.size()) return std::nullopt;
  if (mu.atoms.empty()) return cd(1.0);
  for (auto& [b, u] : nu.atoms) {
    const cd lambda = mu.atoms[0].first / b;
    if (measures_equivalent(mu, rotate(nu, lambda))) return lambda;
  }
  return std::nullopt;
}

}  // namespace cuntzkit
