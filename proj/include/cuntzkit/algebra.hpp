#pragma once

// Exact symbolic arithmetic in the Cuntz algebra O_n: monomials v_s v_t* in
// reduced normal form, finite complex linear combinations, adjoints, the
// canonical conditional expectation onto the gauge-invariant core, and the
// gauge / quasi-free automorphisms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

namespace cuntzkit {

using cd = std::complex<double>;

// Tolerance ladder shared by the whole library.
namespace tol {
inline constexpr double coeff_drop = 1e-14;  // stored coefficients below this are dropped
inline constexpr double coeff_eq = 1e-12;    // coefficientwise equality
inline constexpr double unimodular = 1e-12;  // |lambda| = 1 checks
inline constexpr double unitary = 1e-9;      // ||W*W - I||_max
inline constexpr double unit_norm = 1e-10;   // unit-vector / probability-mass checks
inline constexpr double line = 1e-9;         // [u] = [v] iff |<u,v>| > 1 - line
inline constexpr double gram = 1e-8;         // Gram modulus match, phase cycles, witness replay
inline constexpr double pivot = 1e-10;       // rank-revealing orthogonalization
}  // namespace tol

struct ambient_mismatch : std::domain_error {
  ambient_mismatch() : std::domain_error("ambient n mismatch") {}
};
struct not_in_core : std::domain_error {
  not_in_core() : std::domain_error("element has a term of nonzero gauge degree") {}
};
struct letter_out_of_range : std::domain_error {
  explicit letter_out_of_range(int a, int n)
      : std::domain_error("letter v" + std::to_string(a) + " out of range for n = " +
                          std::to_string(n)) {}
};
struct invalid_value : std::domain_error {
  explicit invalid_value(const std::string& what) : std::domain_error(what) {}
};

// Inner product convention: <a,b> is linear in the first slot,
// <a,b> = sum_i a_i conj(b_i).
inline cd ip(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return b.dot(a); }

// z^k for integer k of either sign.
inline cd ipow(cd z, long k) {
  cd base = k >= 0 ? z : cd(1.0) / z;
  unsigned long e = static_cast<unsigned long>(k >= 0 ? k : -k);
  cd r(1.0);
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

using MultiIndex = std::vector<int>;  // letters in 1..n; empty index is the unit

// A reduced monomial v_s v_t*. Gauge degree is |s| - |t|.
struct Monomial {
  MultiIndex s;
  MultiIndex t;

  bool is_unit() const { return s.empty() && t.empty(); }
  int degree() const { return static_cast<int>(s.size()) - static_cast<int>(t.size()); }

  // Lexicographic on (|s|, s, |t|, t): canonical, reproducible term ordering.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    return std::make_tuple(a.s.size(), std::cref(a.s), a.t.size(), std::cref(a.t)) <
           std::make_tuple(b.s.size(), std::cref(b.s), b.t.size(), std::cref(b.t));
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.s == b.s && a.t == b.t;
  }
};

inline int gauge_degree(const Monomial& m) { return m.degree(); }

inline Monomial adjoint(const Monomial& m) { return Monomial{m.t, m.s}; }

// Finite formal combination of reduced monomials over a fixed ambient n >= 2.
class AlgebraElement {
 public:
  explicit AlgebraElement(int n) : n_(n) {
    if (n < 2) throw invalid_value("ambient n must be >= 2");
  }

  static AlgebraElement zero(int n) { return AlgebraElement(n); }
  static AlgebraElement unit(int n) {
    AlgebraElement e(n);
    e.add_term(Monomial{}, cd(1.0));
    return e;
  }
  // v_a
  static AlgebraElement generator(int n, int a) {
    AlgebraElement e(n);
    e.add_term(Monomial{{a}, {}}, cd(1.0));
    e.check_letters();
    return e;
  }
  // v_a*
  static AlgebraElement generator_adjoint(int n, int a) {
    AlgebraElement e(n);
    e.add_term(Monomial{{}, {a}}, cd(1.0));
    e.check_letters();
    return e;
  }
  static AlgebraElement monomial(int n, MultiIndex s, MultiIndex t, cd c = cd(1.0)) {
    AlgebraElement e(n);
    e.add_term(Monomial{std::move(s), std::move(t)}, c);
    e.check_letters();
    return e;
  }

  int ambient() const { return n_; }
  const std::map<Monomial, cd>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Monomial& m, cd c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (std::abs(c) > tol::coeff_drop) terms_.emplace(m, c);
    } else {
      it->second += c;
      if (std::abs(it->second) <= tol::coeff_drop) terms_.erase(it);
    }
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    require_same_ambient(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    require_same_ambient(o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  AlgebraElement& operator*=(cd c) {
    if (std::abs(c) <= tol::coeff_drop) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(cd c, AlgebraElement a) { return a *= c; }

  void require_same_ambient(const AlgebraElement& o) const {
    if (n_ != o.n_) throw ambient_mismatch();
  }

  // Largest |gauge degree| over stored terms; 0 for the zero element.
  int max_abs_degree() const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, std::abs(m.degree()));
    return d;
  }

 private:
  void check_letters() const {
    for (auto& [m, c] : terms_) {
      for (int a : m.s)
        if (a < 1 || a > n_) throw letter_out_of_range(a, n_);
      for (int a : m.t)
        if (a < 1 || a > n_) throw letter_out_of_range(a, n_);
    }
  }

  int n_;
  std::map<Monomial, cd> terms_;
};

// (v_s v_t*)(v_u v_w*) reduces via v_j* v_i = delta_ij 1: nonzero only when
// t is a prefix of u or u is a prefix of t.
inline AlgebraElement mono_mul(int n, const Monomial& a, const Monomial& b) {
  const MultiIndex& t = a.t;
  const MultiIndex& u = b.s;
  const std::size_t overlap = std::min(t.size(), u.size());
  for (std::size_t i = 0; i < overlap; ++i)
    if (t[i] != u[i]) return AlgebraElement::zero(n);
  MultiIndex s = a.s;
  MultiIndex w = b.t;
  if (t.size() <= u.size()) {
    s.insert(s.end(), u.begin() + static_cast<long>(t.size()), u.end());
  } else {
    // leftover adjoint letters t[|u|..] append to the w side
    w.insert(w.end(), t.begin() + static_cast<long>(u.size()), t.end());
  }
  return AlgebraElement::monomial(n, std::move(s), std::move(w));
}

inline AlgebraElement elem_mul(const AlgebraElement& x, const AlgebraElement& y) {
  x.require_same_ambient(y);
  AlgebraElement r(x.ambient());
  for (auto& [mx, cx] : x.terms())
    for (auto& [my, cy] : y.terms()) {
      AlgebraElement p = mono_mul(x.ambient(), mx, my);
      for (auto& [m, c] : p.terms()) r.add_term(m, cx * cy * c);
    }
  return r;
}

inline AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
  return elem_mul(x, y);
}

inline AlgebraElement adjoint(const AlgebraElement& x) {
  AlgebraElement r(x.ambient());
  for (auto& [m, c] : x.terms()) r.add_term(adjoint(m), std::conj(c));
  return r;
}

// Canonical conditional expectation onto the degree-0 span.
inline AlgebraElement conditional_expectation(const AlgebraElement& x) {
  AlgebraElement r(x.ambient());
  for (auto& [m, c] : x.terms())
    if (m.degree() == 0) r.add_term(m, c);
  return r;
}

inline void require_unimodular(cd lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > tol::unimodular)
    throw invalid_value("lambda is not unimodular");
}

// gamma_lambda(v_a) = lambda v_a: each monomial picks up lambda^degree.
inline AlgebraElement gauge_auto(cd lambda, const AlgebraElement& x) {
  require_unimodular(lambda);
  AlgebraElement r(x.ambient());
  for (auto& [m, c] : x.terms()) r.add_term(m, c * ipow(lambda, m.degree()));
  return r;
}

inline void require_unitary(const Eigen::MatrixXcd& w) {
  if (w.rows() != w.cols()) throw invalid_value("W is not square");
  Eigen::MatrixXcd d = w.adjoint() * w - Eigen::MatrixXcd::Identity(w.rows(), w.cols());
  if (d.cwiseAbs().maxCoeff() > tol::unitary) throw invalid_value("W is not unitary");
}

// Quasi-free automorphism gamma_W(v_a) = sum_b W_ba v_b, extended
// multiplicatively and *-compatibly. A degree-(j,k) monomial expands into up
// to n^(j+k) terms; expansions beyond 10^6 terms are rejected.
inline AlgebraElement quasi_free_auto(const Eigen::MatrixXcd& w, const AlgebraElement& x) {
  require_unitary(w);
  const int n = x.ambient();
  if (w.rows() != n) throw ambient_mismatch();

  double budget = 0;
  for (auto& [m, c] : x.terms())
    budget += std::pow(static_cast<double>(n), static_cast<double>(m.s.size() + m.t.size()));
  if (budget > 1e6) throw invalid_value("quasi-free expansion would exceed 10^6 terms");

  auto image_of_word = [&](const MultiIndex& word) {
    AlgebraElement e = AlgebraElement::unit(n);
    for (int a : word) {
      AlgebraElement g(n);
      for (int b = 1; b <= n; ++b) g.add_term(Monomial{{b}, {}}, w(b - 1, a - 1));
      e = elem_mul(e, g);
    }
    return e;
  };

  AlgebraElement r(n);
  for (auto& [m, c] : x.terms()) {
    AlgebraElement term = elem_mul(image_of_word(m.s), adjoint(image_of_word(m.t)));
    term *= c;
    r += term;
  }
  return r;
}

// sum_a v_a v_a* (acts as the unit on monomials with |t| >= 1)
inline AlgebraElement range_projection_sum(int n) {
  AlgebraElement e(n);
  for (int a = 1; a <= n; ++a) e.add_term(Monomial{{a}, {a}}, cd(1.0));
  return e;
}

inline bool approx_equal(const AlgebraElement& x, const AlgebraElement& y,
                         double eps = tol::coeff_eq) {
  if (x.ambient() != y.ambient()) return false;
  AlgebraElement d = x - y;
  for (auto& [m, c] : d.terms())
    if (std::abs(c) > eps) return false;
  return true;
}

inline std::string format_complex(cd z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "(%.12g,%.12g)", z.real(), z.imag());
  return buf;
}

// Canonical text rendering: terms sorted by monomial key, adjoint letters in
// application order (v_t* prints as v_{t_m}* ... v_{t_1}*), "1" for the unit.
inline std::string render_monomial(const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string out;
  for (int a : m.s) {
    if (!out.empty()) out += ' ';
    out += 'v' + std::to_string(a);
  }
  for (auto it = m.t.rbegin(); it != m.t.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += 'v' + std::to_string(*it) + '*';
  }
  return out;
}

inline std::string render(const AlgebraElement& x) {
  if (x.is_zero()) return "(0,0) 1";
  std::string out;
  for (auto& [m, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += format_complex(c) + ' ' + render_monomial(m);
  }
  return out;
}

}  // namespace cuntzkit
