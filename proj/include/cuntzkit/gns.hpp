#pragma once

// Exact simulator of the representation attached to a periodic pure product
// state and an atomic circle measure, realized on incomplete tensor products.
// Vectors are finite symbolic combinations of "window (x) reference tail"
// primitives, so the generator isometries act by prepending and all algebraic
// identities hold up to floating-point arithmetic only. Serves as the
// independent oracle for the closed-form extension evaluator.

#include <cstdint>
#include <random>
#include <vector>

#include "cuntzkit/extension.hpp"

namespace cuntzkit {

class GnsContext {
 public:
  GnsContext(ProductState f, const CircleMeasure& mu)
      : f_(std::move(f)), p_(cuntzkit::period(f_)), e1_(basis_vector(f_.n, 1)) {
    if (mu.has_haar())
      throw invalid_value("simulator supports atomic measures only");
    for (auto& [c, w] : mu.atoms) {
      atom_points_.push_back(c);
      atom_weights_.push_back(w);
    }
  }

  int n() const { return f_.n; }
  int p() const { return p_; }
  const ProductState& state() const { return f_; }
  std::size_t atom_count() const { return atom_points_.size(); }
  cd atom_point(int j) const { return atom_points_[j]; }
  double atom_weight(int j) const { return atom_weights_[j]; }
  std::size_t preperiod_size() const { return f_.preperiod.size(); }

  // Reference sequence r^(k) = (e_1 x k, f_1, f_2, ...), 1-based slot.
  const Eigen::VectorXcd& ref(int lift, std::size_t slot) const {
    if (slot <= static_cast<std::size_t>(lift)) return e1_;
    return f_.at(slot - static_cast<std::size_t>(lift));
  }

 private:
  ProductState f_;
  int p_;
  Eigen::VectorXcd e1_;
  std::vector<cd> atom_points_;
  std::vector<double> atom_weights_;
};

// Elementary tensor w_1 (x) ... (x) w_m (x) r^(lift)_{m+1} (x) ..., where
// r^(lift) is the reference sequence with `lift` leading e_1 slots. The
// component index in 0..p-1 is lift mod p.
struct Primitive {
  int lift = 0;
  std::vector<Eigen::VectorXcd> window;

  int component(int p) const { return lift % p; }

  // Canonical form: lift reduced mod p where the window already covers the
  // region where r^(lift) and r^(lift-p) differ, and trailing window slots
  // equal to the reference tail reabsorbed.
  void normalize(const GnsContext& ctx) {
    const int p = ctx.p();
    while (lift >= p &&
           window.size() >= static_cast<std::size_t>(lift) + ctx.preperiod_size())
      lift -= p;
    while (!window.empty()) {
      const std::size_t m = window.size();
      if ((window.back() - ctx.ref(lift, m)).norm() > 1e-12) break;
      window.pop_back();
    }
  }

  const Eigen::VectorXcd& slot(const GnsContext& ctx, std::size_t j) const {
    if (j <= window.size()) return window[j - 1];
    return ctx.ref(lift, j);
  }
};

struct SimVector {
  struct Term {
    cd coeff;
    int atom;
    Primitive prim;
  };

  const GnsContext* ctx = nullptr;
  std::vector<Term> terms;

  void compress() {
    std::vector<Term> out;
    for (auto& t : terms) {
      if (std::abs(t.coeff) <= tol::coeff_drop) continue;
      bool merged = false;
      for (auto& o : out) {
        if (o.atom != t.atom || o.prim.lift != t.prim.lift ||
            o.prim.window.size() != t.prim.window.size())
          continue;
        bool eq = true;
        for (std::size_t i = 0; i < o.prim.window.size() && eq; ++i)
          eq = (o.prim.window[i] - t.prim.window[i]).norm() <= 1e-12;
        if (!eq) continue;
        o.coeff += t.coeff;
        merged = true;
        break;
      }
      if (!merged) out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return std::abs(t.coeff) <= tol::coeff_drop; });
    terms = std::move(out);
  }

  // Structural cancellation: terms in one component agreeing in every slot
  // past the first combine by linearity of the tensor in the first slot, so
  // differences like sum_a <w, e_a> e_a - w collapse to floating-point zero
  // instead of leaving sqrt-of-noise residuals in the norm. Not applied by
  // the arithmetic itself: merging first slots mid-computation entangles
  // later slots and destroys the very cancellations this pass exists for.
  void coalesce() {
    if (ctx == nullptr || terms.size() < 2) return;
    const int p = ctx->p();
    const std::size_t pre = ctx->preperiod_size();
    auto extent = [&](const Primitive& prim) {
      return std::max(prim.window.size(), static_cast<std::size_t>(prim.lift) + pre);
    };
    std::vector<Term> out;
    std::vector<bool> used(terms.size(), false);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (used[i]) continue;
      std::vector<std::size_t> group{i};
      std::size_t M = std::max<std::size_t>(1, extent(terms[i].prim));
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        if (used[j] || terms[j].atom != terms[i].atom ||
            (terms[j].prim.lift - terms[i].prim.lift) % p != 0)
          continue;
        const std::size_t Mij = std::max(M, extent(terms[j].prim));
        bool eq = true;
        for (std::size_t k = 2; k <= Mij && eq; ++k)
          eq = (terms[i].prim.slot(*ctx, k) - terms[j].prim.slot(*ctx, k)).squaredNorm() == 0.0;
        if (!eq) continue;
        used[j] = true;
        group.push_back(j);
        M = Mij;
      }
      if (group.size() == 1) {
        out.push_back(terms[i]);
        continue;
      }
      Eigen::VectorXcd first = Eigen::VectorXcd::Zero(ctx->n());
      for (std::size_t g : group) first += terms[g].coeff * terms[g].prim.slot(*ctx, 1);
      if (first.norm() <= tol::coeff_drop) continue;
      Term t;
      t.coeff = cd(1.0);
      t.atom = terms[i].atom;
      t.prim.lift = terms[i].prim.lift;
      t.prim.window.push_back(std::move(first));
      for (std::size_t k = 2; k <= M; ++k) t.prim.window.push_back(terms[i].prim.slot(*ctx, k));
      t.prim.normalize(*ctx);
      out.push_back(std::move(t));
    }
    terms = std::move(out);
  }

  SimVector& operator*=(cd c) {
    for (auto& t : terms) t.coeff *= c;
    compress();
    return *this;
  }
  SimVector& operator+=(const SimVector& o) {
    if (ctx != o.ctx) throw invalid_value("simulator context mismatch");
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    compress();
    return *this;
  }
  SimVector& operator-=(const SimVector& o) {
    if (ctx != o.ctx) throw invalid_value("simulator context mismatch");
    for (auto& t : o.terms) terms.push_back({-t.coeff, t.atom, t.prim});
    compress();
    return *this;
  }
  friend SimVector operator+(SimVector a, const SimVector& b) { return a += b; }
  friend SimVector operator-(SimVector a, const SimVector& b) { return a -= b; }
  friend SimVector operator*(cd c, SimVector a) { return a *= c; }
};

// xi_k (x) 1: window of k copies of e_1 in the component k mod p, with atom
// amplitudes sqrt(w_j) so the whole vector has norm 1.
inline SimVector make_xi(const GnsContext& ctx, int k) {
  SimVector v;
  v.ctx = &ctx;
  Primitive prim;
  prim.lift = k;
  prim.window.assign(static_cast<std::size_t>(k), basis_vector(ctx.n(), 1));
  prim.normalize(ctx);
  for (int j = 0; j < static_cast<int>(ctx.atom_count()); ++j)
    v.terms.push_back({cd(std::sqrt(ctx.atom_weight(j))), j, prim});
  return v;
}

namespace detail {

// Pairing of primitives in the same component: finite product of slotwise
// inner products out to where both tails are exactly periodic, tail factor 1
// beyond (the von Neumann convention sends non-eventually-equal tails to 0,
// which cannot occur between two vectors over one canonicalized context).
inline cd primitive_pairing(const GnsContext& ctx, const Primitive& a, const Primitive& b) {
  const int p = ctx.p();
  if ((a.lift - b.lift) % p != 0) return cd(0.0);
  const std::size_t pre = ctx.preperiod_size();
  const std::size_t M =
      std::max({a.window.size(), b.window.size(), static_cast<std::size_t>(a.lift) + pre,
                static_cast<std::size_t>(b.lift) + pre});
  cd prod(1.0);
  for (std::size_t j = 1; j <= M; ++j) {
    prod *= ip(a.slot(ctx, j), b.slot(ctx, j));
    if (std::abs(prod) <= tol::coeff_drop) return cd(0.0);
  }
  return prod;
}

}  // namespace detail

inline cd inner(const SimVector& v, const SimVector& w) {
  if (v.ctx != w.ctx || v.ctx == nullptr) throw invalid_value("simulator context mismatch");
  cd total(0.0);
  for (auto& a : v.terms)
    for (auto& b : w.terms) {
      if (a.atom != b.atom) continue;
      total += a.coeff * std::conj(b.coeff) * detail::primitive_pairing(*v.ctx, a.prim, b.prim);
    }
  return total;
}

inline double norm(const SimVector& v) {
  if (v.terms.empty()) return 0.0;
  SimVector c = v;
  c.coalesce();
  if (c.terms.empty()) return 0.0;
  return std::sqrt(std::max(0.0, inner(c, c).real()));
}

// S_a: prepend e_a and advance the component; crossing from component p-1
// back to 0 multiplies by the atom's point (theta(z) diagonal over atoms).
inline SimVector apply_generator(const GnsContext& ctx, int a, const SimVector& v) {
  if (v.ctx != &ctx) throw invalid_value("simulator context mismatch");
  if (a < 1 || a > ctx.n()) throw letter_out_of_range(a, ctx.n());
  SimVector r;
  r.ctx = &ctx;
  const Eigen::VectorXcd ea = basis_vector(ctx.n(), a);
  for (auto& t : v.terms) {
    SimVector::Term nt = t;
    nt.prim.window.insert(nt.prim.window.begin(), ea);
    nt.prim.lift += 1;
    if (nt.prim.lift % ctx.p() == 0) nt.coeff *= ctx.atom_point(t.atom);
    nt.prim.normalize(ctx);
    r.terms.push_back(std::move(nt));
  }
  r.compress();
  return r;
}

// S_a*: strip the first slot with scalar factor <slot_1, e_a> and step the
// component back; leaving component 0 multiplies by the conjugate atom point.
// When the window grid cannot shift back (lift = 0), enough tail slots are
// materialized into the window to re-express the tail on the lift p-1 grid.
inline SimVector apply_generator_adjoint(const GnsContext& ctx, int a, const SimVector& v) {
  if (v.ctx != &ctx) throw invalid_value("simulator context mismatch");
  if (a < 1 || a > ctx.n()) throw letter_out_of_range(a, ctx.n());
  const int p = ctx.p();
  const std::size_t pre = ctx.preperiod_size();
  SimVector r;
  r.ctx = &ctx;
  for (auto& t : v.terms) {
    const Primitive& prim = t.prim;
    const cd factor = prim.slot(ctx, 1)(a - 1);
    cd coeff = t.coeff * factor;
    if (prim.lift % p == 0) coeff *= std::conj(ctx.atom_point(t.atom));
    if (std::abs(coeff) <= tol::coeff_drop) continue;

    SimVector::Term nt;
    nt.coeff = coeff;
    nt.atom = t.atom;
    Primitive& np = nt.prim;
    if (!prim.window.empty())
      np.window.assign(prim.window.begin() + 1, prim.window.end());
    if (prim.lift >= 1) {
      np.lift = prim.lift - 1;
    } else {
      // new slot j holds f_{j+1}; materialize through pre + p - 1 so the
      // remaining tail matches the lift p-1 reference grid exactly
      np.lift = p - 1;
      for (std::size_t j = np.window.size() + 1; j + 1 <= pre + static_cast<std::size_t>(p);
           ++j)
        np.window.push_back(prim.slot(ctx, j + 1));
    }
    np.normalize(ctx);
    r.terms.push_back(std::move(nt));
  }
  r.compress();
  return r;
}

// pi(x)v: each monomial v_s v_t* acts as the adjoints of t (in application
// order t_1, t_2, ...) followed by the generators of s (s_k down to s_1).
inline SimVector apply_element(const GnsContext& ctx, const AlgebraElement& x,
                               const SimVector& v) {
  if (x.ambient() != ctx.n()) throw ambient_mismatch();
  SimVector total;
  total.ctx = &ctx;
  for (auto& [m, c] : x.terms()) {
    SimVector w = v;
    for (int letter : m.t) w = apply_generator_adjoint(ctx, letter, w);
    for (auto it = m.s.rbegin(); it != m.s.rend(); ++it) w = apply_generator(ctx, *it, w);
    w *= c;
    total += w;
  }
  return total;
}

// The vector state implemented by xi_0 (x) 1 — the independent oracle for
// extend_eval on atomic measures.
inline cd vector_state(const GnsContext& ctx, const AlgebraElement& x) {
  const SimVector xi0 = make_xi(ctx, 0);
  return inner(apply_element(ctx, x, xi0), xi0);
}

// -------------------------------------------------------------------------
// Relation checker

struct RelationReport {
  std::uint64_t seed = 0;
  int trials = 0;
  double dev_pair_isometry = 0.0;  // S_a* S_b = delta_ab I
  double dev_completeness = 0.0;   // sum_a S_a S_a* = I
  double dev_link = 0.0;           // pi(v_1 v_1*) xi_i = xi_i
  double dev_compression = 0.0;    // S_1* pi(x) S_1 = pi(v_1* x v_1)

  double max_deviation() const {
    return std::max({dev_pair_isometry, dev_completeness, dev_link, dev_compression});
  }
};

namespace detail {

inline Eigen::VectorXcd random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cd(g(rng), g(rng));
  return v / v.norm();
}

inline SimVector random_sim_vector(const GnsContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 3), wlen(0, 3), lift(0, 2 * ctx.p()),
      atom(0, static_cast<int>(ctx.atom_count()) - 1);
  std::normal_distribution<double> g;
  SimVector v;
  v.ctx = &ctx;
  for (int k = nterms(rng); k > 0; --k) {
    SimVector::Term t;
    t.coeff = cd(g(rng), g(rng));
    t.atom = atom(rng);
    t.prim.lift = lift(rng);
    const int m = wlen(rng);
    for (int i = 0; i < m; ++i) t.prim.window.push_back(random_unit_vector(ctx.n(), rng));
    t.prim.normalize(ctx);
    v.terms.push_back(std::move(t));
  }
  v.compress();
  const double nn = norm(v);
  if (nn > 1e-9) v *= cd(1.0 / nn);
  return v;
}

inline Monomial random_core_monomial(int n, int max_len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, max_len), letter(1, n);
  const int k = len(rng);
  Monomial m;
  for (int i = 0; i < k; ++i) m.s.push_back(letter(rng));
  for (int i = 0; i < k; ++i) m.t.push_back(letter(rng));
  return m;
}

}  // namespace detail

// Verifies, on `trials` random vectors, the defining isometry relations, the
// completeness of the range projections, the linking-vector identity and the
// compression identity for random degree-0 monomials of length <= max_len.
inline RelationReport check_relations(const GnsContext& ctx, int max_len, int trials,
                                      std::uint64_t seed) {
  RelationReport rep;
  rep.seed = seed;
  rep.trials = trials;
  std::mt19937_64 rng(seed);
  const int n = ctx.n();
  const int p = ctx.p();

  for (int i = 1; i <= p; ++i) {
    const SimVector xi = make_xi(ctx, i);
    const AlgebraElement v1v1 = AlgebraElement::monomial(n, {1}, {1});
    rep.dev_link = std::max(rep.dev_link, norm(apply_element(ctx, v1v1, xi) - xi));
  }

  for (int trial = 0; trial < trials; ++trial) {
    const SimVector v = detail::random_sim_vector(ctx, rng);

    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        SimVector w = apply_generator_adjoint(ctx, a, apply_generator(ctx, b, v));
        if (a == b) w -= v;
        rep.dev_pair_isometry = std::max(rep.dev_pair_isometry, norm(w));
      }

    SimVector sum;
    sum.ctx = &ctx;
    for (int a = 1; a <= n; ++a)
      sum += apply_generator(ctx, a, apply_generator_adjoint(ctx, a, v));
    rep.dev_completeness = std::max(rep.dev_completeness, norm(sum - v));

    const Monomial m = detail::random_core_monomial(n, max_len, rng);
    const AlgebraElement x = AlgebraElement::monomial(n, m.s, m.t);
    const AlgebraElement v1 = AlgebraElement::generator(n, 1);
    const AlgebraElement compressed = adjoint(v1) * x * v1;
    SimVector lhs =
        apply_generator_adjoint(ctx, 1, apply_element(ctx, x, apply_generator(ctx, 1, v)));
    SimVector rhs = apply_element(ctx, compressed, v);
    rep.dev_compression = std::max(rep.dev_compression, norm(lhs - rhs));
  }
  return rep;
}

// -------------------------------------------------------------------------
// Finite-rank operator calculus

struct WeightedDyad {
  cd weight;
  SimVector ket;
  SimVector bra;
};

// A |v><w| -> sum_a |S_a v><S_a w|, the endomorphism induced by the
// representation applied to a finite-rank operator.
inline std::vector<WeightedDyad> endo_apply(const GnsContext& ctx,
                                            const std::vector<WeightedDyad>& dyads) {
  std::vector<WeightedDyad> out;
  out.reserve(dyads.size() * static_cast<std::size_t>(ctx.n()));
  for (auto& d : dyads) {
    if (d.ket.ctx != &ctx || d.bra.ctx != &ctx)
      throw invalid_value("simulator context mismatch");
    for (int a = 1; a <= ctx.n(); ++a)
      out.push_back(
          {d.weight, apply_generator(ctx, a, d.ket), apply_generator(ctx, a, d.bra)});
  }
  return out;
}

inline cd dyad_trace(const std::vector<WeightedDyad>& dyads) {
  cd tr(0.0);
  for (auto& d : dyads) tr += d.weight * inner(d.ket, d.bra);
  return tr;
}

}  // namespace cuntzkit
