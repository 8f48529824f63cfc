#include <doctest.h>

#include "cuntzkit/classifier.hpp"
#include "testutil.hpp"

using namespace cuntzkit;

namespace {
const Eigen::VectorXcd e1 = basis_vector(2, 1);
const Eigen::VectorXcd e2 = basis_vector(2, 2);
Eigen::VectorXcd plus() { return ((e1 + e2) / std::sqrt(2.0)).eval(); }
Eigen::VectorXcd plus_i() { return ((e1 + cd(0, 1) * e2) / std::sqrt(2.0)).eval(); }

LineTuple tuple_of(std::vector<Eigen::VectorXcd> lines) {
  const int n = static_cast<int>(lines.front().size());
  for (auto& v : lines) v = canonical_phase(std::move(v));
  return LineTuple{n, std::move(lines)};
}

bool lines_match(const Eigen::MatrixXcd& w, const LineTuple& F, const LineTuple& G, int k) {
  const int p = static_cast<int>(F.lines.size());
  for (int j = 0; j < p; ++j)
    if (std::abs(ip(w * F.lines[j], G.lines[(j + k) % p])) < 1.0 - 1e-8) return false;
  return true;
}
}  // namespace

TEST_CASE("line tuple equivalence on worked examples") {
  auto w = line_tuple_equiv(tuple_of({e1, e2}), tuple_of({e2, e1}));
  REQUIRE(w.has_value());
  CHECK(lines_match(*w, tuple_of({e1, e2}), tuple_of({e2, e1}), 0));

  CHECK_FALSE(line_tuple_equiv(tuple_of({e1, e1}), tuple_of({e1, e2})).has_value());

  auto w2 = line_tuple_equiv(tuple_of({e1, plus()}), tuple_of({e1, plus_i()}));
  REQUIRE(w2.has_value());
  CHECK(lines_match(*w2, tuple_of({e1, plus()}), tuple_of({e1, plus_i()}), 0));
}

TEST_CASE("line tuple equivalence is an equivalence relation") {
  std::mt19937_64 rng(601);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int p = 1 + static_cast<int>(rng() % 3);
    std::vector<Eigen::VectorXcd> a, b;
    Eigen::MatrixXcd u = testutil::random_unitary(n, rng);
    for (int j = 0; j < p; ++j) {
      a.push_back(testutil::random_unit_vector(n, rng));
      b.push_back(canonical_phase(u * a.back()));
    }
    LineTuple F = tuple_of(a), G = tuple_of(b);

    auto wr = line_tuple_equiv(F, F);
    REQUIRE(wr.has_value());

    auto wf = line_tuple_equiv(F, G);
    REQUIRE(wf.has_value());
    CHECK(lines_match(*wf, F, G, 0));
    auto wb = line_tuple_equiv(G, F);
    REQUIRE(wb.has_value());
    CHECK(lines_match(*wb, G, F, 0));
  }
}

TEST_CASE("cuntz state conjugacy up to rotation") {
  ConjugacyVerdict v = cuntz_state_conjugate(tuple_of({e1, e2}), tuple_of({e2, e1}));
  CHECK(v.verdict == Verdict::conjugate);
  // k = 0 with the swap unitary and k = 1 with the identity both witness this
  // pair; the all-shifts search returns the first that verifies
  REQUIRE(v.witness.shift.has_value());
  REQUIRE(v.witness.unitary.has_value());
  CHECK(lines_match(*v.witness.unitary, tuple_of({e1, e2}), tuple_of({e2, e1}),
                    *v.witness.shift));

  CHECK(cuntz_state_conjugate(tuple_of({e1}), tuple_of({e2})).verdict == Verdict::conjugate);
  CHECK(cuntz_state_conjugate(tuple_of({e1, e1}), tuple_of({e1, e2})).verdict ==
        Verdict::not_conjugate);
}

TEST_CASE("randomized soundness of the tuple classifier") {
  std::mt19937_64 rng(602);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int p = 1 + static_cast<int>(rng() % 3);
    std::vector<Eigen::VectorXcd> base;
    for (int j = 0; j < p; ++j) base.push_back(testutil::random_unit_vector(n, rng));
    Eigen::MatrixXcd u = testutil::random_unitary(n, rng);
    const int k = static_cast<int>(rng() % p);
    std::vector<Eigen::VectorXcd> moved;
    for (int j = 0; j < p; ++j)
      moved.push_back(testutil::random_phase(rng) * (u * base[(j + k) % p]));
    ConjugacyVerdict v = cuntz_state_conjugate(tuple_of(base), tuple_of(moved));
    CHECK(v.verdict == Verdict::conjugate);
    REQUIRE(v.witness.unitary.has_value());
    CHECK(lines_match(*v.witness.unitary, tuple_of(base), tuple_of(moved), *v.witness.shift));
  }
}

TEST_CASE("ergodic conjugacy of product states") {
  ProductState const_e1 = ProductState::constant(2, e1);
  ProductState const_plus = ProductState::constant(2, plus());
  CHECK(ergodic_conjugate(const_e1, const_plus).verdict == Verdict::conjugate);

  ProductState alt(2, {}, {e1, e2});
  CHECK(ergodic_conjugate(alt, const_e1).verdict == Verdict::not_conjugate);

  const Eigen::VectorXcd f1 = basis_vector(3, 1), f2 = basis_vector(3, 2);
  const Eigen::VectorXcd mix = canonical_phase(((f1 + f2) / std::sqrt(2.0)).eval());
  CHECK(ergodic_conjugate(ProductState(3, {}, {f1, f2}), ProductState(3, {}, {f1, mix}))
            .verdict == Verdict::not_conjugate);
}

TEST_CASE("endomorphism conjugacy combines state and measure criteria") {
  ProductState const_e1 = ProductState::constant(2, e1);
  ConjugacyVerdict v = endo_conjugate(const_e1, CircleMeasure::point(cd(1.0)), const_e1,
                                      CircleMeasure::point(cd(0, 1)));
  CHECK(v.verdict == Verdict::conjugate);
  REQUIRE(v.witness.rotation.has_value());
  CHECK(std::abs(*v.witness.rotation - cd(0, -1)) < 1e-12);

  CHECK(endo_conjugate(const_e1, CircleMeasure::point(cd(1.0)), const_e1,
                       CircleMeasure::haar())
            .verdict == Verdict::not_conjugate);

  ProductState alt12(2, {}, {e1, e2});
  ProductState alt21(2, {}, {e2, e1});
  CHECK(endo_conjugate(alt12, CircleMeasure::haar(), alt21, CircleMeasure::haar()).verdict ==
        Verdict::conjugate);
}

TEST_CASE("extension comparison") {
  ProductState alt(2, {}, {e1, e2});
  CHECK(extension_compare(alt, CircleMeasure::point(cd(1.0)), alt,
                          CircleMeasure::point(cd(-1.0)))
            .verdict == Verdict::disjoint);

  CircleMeasure mix1(0.0, {{cd(1.0), 0.5}, {cd(0, 1), 0.5}});
  CircleMeasure mix2(0.0, {{cd(1.0), 1.0 / 3.0}, {cd(0, 1), 2.0 / 3.0}});
  CHECK(extension_compare(alt, mix1, alt, mix2).verdict == Verdict::equivalent);

  ProductState padded(2, {e1}, {e1});
  CHECK(extension_compare(ProductState::constant(2, e1), CircleMeasure::point(cd(1.0)), padded,
                          CircleMeasure::point(cd(1.0)))
            .verdict == Verdict::equivalent);

  CircleMeasure overlap(0.0, {{cd(1.0), 0.5}, {cd(-1.0), 0.5}});
  CHECK(extension_compare(alt, mix1, alt, overlap).verdict == Verdict::neither);

  CHECK(extension_compare(ProductState::constant(2, e1), CircleMeasure::point(cd(1.0)),
                          ProductState::constant(2, e2), CircleMeasure::point(cd(1.0)))
            .verdict == Verdict::disjoint);

  ProductState shifted(2, {e2}, {e2, e1});
  ConjugacyVerdict g = extension_compare(alt, CircleMeasure::point(cd(1.0)), shifted,
                                         CircleMeasure::point(cd(0, 1)));
  CHECK(g.verdict == Verdict::equivalent_up_to_gauge);
  REQUIRE(g.witness.rotation.has_value());

  CircleMeasure two_atoms(0.0, {{cd(1.0), 0.5}, {cd(-1.0), 0.5}});
  CHECK(extension_compare(alt, CircleMeasure::point(cd(1.0)), shifted, two_atoms).verdict ==
        Verdict::disjoint);
}

TEST_CASE("extension_compare is reflexive-equivalent") {
  std::mt19937_64 rng(603);
  for (int rep = 0; rep < 15; ++rep) {
    ProductState f = testutil::random_state(2, static_cast<int>(rng() % 2),
                                            1 + static_cast<int>(rng() % 3), rng);
    CircleMeasure mu = testutil::random_atomic_measure(1 + static_cast<int>(rng() % 3), rng);
    CHECK(extension_compare(f, mu, f, mu).verdict == Verdict::equivalent);
  }
}
