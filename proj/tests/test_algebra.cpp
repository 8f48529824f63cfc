#include <doctest.h>

#include "cuntzkit/algebra.hpp"
#include "testutil.hpp"

using namespace cuntzkit;
using testutil::random_element;

namespace {
AlgebraElement mono(int n, MultiIndex s, MultiIndex t) {
  return AlgebraElement::monomial(n, std::move(s), std::move(t));
}
}  // namespace

TEST_CASE("monomial multiplication reduces by prefix matching") {
  AlgebraElement r = mono_mul(3, Monomial{{1}, {2}}, Monomial{{2}, {3}});
  CHECK(approx_equal(r, mono(3, {1}, {3})));

  r = mono_mul(2, Monomial{{}, {1}}, Monomial{{2}, {}});
  CHECK(r.is_zero());

  r = mono_mul(2, Monomial{{1}, {1, 2}}, Monomial{{1}, {}});
  CHECK(approx_equal(r, mono(2, {1}, {2})));
}

TEST_CASE("element multiplication expands bilinearly") {
  const int n = 2;
  AlgebraElement v1 = AlgebraElement::generator(n, 1);
  AlgebraElement v2 = AlgebraElement::generator(n, 2);
  AlgebraElement lhs = (v1 + v2) * adjoint(v1 + v2);
  AlgebraElement want = mono(n, {1}, {1}) + mono(n, {1}, {2}) + mono(n, {2}, {1}) +
                        mono(n, {2}, {2});
  CHECK(approx_equal(lhs, want));

  AlgebraElement ortho = adjoint(v1 + v2) * (v1 + v2);
  CHECK(approx_equal(ortho, cd(2.0) * AlgebraElement::unit(n)));

  std::mt19937_64 rng(101);
  for (int i = 0; i < 20; ++i) {
    AlgebraElement x = random_element(n, 4, 3, rng);
    CHECK(approx_equal(x * AlgebraElement::unit(n), x));
  }
}

TEST_CASE("multiplication is associative on random triples") {
  std::mt19937_64 rng(102);
  for (int i = 0; i < 30; ++i) {
    const int n = 2 + static_cast<int>(rng() % 2);
    AlgebraElement x = random_element(n, 4, 3, rng);
    AlgebraElement y = random_element(n, 4, 3, rng);
    AlgebraElement z = random_element(n, 4, 3, rng);
    CHECK(approx_equal((x * y) * z, x * (y * z)));
  }
}

TEST_CASE("adjoint is an involutive anti-homomorphism") {
  CHECK(approx_equal(adjoint(mono(2, {1}, {2})), mono(2, {2}, {1})));
  CHECK(approx_equal(adjoint(cd(0, 1) * AlgebraElement::generator(2, 1)),
                     cd(0, -1) * AlgebraElement::generator_adjoint(2, 1)));

  std::mt19937_64 rng(103);
  for (int i = 0; i < 30; ++i) {
    AlgebraElement x = random_element(2, 4, 3, rng);
    AlgebraElement y = random_element(2, 4, 3, rng);
    CHECK(approx_equal(adjoint(adjoint(x)), x));
    CHECK(approx_equal(adjoint(x * y), adjoint(y) * adjoint(x)));
  }
}

TEST_CASE("gauge degree") {
  CHECK(gauge_degree(Monomial{{1, 2}, {}}) == 2);
  CHECK(gauge_degree(Monomial{{1}, {1}}) == 0);
  CHECK(gauge_degree(Monomial{{}, {1, 2}}) == -2);
}

TEST_CASE("conditional expectation keeps the degree-0 part") {
  CHECK(approx_equal(conditional_expectation(mono(2, {1}, {1})), mono(2, {1}, {1})));
  CHECK(conditional_expectation(AlgebraElement::generator(2, 1)).is_zero());

  std::mt19937_64 rng(104);
  for (int i = 0; i < 20; ++i) {
    AlgebraElement x = random_element(2, 5, 3, rng);
    AlgebraElement p = conditional_expectation(x);
    CHECK(approx_equal(conditional_expectation(p), p));
  }
}

TEST_CASE("conditional expectation equals root-of-unity averaging") {
  std::mt19937_64 rng(105);
  for (int i = 0; i < 10; ++i) {
    AlgebraElement x = random_element(2, 5, 3, rng);
    const int K = 2 * x.max_abs_degree() + 1;
    AlgebraElement avg(2);
    for (int k = 0; k < K; ++k) {
      const double t = 2.0 * M_PI * k / K;
      AlgebraElement g = gauge_auto(cd(std::cos(t), std::sin(t)), x);
      g *= cd(1.0 / K);
      avg += g;
    }
    CHECK(approx_equal(avg, conditional_expectation(x), 1e-10));
  }
}

TEST_CASE("gauge automorphism scales by degree") {
  const cd lam(0.6, 0.8);
  CHECK(approx_equal(gauge_auto(lam, mono(2, {1, 2}, {})), lam * lam * mono(2, {1, 2}, {})));
  CHECK(approx_equal(gauge_auto(lam, mono(2, {1}, {1})), mono(2, {1}, {1})));
  CHECK(approx_equal(gauge_auto(cd(-1.0), AlgebraElement::generator(2, 1)),
                     cd(-1.0) * AlgebraElement::generator(2, 1)));
  CHECK_THROWS_AS(gauge_auto(cd(0.5), AlgebraElement::unit(2)), invalid_value);

  std::mt19937_64 rng(106);
  for (int i = 0; i < 10; ++i) {
    AlgebraElement x = random_element(2, 4, 3, rng);
    CHECK(approx_equal(conditional_expectation(gauge_auto(lam, x)),
                       conditional_expectation(x)));
  }
}

TEST_CASE("quasi-free automorphism") {
  Eigen::MatrixXcd swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(approx_equal(quasi_free_auto(swap, AlgebraElement::generator(2, 1)),
                     AlgebraElement::generator(2, 2)));

  const cd lam(0.0, 1.0);
  std::mt19937_64 rng(107);
  for (int i = 0; i < 10; ++i) {
    AlgebraElement x = random_element(2, 3, 2, rng);
    CHECK(approx_equal(quasi_free_auto(lam * Eigen::MatrixXcd::Identity(2, 2), x),
                       gauge_auto(lam, x), 1e-10));
  }

  for (int i = 0; i < 10; ++i) {
    const int n = 2 + static_cast<int>(rng() % 2);
    Eigen::MatrixXcd w = testutil::random_unitary(n, rng);
    AlgebraElement x = random_element(n, 3, 2, rng);
    AlgebraElement y = random_element(n, 3, 2, rng);
    CHECK(approx_equal(quasi_free_auto(w.adjoint(), quasi_free_auto(w, x)), x, 1e-10));
    CHECK(approx_equal(quasi_free_auto(w, x * y),
                       quasi_free_auto(w, x) * quasi_free_auto(w, y), 1e-10));
    CHECK(approx_equal(quasi_free_auto(w, adjoint(x)), adjoint(quasi_free_auto(w, x)), 1e-10));
  }

  Eigen::MatrixXcd notu = Eigen::MatrixXcd::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(quasi_free_auto(notu, AlgebraElement::unit(2)), invalid_value);
}

TEST_CASE("range projections sum to the unit on monomials with adjoint letters") {
  for (int n = 2; n <= 3; ++n) {
    AlgebraElement proj = range_projection_sum(n);
    std::mt19937_64 rng(108);
    for (int i = 0; i < 20; ++i) {
      Monomial m = testutil::random_monomial(n, 3, rng);
      if (m.t.empty()) m.t.push_back(1);
      AlgebraElement x = AlgebraElement::monomial(n, m.s, m.t);
      CHECK(approx_equal(x * proj, x));
      CHECK(approx_equal(proj * adjoint(x), adjoint(x)));
    }
    for (int b = 1; b <= n; ++b) {
      AlgebraElement vb = AlgebraElement::generator(n, b);
      CHECK(approx_equal(adjoint(vb) * proj * vb, AlgebraElement::unit(n)));
    }
  }
}

TEST_CASE("coefficient hygiene and errors") {
  AlgebraElement x(2);
  x.add_term(Monomial{{1}, {}}, cd(1e-15));
  CHECK(x.is_zero());
  CHECK_THROWS_AS(AlgebraElement::generator(2, 3), letter_out_of_range);
  CHECK_THROWS_AS(AlgebraElement::unit(2) + AlgebraElement::unit(3), ambient_mismatch);
}

TEST_CASE("rendering is canonical") {
  CHECK(render_monomial(Monomial{}) == "1");
  CHECK(render_monomial(Monomial{{1}, {1, 2}}) == "v1 v2* v1*");
  AlgebraElement x = mono(2, {1}, {2}) + cd(0, 1) * AlgebraElement::generator(2, 2);
  CHECK(render(x) == "(1,0) v1 v2* + (0,1) v2");
}
