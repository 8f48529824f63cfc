#include <doctest.h>

#include "cuntzkit/measure.hpp"
#include "testutil.hpp"

using namespace cuntzkit;

namespace {
const cd one(1.0, 0.0);
const cd mone(-1.0, 0.0);
const cd imag(0.0, 1.0);
CircleMeasure half_pm() { return CircleMeasure(0.0, {{one, 0.5}, {mone, 0.5}}); }
}  // namespace

TEST_CASE("moments") {
  CHECK(moment(CircleMeasure::point(imag), 3) == imag * imag * imag);
  CHECK(moment(CircleMeasure::haar(), 3) == cd(0.0));
  CHECK(moment(CircleMeasure::haar(), 0) == cd(1.0));
  CHECK(std::abs(moment(half_pm(), 2) - cd(1.0)) < 1e-12);
  CHECK(std::abs(moment(CircleMeasure::point(imag), -1) - (-imag)) < 1e-12);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(CircleMeasure(0.0, {{one, 0.5}}), invalid_value);
  CHECK_THROWS_AS(CircleMeasure(0.0, {{cd(2.0, 0.0), 1.0}}), invalid_value);
  CHECK_THROWS_AS(CircleMeasure(0.0, {{one, 0.5}, {one, 0.5}}), invalid_value);
  CHECK_THROWS_AS(CircleMeasure(-0.5, {{one, 1.5}}), invalid_value);
  CircleMeasure near(0.0, {{cd(1.0 + 1e-8, 0.0), 1.0}});
  CHECK(std::abs(std::abs(near.atoms[0].first) - 1.0) < 1e-14);
}

TEST_CASE("purity criterion") {
  CHECK(is_pure_extension(CircleMeasure::point(imag)));
  CHECK_FALSE(is_pure_extension(CircleMeasure::haar()));
  CHECK_FALSE(is_pure_extension(half_pm()));
}

TEST_CASE("gauge action on measures") {
  CircleMeasure m = gauge_on_measure(mone, 1, CircleMeasure::point(one));
  CHECK(std::abs(m.atoms[0].first - mone) < 1e-12);

  const int p = 3;
  const cd root(std::cos(2.0 * M_PI / p), std::sin(2.0 * M_PI / p));
  CircleMeasure mu(0.0, {{one, 0.4}, {imag, 0.6}});
  CircleMeasure rot = gauge_on_measure(root, p, mu);
  CHECK(measures_equivalent(mu, rot));
  for (std::size_t i = 0; i < mu.atoms.size(); ++i)
    CHECK(std::abs(mu.atoms[i].first - rot.atoms[i].first) < 1e-12);

  CircleMeasure h = gauge_on_measure(imag, 2, CircleMeasure::haar());
  CHECK(h.has_haar());
  CHECK(h.atoms.empty());
}

TEST_CASE("equivalence and disjointness") {
  CircleMeasure a(0.0, {{one, 0.5}, {mone, 0.5}});
  CircleMeasure b(0.0, {{one, 1.0 / 3.0}, {mone, 2.0 / 3.0}});
  CHECK(measures_equivalent(a, b));
  CHECK_FALSE(measures_equivalent(CircleMeasure::point(one), CircleMeasure::point(mone)));
  CHECK(measures_equivalent(CircleMeasure(0.5, {{one, 0.5}}), CircleMeasure(0.5, {{one, 0.5}})));

  CHECK(measures_disjoint(CircleMeasure::point(one), CircleMeasure::point(mone)));
  CHECK(measures_disjoint(CircleMeasure::haar(), CircleMeasure::point(one)));
  CHECK_FALSE(measures_disjoint(CircleMeasure(0.5, {{one, 0.5}}), CircleMeasure::haar()));
}

TEST_CASE("translate equivalence") {
  auto lam = translate_equivalent(CircleMeasure::point(one), CircleMeasure::point(imag));
  REQUIRE(lam.has_value());
  CHECK(std::abs(*lam - (-imag)) < 1e-12);

  CHECK_FALSE(translate_equivalent(CircleMeasure::point(one), half_pm()).has_value());
  auto hh = translate_equivalent(CircleMeasure::haar(), CircleMeasure::haar());
  REQUIRE(hh.has_value());
  CHECK(*hh == cd(1.0));

  std::mt19937_64 rng(301);
  for (int i = 0; i < 20; ++i) {
    CircleMeasure mu = testutil::random_atomic_measure(1 + static_cast<int>(rng() % 3), rng);
    const cd rot = testutil::random_phase(rng);
    auto found = translate_equivalent(mu, rotate(mu, rot));
    REQUIRE(found.has_value());
    CHECK(measures_equivalent(mu, rotate(rotate(mu, rot), *found)));
  }
}
