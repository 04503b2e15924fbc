#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "pg3/extremal.hpp"
#include "pg3/verify.hpp"

using namespace pg3;
using pg3::testing::random_form;

TEST_CASE("verify_line_bound on the equality surfaces") {
  auto r3 = verify_line_bound(
      construct_extremal(ExtremalKind::kQuadric, Field::make(3)));
  CHECK(r3.N == 16);
  CHECK(r3.nu == 8);
  CHECK(r3.eq_lines);
  CHECK(r3.eq_points);
  CHECK(r3.mid == Fraction::reduced(2 * 16, 4));
  CHECK_FALSE(r3.flags.plane_component_found);
  CHECK_FALSE(r3.flags.rational_singularity_found);

  auto r4 = verify_line_bound(
      construct_extremal(ExtremalKind::kHermitian, Field::make(2, 2)));
  CHECK(r4.N == 45);
  CHECK(r4.nu == 27);
  CHECK(r4.eq_lines);
  CHECK(r4.eq_points);
  CHECK(r4.cap_lines == 27);
  CHECK(r4.cap_points == 45);
}

TEST_CASE("random cubics over F_3 stay under the cap") {
  std::mt19937 rng(43);
  auto F3 = Field::make(3);
  int smooth_seen = 0;
  for (int rep = 0; rep < 30; ++rep) {
    const Surface S(random_form(F3, 3, rng));
    if (!rational_singular_points(S, 1).singular.empty()) continue;
    if (has_plane_component(S).has_value()) continue;
    ++smooth_seen;
    const auto r = verify_line_bound(S);  // throws on chain failure
    CHECK(r.cap_lines == 21);  // ((3-1)*3+1)*3
    CHECK(r.nu <= 21);
  }
  CHECK(smooth_seen > 0);
}

TEST_CASE("verify_line_bound flags hypothesis problems instead of failing") {
  auto F3 = Field::make(3);
  const Surface cone(Form::parse("X0*X1 - X2^2", F3));
  const auto r = verify_line_bound(cone);
  CHECK(r.flags.rational_singularity_found);
  CHECK(r.N == 13);  // q^2+q+1 points on the cone

  const Surface planes(Form::parse("X0*X1", F3));
  const auto rp = verify_line_bound(planes);
  CHECK(rp.flags.plane_component_found);

  CHECK_THROWS_AS(verify_line_bound(Surface(Form::parse("X0", F3))),
                  hypothesis_error);
}

TEST_CASE("verify_point_bound") {
  auto r2 = verify_point_bound(
      construct_extremal(ExtremalKind::kQPlusOne, Field::make(2)));
  CHECK(r2.N == 15);
  CHECK(r2.cap_points == 15);
  CHECK(r2.eq_points);

  // singular but plane-free: the bound still holds (no smoothness needed)
  auto F3 = Field::make(3);
  const Surface sing(Form::parse("X0^2 + X1*X2", F3));
  const auto rs = verify_point_bound(sing);
  CHECK(rs.N <= 16);
  CHECK(rs.cap_points == 16);

  CHECK_THROWS_AS(verify_point_bound(Surface(Form::parse("X0*X1", F3))),
                  hypothesis_error);
}

TEST_CASE("equality flags on the constructors across supported q") {
  for (std::uint32_t q : {4u, 5u}) {
    const auto r = verify_line_bound(
        construct_extremal(ExtremalKind::kQPlusOne, Field::from_order(q)));
    CHECK(r.eq_lines);
    CHECK(r.eq_points);
    CHECK(r.N == num_points_p3(q));
  }
  for (std::uint32_t q : {7u, 8u}) {
    const auto r = verify_line_bound(
        construct_extremal(ExtremalKind::kQuadric, Field::from_order(q)));
    CHECK(r.eq_lines);
    CHECK(r.eq_points);
  }
}

TEST_CASE("eq_lines implies eq_points when the hypotheses hold") {
  std::mt19937 rng(47);
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::from_order(q);
    for (int rep = 0; rep < 25; ++rep) {
      const Surface S(random_form(F, 2 + rep % 2, rng));
      if (S.degree() < 2) continue;
      const auto r = verify_line_bound(S);
      if (r.flags.plane_component_found || r.flags.rational_singularity_found)
        continue;
      if (r.eq_lines) CHECK(r.eq_points);
    }
  }
}

TEST_CASE("incidence_audit on the worked examples") {
  const auto a2 =
      incidence_audit(construct_extremal(ExtremalKind::kQuadric, Field::make(2)));
  CHECK(a2.N == 9);
  CHECK(a2.nu == 6);
  CHECK(a2.pairs_from_lines == 18);
  CHECK(a2.pairs_from_points == 18);
  CHECK(a2.identity_holds);
  CHECK(a2.max_fiber == 2);
  REQUIRE(a2.fiber_histogram.count(2));
  CHECK(a2.fiber_histogram.at(2) == 9);
  CHECK(a2.fiber_bound_applies);
  CHECK(a2.fiber_bound_holds);

  const auto a4 = incidence_audit(
      construct_extremal(ExtremalKind::kHermitian, Field::make(2, 2)));
  CHECK(a4.pairs_from_lines == 135);  // 5 * 27
  CHECK(a4.identity_holds);
  CHECK(a4.fiber_histogram.at(3) == 45);
  CHECK(a4.max_fiber == 3);
}

TEST_CASE("a surface without lines audits to zero pairs") {
  // X0^2 + X1*X2 over F_3 is a cone-free quadric of rank 3... search instead:
  // take the first random surface with nu = 0 so the example is stable.
  std::mt19937 rng(53);
  auto F3 = Field::make(3);
  bool found = false;
  for (int rep = 0; rep < 60 && !found; ++rep) {
    const Surface S(random_form(F3, 2 + rep % 2, rng));
    if (count_lines(S) != 0) continue;
    found = true;
    const auto a = incidence_audit(S);
    CHECK(a.nu == 0);
    CHECK(a.pairs_from_lines == 0);
    CHECK(a.pairs_from_points == 0);
    CHECK(a.identity_holds);
  }
  CHECK(found);
}

TEST_CASE("audit identity holds for random surfaces, singular included") {
  std::mt19937 rng(59);
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::from_order(q);
    for (int rep = 0; rep < 8; ++rep) {
      const Surface S(random_form(F, 2 + rep % 2, rng));
      const auto a = incidence_audit(S);
      CHECK(a.identity_holds);
      if (a.fiber_bound_applies) CHECK(a.fiber_bound_holds);
    }
  }
}

TEST_CASE("fractions reduce") {
  CHECK(Fraction::reduced(6, 4) == Fraction{3, 2});
  CHECK(Fraction::reduced(45 * 3, 5) == Fraction{27, 1});
  CHECK(Fraction::reduced(0, 7) == Fraction{0, 1});
}
