#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pg3/extremal.hpp"
#include "pg3/verify.hpp"

using namespace pg3;

TEST_CASE("census q=2 d=2") {
  auto F2 = Field::make(2);
  const auto s = census(F2, 2);
  CHECK(s.total_forms == 1023);  // 2^10 - 1
  CHECK(s.max_nu == 6);
  CHECK(s.cap_lines == 6);
  CHECK(s.violations.empty());
  CHECK(s.attaining_count > 0);
  CHECK(s.nu_histogram.at(6) == s.attaining_count);
  std::uint64_t hist_total = 0;
  for (const auto& [nu, n] : s.nu_histogram) hist_total += n;
  CHECK(hist_total == s.filtered_smooth);

  // every attaining surface also attains the point cap
  for (const auto& rec : s.attaining) {
    CHECK(rec.nu == 6);
    CHECK(rec.N == cap_points_for(2, 2));
    const Surface S(Form::parse(rec.form_text, F2));
    CHECK(count_lines(S) == rec.nu);
    CHECK(count_points(S) == rec.N);
  }

  // the canonical quadric is among the maximizers
  const std::string canonical =
      construct_extremal(ExtremalKind::kQuadric, F2).form().to_string();
  bool present = false;
  for (const auto& rec : s.attaining) present = present || rec.form_text == canonical;
  CHECK(present);
}

TEST_CASE("census q=3 d=2") {
  auto F3 = Field::make(3);
  const auto s = census(F3, 2);
  CHECK(s.total_forms == 29524);  // (3^10 - 1)/2
  CHECK(s.max_nu == 8);
  CHECK(s.cap_lines == 8);
  CHECK(s.violations.empty());
  for (const auto& rec : s.attaining) {
    CHECK(rec.N == cap_points_for(3, 2));
  }
}

TEST_CASE("census respects the budget") {
  CHECK_THROWS_AS(census(Field::make(3), 3, CensusOptions{.candidate_budget = 1000}),
                  budget_error);
  CHECK_THROWS_AS(census(Field::make(2, 2), 3), budget_error);  // 4^20/3 >> 2e6
}

TEST_CASE("census is deterministic across job counts") {
  auto F3 = Field::make(3);
  CensusOptions one;
  one.jobs = 1;
  CensusOptions four;
  four.jobs = 4;
  const auto a = census(F3, 2, one);
  const auto b = census(F3, 2, four);
  CHECK(a.total_forms == b.total_forms);
  CHECK(a.filtered_smooth == b.filtered_smooth);
  CHECK(a.max_nu == b.max_nu);
  CHECK(a.attaining_count == b.attaining_count);
  CHECK(a.nu_histogram == b.nu_histogram);
  REQUIRE(a.attaining.size() == b.attaining.size());
  for (std::size_t i = 0; i < a.attaining.size(); ++i) {
    CHECK(a.attaining[i].candidate_index == b.attaining[i].candidate_index);
    CHECK(a.attaining[i].form_text == b.attaining[i].form_text);
  }
}

TEST_CASE("max-only mode agrees with the histogram mode") {
  auto F2 = Field::make(2);
  CensusOptions no_hist;
  no_hist.histogram = false;
  const auto a = census(F2, 2, no_hist);
  const auto b = census(F2, 2);
  CHECK(a.max_nu == b.max_nu);
  CHECK(a.attaining_count == b.attaining_count);
  CHECK(a.filtered_smooth == b.filtered_smooth);
  CHECK(a.nu_histogram.empty());
}

TEST_CASE("degree-1 census filters every plane out") {
  auto F2 = Field::make(2);
  const auto s = census(F2, 1);
  CHECK(s.total_forms == 15);
  CHECK(s.filtered_smooth == 0);
  CHECK(s.attaining_count == 0);
  CHECK(s.violations.empty());
}
