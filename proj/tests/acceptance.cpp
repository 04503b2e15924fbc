// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "pg3/extremal.hpp"
#include "pg3/verify.hpp"

using namespace pg3;
using pg3::testing::random_form;
using pg3::testing::random_invertible;

namespace {

struct Check {
  std::vector<std::string> failures;

  void expect(bool cond, const std::string& msg) {
    if (!cond) failures.push_back(msg);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// 1. quadric equalities, exact, < 1 s per field
void criterion1(Check& c) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = verify_line_bound(
        construct_extremal(ExtremalKind::kQuadric, Field::from_order(q)));
    const double dt = seconds_since(t0);
    c.expect(r.N == std::uint64_t{q + 1} * (q + 1),
             "quadric q=" + std::to_string(q) + ": N=" + std::to_string(r.N));
    c.expect(r.nu == 2 * std::uint64_t{q + 1},
             "quadric q=" + std::to_string(q) + ": nu=" + std::to_string(r.nu));
    c.expect(r.eq_lines && r.eq_points,
             "quadric q=" + std::to_string(q) + ": equality flags not set");
    c.expect(dt < 1.0, "quadric q=" + std::to_string(q) + " took " +
                           std::to_string(dt) + " s (>= 1 s)");
  }
}

// 2. hermitian (45, 27) at q=4 and (280, 112) at q=9, the latter < 5 s with
//    the line set enumerated in full
void criterion2(Check& c) {
  {
    const auto r = verify_line_bound(
        construct_extremal(ExtremalKind::kHermitian, Field::from_order(4)));
    c.expect(r.N == 45 && r.nu == 27, "hermitian q=4: (N, nu) = (" +
                                          std::to_string(r.N) + ", " +
                                          std::to_string(r.nu) + ")");
    c.expect(r.eq_lines && r.eq_points, "hermitian q=4: equality flags not set");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const Surface H9 =
      construct_extremal(ExtremalKind::kHermitian, Field::from_order(9));
  const auto lines = lines_on_surface(H9);  // full sweep of all 7462 lines
  const std::uint64_t N = count_points(H9);
  const double dt = seconds_since(t0);
  c.expect(enumerate_lines(H9.field()).size() == 7462,
           "hermitian q=9: ambient line count is not 7462");
  c.expect(N == 280 && lines.size() == 112,
           "hermitian q=9: (N, nu) = (" + std::to_string(N) + ", " +
               std::to_string(lines.size()) + ")");
  c.expect(dt < 5.0,
           "hermitian q=9 took " + std::to_string(dt) + " s (>= 5 s)");
  const auto r9 = verify_line_bound(H9);
  c.expect(r9.eq_lines && r9.eq_points, "hermitian q=9: equality flags not set");
}

// 3. d = q+1 surfaces fill all of P^3, < 1 s
void criterion3(Check& c) {
  const std::uint64_t want[2][2] = {{15, 15}, {40, 40}};
  int i = 0;
  for (std::uint32_t q : {2u, 3u}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = verify_line_bound(
        construct_extremal(ExtremalKind::kQPlusOne, Field::from_order(q)));
    const double dt = seconds_since(t0);
    c.expect(r.N == want[i][0] && r.nu == want[i][1],
             "qplusone q=" + std::to_string(q) + ": (N, nu) = (" +
                 std::to_string(r.N) + ", " + std::to_string(r.nu) + ")");
    c.expect(r.N == num_points_p3(q),
             "qplusone q=" + std::to_string(q) + ": N is not all of P^3");
    c.expect(dt < 1.0, "qplusone q=" + std::to_string(q) + " took " +
                           std::to_string(dt) + " s (>= 1 s)");
    ++i;
  }
}

// 4. the planar-pencil claim at every rational point of every extremal
//    surface
void criterion4(Check& c) {
  std::vector<Surface> surfaces;
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    surfaces.push_back(
        construct_extremal(ExtremalKind::kQuadric, Field::from_order(q)));
  }
  for (std::uint32_t q : {4u, 9u}) {
    surfaces.push_back(
        construct_extremal(ExtremalKind::kHermitian, Field::from_order(q)));
  }
  for (std::uint32_t q : {2u, 3u}) {
    surfaces.push_back(
        construct_extremal(ExtremalKind::kQPlusOne, Field::from_order(q)));
  }
  for (const Surface& S : surfaces) {
    const std::string tag = "q=" + std::to_string(S.field().q()) + " d=" +
                            std::to_string(S.degree());
    std::uint64_t checked = 0;
    for (const ProjPoint& P : points_on(S)) {
      const auto rep = planar_pencil_at(S, P);
      if (!rep.is_pencil || rep.lines.size() != S.degree()) {
        c.expect(false, "pencil fails at a point of the surface " + tag);
        break;
      }
      ++checked;
    }
    c.expect(checked == count_points(S), "pencil sweep incomplete on " + tag);
  }
}

// 5. incidence identity #Pi = (q+1) nu, exact, on 100 random surfaces plus
//    the extremal ones; fiber <= d whenever the m=1 smoothness filter passes
void criterion5(Check& c) {
  std::mt19937 rng(101);
  std::vector<Surface> sample;
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::from_order(q);
    for (int rep = 0; rep < 50; ++rep) {
      sample.push_back(Surface(random_form(F, 2 + rep % 2, rng)));
    }
    sample.push_back(construct_extremal(ExtremalKind::kQuadric, F));
    sample.push_back(construct_extremal(ExtremalKind::kQPlusOne, F));
  }
  sample.push_back(
      construct_extremal(ExtremalKind::kHermitian, Field::from_order(4)));
  std::uint64_t identity_checked = 0, fiber_checked = 0;
  for (const Surface& S : sample) {
    const auto a = incidence_audit(S);
    if (!a.identity_holds) {
      c.expect(false, "incidence identity fails: q=" +
                          std::to_string(a.q) + " form " + S.form().to_string());
      continue;
    }
    ++identity_checked;
    if (a.fiber_bound_applies) {
      ++fiber_checked;
      if (!a.fiber_bound_holds) {
        c.expect(false, "fiber bound fails on a smooth surface: " +
                            S.form().to_string());
      }
    }
  }
  c.expect(identity_checked == sample.size(), "identity sweep incomplete");
  c.expect(fiber_checked > 0, "no surface passed the smoothness filter");
}

// 6. Theorem 1 on arbitrary (possibly singular) plane-free surfaces, exact
void criterion6(Check& c) {
  std::mt19937 rng(103);
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::from_order(q);
    int accepted = 0;
    while (accepted < 50) {
      const Surface S(random_form(F, 2 + static_cast<std::uint32_t>(rng() % 2), rng));
      if (has_plane_component(S).has_value()) continue;
      ++accepted;
      try {
        const auto r = verify_point_bound(S);
        c.expect(r.N <= r.cap_points, "point bound: N > cap at q=" +
                                          std::to_string(q));
      } catch (const std::exception& err) {
        c.expect(false, std::string("point bound threw: ") + err.what());
      }
    }
  }
}

// 7. census maxima, exhaustive, with --jobs 4; (2,3) under 10 minutes
void criterion7(Check& c) {
  CensusOptions opt;
  opt.jobs = 4;

  const auto s22 = census(Field::from_order(2), 2, opt);
  c.expect(s22.max_nu == 6, "census (2,2): max nu = " + std::to_string(s22.max_nu));
  c.expect(s22.violations.empty(), "census (2,2) has violations");

  const auto s32 = census(Field::from_order(3), 2, opt);
  c.expect(s32.max_nu == 8, "census (3,2): max nu = " + std::to_string(s32.max_nu));
  c.expect(s32.violations.empty(), "census (3,2) has violations");

  const auto t0 = std::chrono::steady_clock::now();
  const auto s23 = census(Field::from_order(2), 3, opt);
  const double dt = seconds_since(t0);
  c.expect(s23.total_forms == 1048575, "census (2,3): wrong candidate count");
  c.expect(s23.max_nu == 15, "census (2,3): max nu = " + std::to_string(s23.max_nu));
  c.expect(s23.violations.empty(), "census (2,3) has violations");
  c.expect(s23.attaining_count > 0 &&
               s23.attaining.size() == s23.attaining_count,
           "census (2,3): attaining list truncated unexpectedly");
  for (const auto& rec : s23.attaining) {
    if (rec.N != 15) {
      c.expect(false, "census (2,3): maximizer with N != 15: " + rec.form_text);
      break;
    }
  }
  c.expect(dt < 600.0, "census (2,3) took " + std::to_string(dt) + " s");
}

// 8. oracle equivalences: brute-force line census, restriction vs pointwise
//    evaluation, Euler identity on 1000 random forms
void criterion8(Check& c) {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto Fp = Field::from_order(q);
    const Field& F = *Fp;
    const auto pts = enumerate_points(F);
    std::set<Line> dedup;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        dedup.insert(line_through(F, pts[i], pts[j]));
      }
    }
    c.expect(dedup.size() == enumerate_lines(F).size(),
             "line enumeration disagrees with pair dedup at q=" +
                 std::to_string(q));
  }

  std::mt19937 rng(107);
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    auto Fp = Field::from_order(q);
    const Field& F = *Fp;
    std::uniform_int_distribution<std::uint32_t> dist(0, q - 1);
    for (int rep = 0; rep < 5; ++rep) {
      const Form f = random_form(Fp, 1 + rep % 3, rng);
      std::array<std::uint32_t, 4> a{}, b{};
      bool dep = true;
      while (dep) {
        for (auto& v : a) v = dist(rng);
        for (auto& v : b) v = dist(rng);
        for (int i = 0; i < 4 && dep; ++i)
          for (int j = i + 1; j < 4 && dep; ++j)
            if (F.sub(F.mul(a[i], b[j]), F.mul(a[j], b[i])) != 0) dep = false;
      }
      const BinaryForm r = f.restrict_to_line(a, b);
      for (std::uint32_t lam = 0; lam < q; ++lam) {
        for (std::uint32_t mu = 0; mu < q; ++mu) {
          std::array<std::uint32_t, 4> v{};
          for (int i = 0; i < 4; ++i)
            v[i] = F.add(F.mul(lam, a[i]), F.mul(mu, b[i]));
          if (r.evaluate(lam, mu) != f.evaluate(v)) {
            c.expect(false, "restriction mismatch at q=" + std::to_string(q));
            return;
          }
        }
      }
    }
  }

  int euler_done = 0;
  const std::uint32_t qs[] = {2, 3, 4, 5, 7, 8, 9};
  for (int rep = 0; rep < 1000; ++rep) {
    auto Fp = Field::from_order(qs[rep % 7]);
    const std::uint32_t d = 1 + static_cast<std::uint32_t>(rep) % 4;
    const Form f = random_form(Fp, d, rng);
    Form acc(Fp, d);
    for (int i = 0; i < 4; ++i) {
      Mono xi;
      xi.e[static_cast<std::size_t>(i)] = 1;
      acc = acc + Form::monomial(Fp, xi, 1) * f.partial(i);
    }
    if (!(acc == f.scaled(Fp->from_int(d)))) {
      c.expect(false, "Euler identity fails: " + f.to_string());
      return;
    }
    ++euler_done;
  }
  c.expect(euler_done == 1000, "Euler sweep incomplete");
}

// 9. invariance of N and nu under 50 random coordinate changes per extremal
//    surface, q <= 4
void criterion9(Check& c) {
  std::mt19937 rng(109);
  std::vector<Surface> surfaces;
  for (std::uint32_t q : {2u, 3u, 4u}) {
    surfaces.push_back(
        construct_extremal(ExtremalKind::kQuadric, Field::from_order(q)));
    surfaces.push_back(
        construct_extremal(ExtremalKind::kQPlusOne, Field::from_order(q)));
  }
  surfaces.push_back(
      construct_extremal(ExtremalKind::kHermitian, Field::from_order(4)));
  for (const Surface& S : surfaces) {
    const std::uint64_t N = count_points(S), nu = count_lines(S);
    const std::string tag = "q=" + std::to_string(S.field().q()) + " d=" +
                            std::to_string(S.degree());
    for (int rep = 0; rep < 50; ++rep) {
      const Mat4 M = random_invertible(S.field(), rng);
      const Surface SM(S.form().transform(M));
      if (count_points(SM) != N || count_lines(SM) != nu) {
        c.expect(false, "counts changed under a coordinate change on " + tag);
        break;
      }
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"1: quadric equalities N=(q+1)^2, nu=2(q+1) for q in {2,3,4,5,7,8,9}",
       criterion1},
      {"2: hermitian (45,27) at q=4 and (280,112) at q=9 within 5 s",
       criterion2},
      {"3: d=q+1 surfaces give (15,15) at q=2 and (40,40) at q=3", criterion3},
      {"4: planar pencil with d lines at every rational point", criterion4},
      {"5: incidence identity and fiber bound on 100 random surfaces",
       criterion5},
      {"6: point bound on 100 random plane-free surfaces", criterion6},
      {"7: census maxima 6/8/15 with zero violations", criterion7},
      {"8: oracle equivalences (lines, restriction, Euler)", criterion8},
      {"9: invariance under 50 random coordinate changes", criterion9},
  };

  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& err) {
      c.expect(false, std::string("exception: ") + err.what());
    }
    const double dt = seconds_since(t0);
    if (c.failures.empty()) {
      std::printf("[PASS] criterion %s (%.2f s)\n", name.c_str(), dt);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %s (%.2f s)\n", name.c_str(), dt);
      for (const auto& msg : c.failures) {
        std::printf("       %s\n", msg.c_str());
      }
    }
    std::fflush(stdout);
  }
  return failures;
}
