#include "pg3/verify.hpp"

#include <numeric>

namespace pg3 {

Fraction Fraction::reduced(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  return Fraction{num / g, den / g};
}

namespace {

void fill_counts(const Surface& S, BoundReport& r) {
  const std::uint32_t q = S.field().q();
  r.q = q;
  r.d = S.degree();
  r.N = count_points(S);
  r.nu = count_lines(S);
  r.mid = Fraction::reduced(std::uint64_t{r.d} * r.N, q + 1);
  r.cap_lines = cap_lines_for(q, r.d);
  r.cap_points = cap_points_for(q, r.d);
  r.eq_lines = r.nu == r.cap_lines;
  r.eq_points = r.N == r.cap_points;
}

}  // namespace

BoundReport verify_line_bound(const Surface& S, const VerifyOptions& opt) {
  if (S.degree() < 2) {
    throw hypothesis_error("line bound needs degree >= 2, got degree " +
                           std::to_string(S.degree()));
  }
  BoundReport r;
  r.flags.plane_component_found = has_plane_component(S).has_value();
  std::uint32_t checked = 0;
  const std::uint32_t found = find_singular_depth(S, opt.smooth_depth, checked,
                                                  opt.scan_limits);
  r.flags.rational_singularity_found = found != 0;
  r.flags.smoothness_checked_to_m = checked;

  fill_counts(S, r);

  const bool hypotheses_ok = !r.flags.plane_component_found &&
                             !r.flags.rational_singularity_found;
  if (hypotheses_ok) {
    // nu <= d*N/(q+1) <= cap, compared exactly over the integers.
    const std::uint64_t lhs = r.nu * (r.q + 1);
    const std::uint64_t midnum = std::uint64_t{r.d} * r.N;
    const std::uint64_t rhs = r.cap_lines * (r.q + 1);
    if (lhs > midnum || midnum > rhs) {
      throw bound_violation(
          "line bound chain failed: nu=" + std::to_string(r.nu) +
          " N=" + std::to_string(r.N) + " d=" + std::to_string(r.d) +
          " q=" + std::to_string(r.q));
    }
  }
  return r;
}

BoundReport verify_point_bound(const Surface& X, const VerifyOptions& opt) {
  if (auto plane = has_plane_component(X)) {
    throw hypothesis_error(
        "point bound refused: the surface has the F_q-plane component " +
        plane->to_string());
  }
  BoundReport r;
  std::uint32_t checked = 0;
  const std::uint32_t found = find_singular_depth(X, opt.smooth_depth, checked,
                                                  opt.scan_limits);
  r.flags.rational_singularity_found = found != 0;
  r.flags.smoothness_checked_to_m = checked;

  fill_counts(X, r);
  if (r.N > r.cap_points) {
    throw bound_violation("point bound failed: N=" + std::to_string(r.N) +
                          " cap=" + std::to_string(r.cap_points));
  }
  return r;
}

AuditReport incidence_audit(const Surface& S) {
  const Field& F = S.field();
  AuditReport a;
  a.q = F.q();
  a.d = S.degree();
  a.nu = count_lines(S);
  a.pairs_from_lines = std::uint64_t{a.q + 1} * a.nu;

  // Independent point-side count: fibers via the incident-line enumeration.
  const auto pts = points_on(S);
  a.N = pts.size();
  for (const ProjPoint& P : pts) {
    const auto fiber =
        static_cast<std::uint32_t>(lines_through_point(S, P).size());
    ++a.fiber_histogram[fiber];
    a.pairs_from_points += fiber;
    a.max_fiber = std::max(a.max_fiber, fiber);
  }
  a.identity_holds = a.pairs_from_lines == a.pairs_from_points;

  a.plane_component = has_plane_component(S).has_value();
  a.smooth_m1 = rational_singular_points(S, 1).singular.empty();
  a.fiber_bound_applies = a.smooth_m1;
  a.fiber_bound_holds = a.max_fiber <= a.d;
  return a;
}

}  // namespace pg3
