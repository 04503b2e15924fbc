#include "pg3/surface.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pg3 {

Surface::Surface(Form f) : f_(std::move(f)) {
  if (f_.is_zero()) {
    throw std::invalid_argument("surface form must be nonzero");
  }
  if (f_.degree() < 1) {
    throw std::invalid_argument("surface form must have degree >= 1");
  }
}

std::uint64_t count_points(const Surface& S) {
  std::uint64_t n = 0;
  for (const ProjPoint& P : enumerate_points(S.field())) {
    if (S.form().evaluate(P.c) == 0) ++n;
  }
  return n;
}

std::vector<ProjPoint> points_on(const Surface& S) {
  std::vector<ProjPoint> out;
  for (const ProjPoint& P : enumerate_points(S.field())) {
    if (S.form().evaluate(P.c) == 0) out.push_back(P);
  }
  return out;
}

bool line_on_surface(const Surface& S, const Line& L) {
  return S.form().restrict_to_line(L.row0(), L.row1()).is_zero();
}

namespace {

// Fast rejection: a line on S has all q+1 rational points on S.
bool sampling_pass(const Surface& S, const Line& L) {
  for (const ProjPoint& P : points_on_line(S.field(), L)) {
    if (S.form().evaluate(P.c) != 0) return false;
  }
  return true;
}

}  // namespace

std::vector<Line> lines_on_surface(const Surface& S) {
  std::vector<Line> out;
  for (const Line& L : enumerate_lines(S.field())) {
    if (sampling_pass(S, L) && line_on_surface(S, L)) out.push_back(L);
  }
  return out;
}

std::uint64_t count_lines(const Surface& S) {
  std::uint64_t n = 0;
  for (const Line& L : enumerate_lines(S.field())) {
    if (sampling_pass(S, L) && line_on_surface(S, L)) ++n;
  }
  return n;
}

std::vector<Line> lines_through_point(const Surface& S, const ProjPoint& P) {
  if (S.form().evaluate(P.c) != 0) {
    throw std::invalid_argument("lines_through_point: point is not on the surface");
  }
  std::vector<Line> out;
  for (const Line& L : lines_through_point(S.field(), P)) {
    if (sampling_pass(S, L) && line_on_surface(S, L)) out.push_back(L);
  }
  return out;
}

Form tangent_plane(const Surface& S, const ProjPoint& P) {
  const Field& F = S.field();
  if (S.form().evaluate(P.c) != 0) {
    throw std::invalid_argument("tangent_plane: point is not on the surface");
  }
  std::array<std::uint32_t, 4> grad{};
  bool nonzero = false;
  for (int i = 0; i < 4; ++i) {
    grad[static_cast<std::size_t>(i)] = S.form().partial(i).evaluate(P.c);
    nonzero = nonzero || grad[static_cast<std::size_t>(i)] != 0;
  }
  if (!nonzero) {
    throw std::domain_error("tangent_plane: surface is singular at the point");
  }
  int lead = 0;
  while (grad[static_cast<std::size_t>(lead)] == 0) ++lead;
  const std::uint32_t s = F.inv(grad[static_cast<std::size_t>(lead)]);
  Form plane(S.field_ptr(), 1);
  for (int i = 0; i < 4; ++i) {
    if (grad[static_cast<std::size_t>(i)] == 0) continue;
    Mono m;
    m.e[static_cast<std::size_t>(i)] = 1;
    plane.add_term(m, F.mul(grad[static_cast<std::size_t>(i)], s));
  }
  return plane;
}

ExtensionScan rational_singular_points(const Surface& S, std::uint32_t m,
                                       const ScanLimits& limits) {
  if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
  const Field& F = S.field();

  std::uint64_t qm = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    qm *= F.q();
    if (qm > limits.order_cap) {
      throw budget_error("singularity scan: extension order " + F.name() +
                         "^" + std::to_string(m) + " exceeds the field cap");
    }
  }
  if (num_points_p3(qm) > limits.point_budget) {
    throw budget_error("singularity scan: P^3(F_" + std::to_string(qm) +
                       ") exceeds the point budget");
  }

  ExtensionScan scan;
  scan.m = m;
  scan.extension = Field::make(F.p(), F.e() * m, limits.order_cap);
  const Field& E = *scan.extension;
  const auto phi = embedding_map(F, E);

  Form lifted(scan.extension, S.form().degree());
  for (const auto& [mono, c] : S.form().terms()) lifted.add_term(mono, phi[c]);
  const std::array<Form, 4> parts = {lifted.partial(0), lifted.partial(1),
                                     lifted.partial(2), lifted.partial(3)};

  for (const ProjPoint& P : enumerate_points(E)) {
    if (lifted.evaluate(P.c) != 0) continue;
    bool singular = true;
    for (int i = 0; i < 4 && singular; ++i) {
      singular = parts[static_cast<std::size_t>(i)].evaluate(P.c) == 0;
    }
    if (singular) scan.singular.push_back(P);
  }
  return scan;
}

std::uint32_t find_singular_depth(const Surface& S, std::uint32_t max_m,
                                  std::uint32_t& checked_to,
                                  const ScanLimits& limits) {
  checked_to = 0;
  if (max_m == 0) return 0;
  // Degree 2: the partials are linear, so a singular point over any
  // extension forces one over F_q already; m = 1 decides.
  const std::uint32_t effective_max = S.degree() == 2 ? 1 : max_m;
  for (std::uint32_t m = 1; m <= effective_max; ++m) {
    ExtensionScan scan;
    try {
      scan = rational_singular_points(S, m, limits);
    } catch (const budget_error&) {
      return 0;  // checked_to records how far we got
    }
    checked_to = m;
    if (!scan.singular.empty()) return m;
  }
  if (S.degree() == 2 && checked_to == 1) checked_to = max_m;
  return 0;
}

std::optional<Form> has_plane_component(const Surface& S) {
  const Field& F = S.field();
  const auto points = enumerate_points(F);

  // Plane points for the sampling pre-filter, recomputed per candidate
  // linear form: cheap relative to the exact division.
  for (const ProjPoint& coeffs : points) {
    bool vanishes = true;
    for (const ProjPoint& R : points) {
      std::uint32_t dot = 0;
      for (int i = 0; i < 4; ++i) {
        dot = F.add(dot, F.mul(coeffs.c[static_cast<std::size_t>(i)],
                               R.c[static_cast<std::size_t>(i)]));
      }
      if (dot == 0 && S.form().evaluate(R.c) != 0) {
        vanishes = false;
        break;
      }
    }
    if (!vanishes) continue;

    // Exact check: substitute the pivot variable of the linear form away
    // and test the remainder. The coefficient tuple is normalized, so the
    // pivot coefficient is 1.
    int k = 0;
    while (coeffs.c[static_cast<std::size_t>(k)] == 0) ++k;
    Mat4 M = Mat4::identity();
    for (int j = 0; j < 4; ++j) {
      M.at(k, j) = j == k ? 0 : F.neg(coeffs.c[static_cast<std::size_t>(j)]);
    }
    if (S.form().substituted(M).is_zero()) {
      Form plane(S.field_ptr(), 1);
      for (int i = 0; i < 4; ++i) {
        if (coeffs.c[static_cast<std::size_t>(i)] == 0) continue;
        Mono mn;
        mn.e[static_cast<std::size_t>(i)] = 1;
        plane.add_term(mn, coeffs.c[static_cast<std::size_t>(i)]);
      }
      return plane;
    }
  }
  return std::nullopt;
}

PencilReport planar_pencil_at(const Surface& S, const ProjPoint& P) {
  const Field& F = S.field();
  const Form T = tangent_plane(S, P);  // validates P on S and smooth

  PencilReport report;
  report.vertex = P;
  for (const Line& L : lines_through_point(S, P)) {
    if (T.evaluate(L.row0()) == 0 && T.evaluate(L.row1()) == 0) {
      report.lines.push_back(L);
    }
  }

  std::set<ProjPoint> section;
  for (const ProjPoint& R : points_on(S)) {
    if (T.evaluate(R.c) == 0) section.insert(R);
  }
  std::set<ProjPoint> covered;
  for (const Line& L : report.lines) {
    for (const ProjPoint& R : points_on_line(F, L)) covered.insert(R);
  }
  report.is_pencil =
      report.lines.size() == S.degree() && covered == section;
  return report;
}

}  // namespace pg3
