#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pg3/errors.hpp"
#include "pg3/forms.hpp"
#include "pg3/projspace.hpp"

namespace pg3 {

/// A surface in P^3(F_q): a nonzero homogeneous form of degree >= 1. The
/// bound theory assumes degree >= 2; degree 1 is accepted for plumbing and
/// reported by in_paper_setting().
class Surface {
 public:
  explicit Surface(Form f);

  const Form& form() const { return f_; }
  const Field& field() const { return f_.field(); }
  FieldPtr field_ptr() const { return f_.field_ptr(); }
  std::uint32_t degree() const { return f_.degree(); }
  bool in_paper_setting() const { return degree() >= 2; }

 private:
  Form f_;
};

/// N_q(S): rational points on the surface.
std::uint64_t count_points(const Surface& S);
std::vector<ProjPoint> points_on(const Surface& S);

/// True iff the symbolic restriction of the form to L vanishes identically
/// (basis independent). Point sampling is only ever a pre-filter; the
/// decision is symbolic, which matters once d > q.
bool line_on_surface(const Surface& S, const Line& L);

/// All F_q-lines on S in enumeration order; nu_q(S) is the count.
std::vector<Line> lines_on_surface(const Surface& S);
std::uint64_t count_lines(const Surface& S);

/// Lines on S through P, found among the q^2+q+1 lines incident to P.
/// Requires f(P) = 0.
std::vector<Line> lines_through_point(const Surface& S, const ProjPoint& P);

/// The linear form sum_i (df/dX_i)(P) X_i, scaled to leading coefficient 1.
/// Requires P on S and nonsingular there.
Form tangent_plane(const Surface& S, const ProjPoint& P);

struct ExtensionScan {
  FieldPtr extension;               ///< F_{q^m}
  std::uint32_t m = 0;              ///< extension degree scanned
  std::vector<ProjPoint> singular;  ///< points with f = 0 and all partials 0
};

struct ScanLimits {
  std::uint32_t order_cap = Field::kDefaultOrderCap;
  std::uint64_t point_budget = 1u << 22;
};

/// Rational singular points of S over F_{q^m}; the form and its partials
/// are lifted through the canonical embedding. Throws budget_error when the
/// extension enumeration exceeds the limits.
ExtensionScan rational_singular_points(const Surface& S, std::uint32_t m,
                                       const ScanLimits& limits = {});

/// Scans m = 1..max_m for rational singular points. Returns the first m at
/// which one exists, or 0 if none was found. checked_to reports how deep
/// the scan actually got before hitting a resource limit. For degree-2
/// surfaces the m = 1 scan is already exact (the gradient equations are
/// linear), so deeper levels are skipped.
std::uint32_t find_singular_depth(const Surface& S, std::uint32_t max_m,
                                  std::uint32_t& checked_to,
                                  const ScanLimits& limits = {});

/// Some linear form over F_q dividing the surface's equation exactly
/// (deterministic first hit in point-enumeration order of the coefficient
/// tuple), or nullopt.
std::optional<Form> has_plane_component(const Surface& S);

/// The tangent-section shape at a smooth rational point: is_pencil is true
/// exactly when the lines on S through P inside T_P(S) number d and their
/// rational points cover all of S intersect T_P(S).
struct PencilReport {
  bool is_pencil = false;
  std::vector<Line> lines;
  ProjPoint vertex;
};

PencilReport planar_pencil_at(const Surface& S, const ProjPoint& P);

}  // namespace pg3
