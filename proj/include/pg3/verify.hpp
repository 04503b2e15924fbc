#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pg3/errors.hpp"
#include "pg3/surface.hpp"

namespace pg3 {

/// Exact rational, kept reduced; the bound chain never touches floating
/// point.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Fraction reduced(std::uint64_t num, std::uint64_t den);
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct HypothesisFlags {
  bool plane_component_found = false;
  bool rational_singularity_found = false;
  std::uint32_t smoothness_checked_to_m = 0;
};

/// Verification record for one surface: counts, the exact middle value
/// d*N/(q+1), both caps and the equality flags.
struct BoundReport {
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  std::uint64_t N = 0;
  std::uint64_t nu = 0;
  Fraction mid;               ///< d*N/(q+1)
  std::uint64_t cap_lines = 0;   ///< ((d-1)q+1)d
  std::uint64_t cap_points = 0;  ///< ((d-1)q+1)(q+1)
  bool eq_lines = false;
  bool eq_points = false;
  HypothesisFlags flags;
};

struct VerifyOptions {
  std::uint32_t smooth_depth = 2;
  ScanLimits scan_limits{};
};

constexpr std::uint64_t cap_lines_for(std::uint64_t q, std::uint64_t d) {
  return ((d - 1) * q + 1) * d;
}
constexpr std::uint64_t cap_points_for(std::uint64_t q, std::uint64_t d) {
  return ((d - 1) * q + 1) * (q + 1);
}

/// Checks nu <= d*N/(q+1) <= ((d-1)q+1)d. Requires d >= 2. Hypothesis
/// problems (rational singular point, plane component) are reported in the
/// flags, not as failures; when the hypotheses hold and the chain still
/// fails, bound_violation is thrown.
BoundReport verify_line_bound(const Surface& S, const VerifyOptions& opt = {});

/// Checks N <= ((d-1)q+1)(q+1). Needs no smoothness, but refuses surfaces
/// with an F_q-plane component (hypothesis_error).
BoundReport verify_point_bound(const Surface& X, const VerifyOptions& opt = {});

/// Explicit audit of the incidence correspondence
/// Pi = {(P, l) : P in l, l on S}: the pair count is obtained once from the
/// line side as (q+1)*nu and once from the point side as the fiber sum, and
/// the two must agree.
struct AuditReport {
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  std::uint64_t N = 0;
  std::uint64_t nu = 0;
  std::uint64_t pairs_from_lines = 0;
  std::uint64_t pairs_from_points = 0;
  bool identity_holds = false;
  std::map<std::uint32_t, std::uint64_t> fiber_histogram;
  std::uint32_t max_fiber = 0;
  bool smooth_m1 = false;
  bool plane_component = false;
  bool fiber_bound_applies = false;  ///< smooth at m = 1
  bool fiber_bound_holds = false;    ///< max_fiber <= d
};

AuditReport incidence_audit(const Surface& S);

// ---------------------------------------------------------------------
// Census over all degree-d surfaces up to scalar.

struct CensusOptions {
  std::uint64_t candidate_budget = 2'000'000;
  unsigned jobs = 1;
  bool histogram = true;            ///< disables the max-only pruning
  std::uint32_t deep_smooth_max_m = 6;
  std::uint64_t max_attaining_kept = 4096;
  bool collect_attaining = true;
  ScanLimits scan_limits{};
};

struct CensusViolation {
  std::uint64_t candidate_index = 0;
  std::string form_text;
  std::uint64_t N = 0;
  std::uint64_t nu = 0;
  std::uint32_t smooth_checked_to_m = 0;
};

struct AttainingRecord {
  std::uint64_t candidate_index = 0;
  std::string form_text;
  std::uint64_t N = 0;
  std::uint64_t nu = 0;
};

struct CensusSummary {
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  std::uint64_t total_forms = 0;      ///< candidates enumerated
  std::uint64_t filtered_smooth = 0;  ///< survivors of the hypothesis filter
  std::uint64_t max_nu = 0;
  std::uint64_t cap_lines = 0;
  std::uint64_t attaining_count = 0;
  std::map<std::uint64_t, std::uint64_t> nu_histogram;
  std::vector<CensusViolation> violations;  ///< must be empty
  std::vector<AttainingRecord> attaining;   ///< up to max_attaining_kept
};

/// Exhaustive sweep over the (q^C - 1)/(q - 1) scalar-orbit representatives
/// of nonzero degree-d forms (first nonzero coefficient fixed to 1 in term
/// order). Two-phase hypothesis filter: a fast m = 1 singularity check and
/// plane-component rejection up front; candidates whose line count exceeds
/// the cap are re-checked for singular points in deeper extensions before
/// being declared violations. Deterministic output for any job count.
CensusSummary census(FieldPtr field, std::uint32_t degree,
                     const CensusOptions& opt = {});

}  // namespace pg3
