#pragma once

#include "pg3/surface.hpp"

namespace pg3 {

/// The three families that attain both bounds.
enum class ExtremalKind {
  kQuadric,    ///< X0*X1 - X2*X3, degree 2
  kHermitian,  ///< sum X_i^{sqrt(q)+1}, degree sqrt(q)+1, q a square
  kQPlusOne,   ///< X0*X1^q - X0^q*X1 + X2*X3^q - X2^q*X3, degree q+1
};

/// Parse "quadric" / "hermitian" / "qplusone".
ExtremalKind extremal_kind_from_name(const std::string& name);
std::string extremal_kind_name(ExtremalKind kind);

/// Construct the surface over the given field. Hermitian requires square q.
Surface construct_extremal(ExtremalKind kind, FieldPtr field);

}  // namespace pg3
