#pragma once

#include <random>

#include "pg3/forms.hpp"

namespace pg3::testing {

/// Uniform nonzero homogeneous form of the given degree.
inline Form random_form(FieldPtr field, std::uint32_t degree,
                        std::mt19937& rng) {
  const auto monos = monomials_of_degree(degree);
  std::uniform_int_distribution<std::uint32_t> dist(0, field->q() - 1);
  while (true) {
    Form f(field, degree);
    for (const Mono& m : monos) {
      const std::uint32_t c = dist(rng);
      if (c != 0) f.add_term(m, c);
    }
    if (!f.is_zero()) return f;
  }
}

inline Mat4 random_invertible(const Field& F, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, F.q() - 1);
  while (true) {
    Mat4 M;
    for (auto& v : M.a) v = dist(rng);
    if (mat_inverse(F, M)) return M;
  }
}

}  // namespace pg3::testing
