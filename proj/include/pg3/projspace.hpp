#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "pg3/field.hpp"

namespace pg3 {

/// A point of P^3(F_q) in canonical form: coordinates are element codes and
/// the first nonzero coordinate is 1, so projective equality is plain
/// equality.
struct ProjPoint {
  std::array<std::uint32_t, 4> c{};

  auto operator<=>(const ProjPoint&) const = default;
};

/// Scale a nonzero coordinate tuple to canonical form. Throws on the zero
/// vector.
ProjPoint normalize_point(const Field& F, const std::array<std::uint32_t, 4>& raw);

/// All q^3+q^2+q+1 points, ascending lexicographically by coordinate codes.
std::vector<ProjPoint> enumerate_points(const Field& F);

constexpr std::uint64_t num_points_p3(std::uint64_t q) {
  return q * q * q + q * q + q + 1;
}
constexpr std::uint64_t num_lines_p3(std::uint64_t q) {
  return (q * q + 1) * (q * q + q + 1);
}

/// An F_q-line of P^3: the canonical representative is the reduced
/// row-echelon basis (rank 2, rows rref[0..3] and rref[4..7]), which is
/// unique per line. The Pluecker tuple (p01,p02,p03,p12,p13,p23) is carried
/// along, normalized so its first nonzero entry is 1.
struct Line {
  std::array<std::uint32_t, 8> rref{};
  std::array<std::uint32_t, 6> pluecker{};

  auto operator<=>(const Line&) const = default;

  std::array<std::uint32_t, 4> row0() const {
    return {rref[0], rref[1], rref[2], rref[3]};
  }
  std::array<std::uint32_t, 4> row1() const {
    return {rref[4], rref[5], rref[6], rref[7]};
  }
};

/// Canonical line spanned by two independent coordinate tuples. Throws when
/// the tuples are projectively equal (rank < 2).
Line line_from_pair(const Field& F, const std::array<std::uint32_t, 4>& a,
                    const std::array<std::uint32_t, 4>& b);

Line line_through(const Field& F, const ProjPoint& P, const ProjPoint& Q);

/// The q+1 rational points of a line: row0, then row1 + c*row0 for each
/// c in code order, all normalized.
std::vector<ProjPoint> points_on_line(const Field& F, const Line& L);

/// All (q^2+1)(q^2+q+1) lines, generated RREF-shape by RREF-shape (pivot
/// column pairs in lex order, free entries in ascending code order), so no
/// deduplication is needed.
std::vector<Line> enumerate_lines(const Field& F);

bool line_contains(const Field& F, const Line& L, const ProjPoint& P);

/// The q^2+q+1 lines through P, each exactly once (via the points of a
/// plane missing P).
std::vector<Line> lines_through_point(const Field& F, const ProjPoint& P);

}  // namespace pg3
