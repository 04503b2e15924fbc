#include "pg3/projspace.hpp"

#include <optional>
#include <stdexcept>

namespace pg3 {
namespace {

using Row = std::array<std::uint32_t, 4>;

Row scale_row(const Field& F, const Row& r, std::uint32_t s) {
  return {F.mul(r[0], s), F.mul(r[1], s), F.mul(r[2], s), F.mul(r[3], s)};
}

// r - s*t
Row row_sub_scaled(const Field& F, const Row& r, std::uint32_t s, const Row& t) {
  Row out;
  for (int i = 0; i < 4; ++i) out[i] = F.sub(r[i], F.mul(s, t[i]));
  return out;
}

// Reduced row echelon form of the 2x4 matrix [a; b]; empty when rank < 2.
std::optional<std::pair<Row, Row>> rref2x4(const Field& F, Row r0, Row r1) {
  int p0 = -1;
  for (int col = 0; col < 4 && p0 < 0; ++col) {
    if (r0[col] == 0 && r1[col] != 0) std::swap(r0, r1);
    if (r0[col] != 0) p0 = col;
  }
  if (p0 < 0) return std::nullopt;
  r0 = scale_row(F, r0, F.inv(r0[p0]));
  r1 = row_sub_scaled(F, r1, r1[p0], r0);

  int p1 = -1;
  for (int col = p0 + 1; col < 4 && p1 < 0; ++col) {
    if (r1[col] != 0) p1 = col;
  }
  if (p1 < 0) return std::nullopt;
  r1 = scale_row(F, r1, F.inv(r1[p1]));
  r0 = row_sub_scaled(F, r0, r0[p1], r1);
  return std::make_pair(r0, r1);
}

std::array<std::uint32_t, 6> pluecker_of(const Field& F, const Row& r0,
                                         const Row& r1) {
  constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::array<std::uint32_t, 6> p{};
  for (int k = 0; k < 6; ++k) {
    const int i = pairs[k][0], j = pairs[k][1];
    p[k] = F.sub(F.mul(r0[i], r1[j]), F.mul(r0[j], r1[i]));
  }
  for (int k = 0; k < 6; ++k) {
    if (p[k] != 0) {
      const std::uint32_t s = F.inv(p[k]);
      for (int l = k; l < 6; ++l) p[l] = F.mul(p[l], s);
      break;
    }
  }
  return p;
}

Line line_from_rref(const Field& F, const Row& r0, const Row& r1) {
  Line L;
  for (int i = 0; i < 4; ++i) {
    L.rref[i] = r0[i];
    L.rref[4 + i] = r1[i];
  }
  L.pluecker = pluecker_of(F, r0, r1);
  return L;
}

}  // namespace

ProjPoint normalize_point(const Field& F,
                          const std::array<std::uint32_t, 4>& raw) {
  int lead = -1;
  for (int i = 0; i < 4 && lead < 0; ++i)
    if (raw[i] != 0) lead = i;
  if (lead < 0) {
    throw std::invalid_argument("cannot normalize the zero vector");
  }
  const std::uint32_t s = F.inv(raw[lead]);
  ProjPoint P;
  for (int i = 0; i < 4; ++i) P.c[i] = F.mul(raw[i], s);
  return P;
}

std::vector<ProjPoint> enumerate_points(const Field& F) {
  const std::uint32_t q = F.q();
  std::vector<ProjPoint> pts;
  pts.reserve(num_points_p3(q));
  pts.push_back(ProjPoint{{0, 0, 0, 1}});
  for (std::uint32_t z = 0; z < q; ++z) pts.push_back(ProjPoint{{0, 0, 1, z}});
  for (std::uint32_t y = 0; y < q; ++y)
    for (std::uint32_t z = 0; z < q; ++z) pts.push_back(ProjPoint{{0, 1, y, z}});
  for (std::uint32_t x = 0; x < q; ++x)
    for (std::uint32_t y = 0; y < q; ++y)
      for (std::uint32_t z = 0; z < q; ++z)
        pts.push_back(ProjPoint{{1, x, y, z}});
  return pts;
}

Line line_from_pair(const Field& F, const std::array<std::uint32_t, 4>& a,
                    const std::array<std::uint32_t, 4>& b) {
  auto rr = rref2x4(F, a, b);
  if (!rr) {
    throw std::invalid_argument(
        "line needs two distinct points (got a rank < 2 span)");
  }
  return line_from_rref(F, rr->first, rr->second);
}

Line line_through(const Field& F, const ProjPoint& P, const ProjPoint& Q) {
  return line_from_pair(F, P.c, Q.c);
}

std::vector<ProjPoint> points_on_line(const Field& F, const Line& L) {
  const Row r0 = L.row0(), r1 = L.row1();
  std::vector<ProjPoint> pts;
  pts.reserve(F.q() + 1);
  pts.push_back(normalize_point(F, r0));
  for (std::uint32_t c = 0; c < F.q(); ++c) {
    Row v;
    for (int i = 0; i < 4; ++i) v[i] = F.add(r1[i], F.mul(c, r0[i]));
    pts.push_back(normalize_point(F, v));
  }
  return pts;
}

std::vector<Line> enumerate_lines(const Field& F) {
  const std::uint32_t q = F.q();
  std::vector<Line> lines;
  lines.reserve(num_lines_p3(q));
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      // Free slots: row 0 at columns > i except j, row 1 at columns > j.
      std::vector<std::pair<int, int>> slots;  // (row, col)
      for (int col = i + 1; col < 4; ++col)
        if (col != j) slots.emplace_back(0, col);
      for (int col = j + 1; col < 4; ++col) slots.emplace_back(1, col);

      std::uint64_t total = 1;
      for (std::size_t s = 0; s < slots.size(); ++s) total *= q;
      for (std::uint64_t n = 0; n < total; ++n) {
        Row r0{}, r1{};
        r0[i] = 1;
        r1[j] = 1;
        std::uint64_t t = n;  // leftmost slot takes the top digit
        for (std::size_t s = slots.size(); s-- > 0;) {
          const auto val = static_cast<std::uint32_t>(t % q);
          t /= q;
          if (slots[s].first == 0)
            r0[slots[s].second] = val;
          else
            r1[slots[s].second] = val;
        }
        lines.push_back(line_from_rref(F, r0, r1));
      }
    }
  }
  return lines;
}

bool line_contains(const Field& F, const Line& L, const ProjPoint& P) {
  // RREF rows: the pivot coordinates of P give the only possible
  // combination lambda*row0 + mu*row1.
  const Row r0 = L.row0(), r1 = L.row1();
  int p0 = -1, p1 = -1;
  for (int col = 0; col < 4; ++col) {
    if (p0 < 0 && r0[col] != 0) p0 = col;
    if (p1 < 0 && r1[col] != 0) p1 = col;
  }
  const std::uint32_t lam = P.c[p0], mu = P.c[p1];
  for (int i = 0; i < 4; ++i) {
    if (F.add(F.mul(lam, r0[i]), F.mul(mu, r1[i])) != P.c[i]) return false;
  }
  return true;
}

std::vector<Line> lines_through_point(const Field& F, const ProjPoint& P) {
  // Every line through P meets a plane avoiding P exactly once; X_k = 0
  // works where k is the leading coordinate of P.
  int k = 0;
  while (P.c[k] == 0) ++k;
  std::array<int, 3> ax{};
  int n = 0;
  for (int i = 0; i < 4; ++i)
    if (i != k) ax[n++] = i;

  const std::uint32_t q = F.q();
  std::vector<Line> lines;
  lines.reserve(std::size_t{q} * q + q + 1);
  auto emit = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    std::array<std::uint32_t, 4> Q{};
    Q[ax[0]] = a;
    Q[ax[1]] = b;
    Q[ax[2]] = c;
    lines.push_back(line_from_pair(F, P.c, Q));
  };
  emit(0, 0, 1);
  for (std::uint32_t z = 0; z < q; ++z) emit(0, 1, z);
  for (std::uint32_t y = 0; y < q; ++y)
    for (std::uint32_t z = 0; z < q; ++z) emit(1, y, z);
  return lines;
}

}  // namespace pg3
