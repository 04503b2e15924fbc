#include "pg3/extremal.hpp"

#include <stdexcept>

namespace pg3 {

ExtremalKind extremal_kind_from_name(const std::string& name) {
  if (name == "quadric") return ExtremalKind::kQuadric;
  if (name == "hermitian") return ExtremalKind::kHermitian;
  if (name == "qplusone") return ExtremalKind::kQPlusOne;
  throw std::invalid_argument("unknown surface kind: " + name +
                              " (expected quadric, hermitian or qplusone)");
}

std::string extremal_kind_name(ExtremalKind kind) {
  switch (kind) {
    case ExtremalKind::kQuadric:
      return "quadric";
    case ExtremalKind::kHermitian:
      return "hermitian";
    case ExtremalKind::kQPlusOne:
      return "qplusone";
  }
  throw std::logic_error("bad kind");
}

Surface construct_extremal(ExtremalKind kind, FieldPtr field) {
  const Field& F = *field;
  const std::uint32_t minus_one = F.neg(1);
  switch (kind) {
    case ExtremalKind::kQuadric: {
      Form f(field, 2);
      f.add_term(Mono{{1, 1, 0, 0}}, 1);
      f.add_term(Mono{{0, 0, 1, 1}}, minus_one);
      return Surface(std::move(f));
    }
    case ExtremalKind::kHermitian: {
      if (!F.is_square_order()) {
        throw std::invalid_argument("hermitian surface needs a square q, got " +
                                    F.name());
      }
      const std::uint32_t d = F.sqrt_q() + 1;
      Form f(field, d);
      for (std::uint32_t i = 0; i < 4; ++i) {
        Mono m;
        m.e[i] = d;
        f.add_term(m, 1);
      }
      return Surface(std::move(f));
    }
    case ExtremalKind::kQPlusOne: {
      const std::uint32_t q = F.q();
      Form f(field, q + 1);
      f.add_term(Mono{{1, q, 0, 0}}, 1);
      f.add_term(Mono{{q, 1, 0, 0}}, minus_one);
      f.add_term(Mono{{0, 0, 1, q}}, 1);
      f.add_term(Mono{{0, 0, q, 1}}, minus_one);
      return Surface(std::move(f));
    }
  }
  throw std::logic_error("bad kind");
}

}  // namespace pg3
