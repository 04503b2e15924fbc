#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pg3/field.hpp"

namespace pg3 {

/// Exponent vector of a monomial in X0..X3.
struct Mono {
  std::array<std::uint32_t, 4> e{};

  std::uint32_t degree() const { return e[0] + e[1] + e[2] + e[3]; }
  auto operator<=>(const Mono&) const = default;
};

/// Term order used everywhere: X0-major, descending exponents, so X0^d
/// comes first and X3^d last.
struct MonoDescLex {
  bool operator()(const Mono& a, const Mono& b) const { return a.e > b.e; }
};

using TermMap = std::map<Mono, std::uint32_t, MonoDescLex>;

/// All degree-d monomials in X0..X3 in the term order above.
std::vector<Mono> monomials_of_degree(std::uint32_t d);

/// 4x4 matrix of element codes, row major.
struct Mat4 {
  std::array<std::uint32_t, 16> a{};

  std::uint32_t& at(int r, int c) { return a[static_cast<std::size_t>(4 * r + c)]; }
  std::uint32_t at(int r, int c) const { return a[static_cast<std::size_t>(4 * r + c)]; }

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m.at(i, i) = 1;
    return m;
  }
  auto operator<=>(const Mat4&) const = default;
};

Mat4 mat_mul(const Field& F, const Mat4& A, const Mat4& B);
std::optional<Mat4> mat_inverse(const Field& F, const Mat4& M);

/// Homogeneous binary form of degree d: coeff[k] multiplies lam^{d-k} mu^k.
class BinaryForm {
 public:
  BinaryForm(FieldPtr field, std::uint32_t degree)
      : field_(std::move(field)), coeff_(degree + 1, 0) {}

  const Field& field() const { return *field_; }
  std::uint32_t degree() const {
    return static_cast<std::uint32_t>(coeff_.size() - 1);
  }
  std::uint32_t coeff(std::uint32_t k) const { return coeff_.at(k); }
  void set_coeff(std::uint32_t k, std::uint32_t c) { coeff_.at(k) = c; }

  bool is_zero() const;
  std::uint32_t evaluate(std::uint32_t lam, std::uint32_t mu) const;
  /// Number of zeros on P^1(F_q).
  std::uint32_t projective_root_count() const;

 private:
  FieldPtr field_;
  std::vector<std::uint32_t> coeff_;
};

/// Sparse homogeneous polynomial in X0..X3 over F_q. Zero coefficients are
/// never stored; the zero form keeps an explicit declared degree. Immutable
/// once built apart from the add_term builder.
class Form {
 public:
  Form(FieldPtr field, std::uint32_t degree);

  static Form monomial(FieldPtr field, const Mono& m, std::uint32_t coeff);

  /// Grammar: sum of terms `[coeff *] X0^a * X1^b * ...` joined by + or -,
  /// coefficients as canonical integer codes, whitespace ignored.
  static Form parse(std::string_view text, FieldPtr field);

  const Field& field() const { return *field_; }
  FieldPtr field_ptr() const { return field_; }
  std::uint32_t degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::uint32_t coeff(const Mono& m) const;

  /// Accumulate coeff onto monomial m (mod p), dropping the term when it
  /// cancels. m must have the declared degree.
  void add_term(const Mono& m, std::uint32_t coeff);

  std::uint32_t evaluate(const std::array<std::uint32_t, 4>& v) const;

  /// Formal partial derivative; exponents act through Z -> F_p, so X^q
  /// differentiates to 0.
  Form partial(int axis) const;

  /// Exact expansion of f(lam*a + mu*b) as a degree-d binary form. Throws
  /// when a and b span less than a line.
  BinaryForm restrict_to_line(const std::array<std::uint32_t, 4>& a,
                              const std::array<std::uint32_t, 4>& b) const;

  /// Substitution X_i <- sum_j M(i,j) X_j; M may be singular.
  Form substituted(const Mat4& M) const;

  /// Coordinate change f(M*X); M must be invertible.
  Form transform(const Mat4& M) const;

  Form scaled(std::uint32_t c) const;

  /// Canonical text in the term order; parse(to_string()) reproduces the
  /// form exactly.
  std::string to_string() const;

  friend Form operator+(const Form& f, const Form& g);
  friend Form operator*(const Form& f, const Form& g);
  friend bool operator==(const Form& f, const Form& g);

 private:
  void check_compatible(const Form& other, const char* op) const;

  FieldPtr field_;
  std::uint32_t degree_;
  TermMap terms_;
};

}  // namespace pg3
