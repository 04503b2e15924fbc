#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace pg3 {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The finite field F_q, q = p^e, realized as F_p[t]/(m(t)) where m is the
/// lexicographically smallest monic irreducible of degree e over F_p
/// (coefficients compared from the constant term upward). Elements are
/// addressed by their canonical integer code in [0, q):
///
///     code = d0 + d1*p + ... + d_{e-1}*p^{e-1},
///
/// d_i being the coefficient of t^i in the residue-class representative.
/// Codes below p form the prime subfield.
///
/// Multiplicative structure runs on index tables relative to a fixed
/// generator, so every operation is O(1) after construction. Field objects
/// are immutable and safe to share across threads.
class Field {
 public:
  static constexpr std::uint32_t kDefaultOrderCap = 1u << 16;

  /// Deterministic construction; instances are cached per (p, e).
  static FieldPtr make(std::uint32_t p, std::uint32_t e = 1,
                       std::uint32_t order_cap = kDefaultOrderCap);

  /// q must be a prime power.
  static FieldPtr from_order(std::uint32_t q,
                             std::uint32_t order_cap = kDefaultOrderCap);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  std::string name() const { return "F_" + std::to_string(q_); }

  /// Monic modulus, constant term first, length e+1; empty when e == 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool is_square_order() const { return e_ % 2 == 0; }
  /// p^{e/2}; throws when the order is not a square.
  std::uint32_t sqrt_q() const;

  bool same_spec(const Field& o) const { return p_ == o.p_ && q_ == o.q_; }

  // -- arithmetic on codes ---------------------------------------------

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_slow(a, b);
  }
  std::uint32_t neg(std::uint32_t a) const { return neg_table_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return add(a, neg(b));
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error(name() + ": inverse of zero");
    return exp_[(q_ - 1) - log_[a]];
  }
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
    return mul(a, inv(b));
  }
  /// a^n with 0^0 = 1.
  std::uint32_t pow(std::uint32_t a, std::uint64_t n) const {
    if (a == 0) return n == 0 ? 1u : 0u;
    const std::uint64_t r = q_ - 1;
    return exp_[static_cast<std::size_t>((std::uint64_t{log_[a]} * (n % r)) % r)];
  }
  std::uint32_t frobenius(std::uint32_t a) const { return pow(a, p_); }

  /// Image of an integer under Z -> F_q (lands in the prime subfield).
  std::uint32_t from_int(std::uint64_t n) const {
    return static_cast<std::uint32_t>(n % p_);
  }

  /// Base-p digit vector of a code, length e, constant term first.
  std::vector<std::uint32_t> digits(std::uint32_t code) const;
  std::uint32_t from_digits(const std::vector<std::uint32_t>& d) const;

  /// Validated decode of an integer as an element code.
  std::uint32_t check_code(std::uint64_t n) const {
    if (n >= q_) {
      throw std::out_of_range(name() + ": " + std::to_string(n) +
                              " is not a canonical element code");
    }
    return static_cast<std::uint32_t>(n);
  }

  /// A fixed generator of the multiplicative group (the first one in code
  /// order); 1 when q = 2.
  std::uint32_t generator() const { return generator_; }

 private:
  Field() = default;
  void build(std::uint32_t p, std::uint32_t e, std::uint32_t order_cap);
  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul_poly(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow_poly(std::uint32_t a, std::uint64_t n) const;

  std::uint32_t p_ = 0, e_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;        // size 2(q-1), exp_[i] = g^i
  std::vector<std::uint32_t> log_;        // size q, log_[g^i] = i, log_[0] unused
  std::vector<std::uint32_t> neg_table_;  // size q
  std::vector<std::uint32_t> add_table_;  // q*q, only built for odd p, small q
  std::uint32_t generator_ = 0;

  static constexpr std::uint32_t kAddTableMaxQ = 1024;
};

/// Code map of the deterministic embedding F_q -> F_{q^m}: the residue class
/// of t in the small field goes to the first root (in code order) of the
/// small modulus inside the big field. Requires equal characteristic and
/// from.e() | to.e(). The returned vector has size from.q().
std::vector<std::uint32_t> embedding_map(const Field& from, const Field& to);

/// One element together with its field, for callers that want checked,
/// operator-style arithmetic. Hot paths use the code API on Field directly.
class Element {
 public:
  Element(FieldPtr field, std::uint32_t code)
      : field_(std::move(field)), code_(field_->check_code(code)) {}

  static Element zero(FieldPtr f) { return Element(std::move(f), 0); }
  static Element one(FieldPtr f) { return Element(std::move(f), 1); }

  std::uint32_t code() const { return code_; }
  const Field& field() const { return *field_; }
  FieldPtr field_ptr() const { return field_; }
  std::vector<std::uint32_t> digits() const { return field_->digits(code_); }
  bool is_zero() const { return code_ == 0; }

  Element operator-() const { return Element(field_, field_->neg(code_)); }
  Element inv() const { return Element(field_, field_->inv(code_)); }
  Element pow(std::uint64_t n) const {
    return Element(field_, field_->pow(code_, n));
  }

  friend Element operator+(const Element& a, const Element& b) {
    a.check(b);
    return Element(a.field_, a.field_->add(a.code_, b.code_));
  }
  friend Element operator-(const Element& a, const Element& b) {
    a.check(b);
    return Element(a.field_, a.field_->sub(a.code_, b.code_));
  }
  friend Element operator*(const Element& a, const Element& b) {
    a.check(b);
    return Element(a.field_, a.field_->mul(a.code_, b.code_));
  }
  friend Element operator/(const Element& a, const Element& b) {
    a.check(b);
    return Element(a.field_, a.field_->div(a.code_, b.code_));
  }
  friend bool operator==(const Element& a, const Element& b) {
    return a.field_->same_spec(*b.field_) && a.code_ == b.code_;
  }

 private:
  void check(const Element& o) const {
    if (!field_->same_spec(*o.field_)) {
      throw std::invalid_argument("element fields mismatch: " +
                                  field_->name() + " vs " + o.field_->name());
    }
  }

  FieldPtr field_;
  std::uint32_t code_;
};

}  // namespace pg3
