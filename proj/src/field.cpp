#include "pg3/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace pg3 {
namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, constant term first.
using Poly = std::vector<std::uint32_t>;

Poly trimmed(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

// Remainder of f modulo a monic g.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  f = trimmed(std::move(f));
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint32_t c = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    if (c != 0) {
      for (std::size_t i = 0; i < dg; ++i) {
        std::uint64_t sub = (std::uint64_t{g[i]} * c) % p;
        f[i + shift] = static_cast<std::uint32_t>((f[i + shift] + p - sub) % p);
      }
    }
    f.pop_back();
    while (!f.empty() && f.back() == 0 && f.size() > dg) f.pop_back();
  }
  return trimmed(std::move(f));
}

bool poly_divides(const Poly& g, const Poly& f, std::uint32_t p) {
  return poly_mod(f, g, p).empty();
}

// Trial division by every monic polynomial of degree 1..deg(m)/2.
bool is_irreducible(const Poly& m, std::uint32_t p) {
  const std::size_t e = m.size() - 1;
  for (std::size_t k = 1; k <= e / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(k + 1, 0);
      g[k] = 1;
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (poly_divides(g, m, p)) return false;
    }
  }
  return true;
}

// First irreducible monic of degree e in lex order on (c_0, c_1, ...).
Poly find_modulus(std::uint32_t p, std::uint32_t e) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < e; ++i) total *= p;
  for (std::uint64_t n = 0; n < total; ++n) {
    Poly m(e + 1, 0);
    m[e] = 1;
    std::uint64_t t = n;
    for (std::uint32_t i = 0; i < e; ++i) {  // c_0 takes the top digit of n
      m[e - 1 - i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    if (is_irreducible(m, p)) return m;
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> fs;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

std::uint32_t Field::sqrt_q() const {
  if (e_ % 2 != 0) {
    throw std::domain_error(name() + ": order is not a square");
  }
  std::uint32_t r = 1;
  for (std::uint32_t i = 0; i < e_ / 2; ++i) r *= p_;
  return r;
}

std::vector<std::uint32_t> Field::digits(std::uint32_t code) const {
  check_code(code);
  std::vector<std::uint32_t> d(e_);
  for (std::uint32_t i = 0; i < e_; ++i) {
    d[i] = code % p_;
    code /= p_;
  }
  return d;
}

std::uint32_t Field::from_digits(const std::vector<std::uint32_t>& d) const {
  if (d.size() != e_) {
    throw std::invalid_argument(name() + ": expected " + std::to_string(e_) +
                                " digits");
  }
  std::uint32_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] >= p_) throw std::out_of_range(name() + ": digit out of [0, p)");
    code = code * p_ + d[i];
  }
  return code;
}

std::uint32_t Field::add_slow(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    out += ((a % p_) + (b % p_)) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return out;
}

std::uint32_t Field::mul_poly(std::uint32_t a, std::uint32_t b) const {
  if (e_ == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
  Poly da(e_), db(e_);
  for (std::uint32_t i = 0; i < e_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  Poly prod(2 * e_ - 1, 0);
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < e_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_);
    }
  }
  prod = poly_mod(std::move(prod), modulus_, p_);
  std::uint32_t code = 0;
  for (std::size_t i = prod.size(); i-- > 0;) code = code * p_ + prod[i];
  return code;
}

std::uint32_t Field::pow_poly(std::uint32_t a, std::uint64_t n) const {
  std::uint32_t out = 1, base = a;
  while (n > 0) {
    if (n & 1) out = mul_poly(out, base);
    base = mul_poly(base, base);
    n >>= 1;
  }
  return out;
}

void Field::build(std::uint32_t p, std::uint32_t e, std::uint32_t order_cap) {
  if (!is_prime(p)) {
    throw std::invalid_argument(std::to_string(p) +
                                " is not prime; F_q needs q = p^e");
  }
  if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > order_cap) {
      throw std::invalid_argument("field order " + std::to_string(p) + "^" +
                                  std::to_string(e) + " exceeds the cap " +
                                  std::to_string(order_cap));
    }
  }
  p_ = p;
  e_ = e;
  q_ = static_cast<std::uint32_t>(q);
  if (e_ >= 2) modulus_ = find_modulus(p_, e_);

  neg_table_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::uint32_t x = a, out = 0, mult = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      out += ((p_ - x % p_) % p_) * mult;
      x /= p_;
      mult *= p_;
    }
    neg_table_[a] = out;
  }

  if (p_ != 2 && q_ <= kAddTableMaxQ) {
    add_table_.resize(std::size_t{q_} * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b)
        add_table_[std::size_t{a} * q_ + b] = add_slow(a, b);
  }

  // First generator of the multiplicative group in code order.
  const auto factors = prime_factors(q_ - 1);
  generator_ = 1;
  for (std::uint32_t cand = 1; cand < q_; ++cand) {
    bool ok = true;
    for (std::uint32_t r : factors) {
      if (pow_poly(cand, (q_ - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      generator_ = cand;
      break;
    }
  }

  exp_.assign(2 * std::size_t{q_ - 1}, 1);
  log_.assign(q_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = x;
    exp_[i + q_ - 1] = x;
    log_[x] = i;
    x = mul_poly(x, generator_);
  }
  if (x != 1) throw std::logic_error("generator order mismatch");
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t e,
                     std::uint32_t order_cap) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>,
                  std::shared_ptr<const Field>>
      cache;

  // Cap violations must fire even for cached fields.
  {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e && q <= order_cap; ++i) q *= p;
    if (e < 1 || q > order_cap) {
      auto f = std::shared_ptr<Field>(new Field());
      f->build(p, e, order_cap);  // throws with the right message
    }
  }

  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, e});
  if (it != cache.end()) return it->second;
  auto f = std::shared_ptr<Field>(new Field());
  f->build(p, e, order_cap);
  cache.emplace(std::make_pair(p, e), f);
  return f;
}

FieldPtr Field::from_order(std::uint32_t q, std::uint32_t order_cap) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  std::uint32_t p = q;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t e = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) {
    throw std::invalid_argument(std::to_string(q) +
                                " is not a prime power, so F_q does not exist");
  }
  return make(p, e, order_cap);
}

std::vector<std::uint32_t> embedding_map(const Field& from, const Field& to) {
  if (from.p() != to.p()) {
    throw std::invalid_argument("embedding requires equal characteristic");
  }
  if (to.e() % from.e() != 0) {
    throw std::invalid_argument(from.name() + " does not embed in " +
                                to.name());
  }
  std::vector<std::uint32_t> map(from.q());
  if (from.e() == 1) {
    for (std::uint32_t c = 0; c < from.q(); ++c) map[c] = c;
    return map;
  }
  // theta = first root of the small modulus in the big field.
  const auto& m = from.modulus();
  std::uint32_t theta = 0;
  bool found = false;
  for (std::uint32_t x = 0; x < to.q() && !found; ++x) {
    std::uint32_t acc = m.back();
    for (std::size_t i = m.size() - 1; i-- > 0;) {
      acc = to.add(to.mul(acc, x), m[i]);
    }
    if (acc == 0) {
      theta = x;
      found = true;
    }
  }
  if (!found) throw std::logic_error("modulus has no root in extension");

  std::vector<std::uint32_t> theta_pow(from.e());
  theta_pow[0] = 1;
  for (std::uint32_t i = 1; i < from.e(); ++i) {
    theta_pow[i] = to.mul(theta_pow[i - 1], theta);
  }
  for (std::uint32_t a = 0; a < from.q(); ++a) {
    std::uint32_t x = a, out = 0;
    for (std::uint32_t i = 0; i < from.e(); ++i) {
      out = to.add(out, to.mul(x % from.p(), theta_pow[i]));
      x /= from.p();
    }
    map[a] = out;
  }
  return map;
}

}  // namespace pg3
