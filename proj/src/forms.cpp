#include "pg3/forms.hpp"

#include <cctype>
#include <stdexcept>

namespace pg3 {
namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t n, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (n > 0) {
    if (n & 1) r = r * b % m;
    b = b * b % m;
    n >>= 1;
  }
  return r;
}

// C(n, k) mod p for n, k < p, via the multiplicative formula.
std::uint64_t binom_below_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    num = num * ((n - k + j) % p) % p;
    den = den * (j % p) % p;
  }
  if (num == 0) return 0;
  return num * powmod(den, p - 2, p) % p;
}

// Lucas: C(n, k) mod p digit by digit.
std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  std::uint64_t r = 1;
  while ((n > 0 || k > 0) && r != 0) {
    r = r * binom_below_p(n % p, k % p, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(r);
}

void map_accumulate(const Field& F, TermMap& acc, const Mono& m,
                    std::uint32_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = acc.emplace(m, coeff);
  if (!inserted) {
    it->second = F.add(it->second, coeff);
    if (it->second == 0) acc.erase(it);
  }
}

TermMap map_mul(const Field& F, const TermMap& A, const TermMap& B) {
  TermMap out;
  for (const auto& [ma, ca] : A) {
    for (const auto& [mb, cb] : B) {
      Mono m;
      for (int i = 0; i < 4; ++i) m.e[i] = ma.e[i] + mb.e[i];
      map_accumulate(F, out, m, F.mul(ca, cb));
    }
  }
  return out;
}

// Degree guard keeps exponent arithmetic well inside machine range.
std::uint32_t degree_cap(const Field& F) { return 2 * F.q() + 2; }

}  // namespace

std::vector<Mono> monomials_of_degree(std::uint32_t d) {
  std::vector<Mono> out;
  for (std::int64_t e0 = d; e0 >= 0; --e0)
    for (std::int64_t e1 = d - e0; e1 >= 0; --e1)
      for (std::int64_t e2 = d - e0 - e1; e2 >= 0; --e2) {
        Mono m;
        m.e = {static_cast<std::uint32_t>(e0), static_cast<std::uint32_t>(e1),
               static_cast<std::uint32_t>(e2),
               static_cast<std::uint32_t>(d - e0 - e1 - e2)};
        out.push_back(m);
      }
  return out;
}

Mat4 mat_mul(const Field& F, const Mat4& A, const Mat4& B) {
  Mat4 C;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::uint32_t s = 0;
      for (int k = 0; k < 4; ++k) s = F.add(s, F.mul(A.at(i, k), B.at(k, j)));
      C.at(i, j) = s;
    }
  return C;
}

std::optional<Mat4> mat_inverse(const Field& F, const Mat4& M) {
  // Gauss-Jordan on [M | I].
  std::array<std::array<std::uint32_t, 8>, 4> w{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) w[i][j] = M.at(i, j);
    w[i][4 + i] = 1;
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = -1;
    for (int r = col; r < 4 && pivot < 0; ++r)
      if (w[r][col] != 0) pivot = r;
    if (pivot < 0) return std::nullopt;
    std::swap(w[col], w[static_cast<std::size_t>(pivot)]);
    const std::uint32_t s = F.inv(w[col][col]);
    for (int j = 0; j < 8; ++j) w[col][j] = F.mul(w[col][j], s);
    for (int r = 0; r < 4; ++r) {
      if (r == col || w[r][col] == 0) continue;
      const std::uint32_t f = w[r][col];
      for (int j = 0; j < 8; ++j)
        w[r][j] = F.sub(w[r][j], F.mul(f, w[col][j]));
    }
  }
  Mat4 inv;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv.at(i, j) = w[i][4 + j];
  return inv;
}

bool BinaryForm::is_zero() const {
  for (std::uint32_t c : coeff_)
    if (c != 0) return false;
  return true;
}

std::uint32_t BinaryForm::evaluate(std::uint32_t lam, std::uint32_t mu) const {
  const Field& F = *field_;
  const std::uint32_t d = degree();
  std::uint32_t out = 0;
  for (std::uint32_t k = 0; k <= d; ++k) {
    if (coeff_[k] == 0) continue;
    std::uint32_t t = F.mul(coeff_[k], F.mul(F.pow(lam, d - k), F.pow(mu, k)));
    out = F.add(out, t);
  }
  return out;
}

std::uint32_t BinaryForm::projective_root_count() const {
  const Field& F = *field_;
  std::uint32_t roots = 0;
  for (std::uint32_t t = 0; t < F.q(); ++t)
    if (evaluate(1, t) == 0) ++roots;
  if (evaluate(0, 1) == 0) ++roots;
  return roots;
}

Form::Form(FieldPtr field, std::uint32_t degree)
    : field_(std::move(field)), degree_(degree) {
  if (degree_ > degree_cap(*field_)) {
    throw std::invalid_argument("form degree " + std::to_string(degree_) +
                                " exceeds the cap 2q+2 for " + field_->name());
  }
}

Form Form::monomial(FieldPtr field, const Mono& m, std::uint32_t coeff) {
  Form f(std::move(field), m.degree());
  f.add_term(m, coeff);
  return f;
}

std::uint32_t Form::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void Form::add_term(const Mono& m, std::uint32_t coeff) {
  if (m.degree() != degree_) {
    throw std::invalid_argument("term degree " + std::to_string(m.degree()) +
                                " does not match form degree " +
                                std::to_string(degree_));
  }
  map_accumulate(*field_, terms_, m, field_->check_code(coeff));
}

std::uint32_t Form::evaluate(const std::array<std::uint32_t, 4>& v) const {
  const Field& F = *field_;
  std::uint32_t out = 0;
  for (const auto& [m, c] : terms_) {
    std::uint32_t t = c;
    for (int i = 0; i < 4 && t != 0; ++i) {
      if (m.e[i] != 0) t = F.mul(t, F.pow(v[static_cast<std::size_t>(i)], m.e[i]));
    }
    out = F.add(out, t);
  }
  return out;
}

Form Form::partial(int axis) const {
  const Field& F = *field_;
  Form out(field_, degree_ > 0 ? degree_ - 1 : 0);
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m.e[static_cast<std::size_t>(axis)];
    if (e == 0) continue;
    const std::uint32_t s = F.from_int(e);
    if (s == 0) continue;  // characteristic kills the exponent
    Mono dm = m;
    dm.e[static_cast<std::size_t>(axis)] = e - 1;
    out.add_term(dm, F.mul(c, s));
  }
  return out;
}

BinaryForm Form::restrict_to_line(const std::array<std::uint32_t, 4>& a,
                                  const std::array<std::uint32_t, 4>& b) const {
  const Field& F = *field_;
  bool independent = false;
  for (int i = 0; i < 4 && !independent; ++i)
    for (int j = i + 1; j < 4 && !independent; ++j)
      if (F.sub(F.mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]),
                F.mul(a[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(i)])) != 0)
        independent = true;
  if (!independent) {
    throw std::invalid_argument(
        "restriction needs two distinct points of a line");
  }

  BinaryForm out(field_, degree_);
  std::vector<std::uint32_t> acc, axis_vec, next;
  for (const auto& [m, c] : terms_) {
    acc.assign(1, c);
    for (int i = 0; i < 4; ++i) {
      const std::uint32_t e = m.e[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      const std::uint32_t ai = a[static_cast<std::size_t>(i)];
      const std::uint32_t bi = b[static_cast<std::size_t>(i)];
      axis_vec.assign(e + 1, 0);
      for (std::uint32_t k = 0; k <= e; ++k) {
        // (ai*lam + bi*mu)^e expands with Lucas-reduced binomials
        const std::uint32_t bc = binom_mod_p(e, k, F.p());
        if (bc == 0) continue;
        axis_vec[k] = F.mul(bc, F.mul(F.pow(ai, e - k), F.pow(bi, k)));
      }
      next.assign(acc.size() + e, 0);
      for (std::size_t u = 0; u < acc.size(); ++u) {
        if (acc[u] == 0) continue;
        for (std::uint32_t k = 0; k <= e; ++k) {
          if (axis_vec[k] == 0) continue;
          next[u + k] = F.add(next[u + k], F.mul(acc[u], axis_vec[k]));
        }
      }
      acc.swap(next);
    }
    for (std::size_t k = 0; k < acc.size(); ++k) {
      if (acc[k] != 0) {
        out.set_coeff(static_cast<std::uint32_t>(k),
                      F.add(out.coeff(static_cast<std::uint32_t>(k)), acc[k]));
      }
    }
  }
  return out;
}

Form Form::substituted(const Mat4& M) const {
  const Field& F = *field_;
  TermMap acc;
  const Mono unit{};
  for (const auto& [m, c] : terms_) {
    TermMap running;
    running.emplace(unit, c);
    for (int i = 0; i < 4; ++i) {
      const std::uint32_t e = m.e[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      TermMap linear;
      for (int j = 0; j < 4; ++j) {
        if (M.at(i, j) == 0) continue;
        Mono xm;
        xm.e[static_cast<std::size_t>(j)] = 1;
        linear.emplace(xm, M.at(i, j));
      }
      for (std::uint32_t rep = 0; rep < e && !running.empty(); ++rep) {
        running = map_mul(F, running, linear);
      }
    }
    for (const auto& [mm, cc] : running) map_accumulate(F, acc, mm, cc);
  }
  Form out(field_, degree_);
  for (const auto& [mm, cc] : acc) out.add_term(mm, cc);
  return out;
}

Form Form::transform(const Mat4& M) const {
  if (!mat_inverse(*field_, M)) {
    throw std::invalid_argument("transform needs an invertible matrix");
  }
  return substituted(M);
}

Form Form::scaled(std::uint32_t c) const {
  const Field& F = *field_;
  Form out(field_, degree_);
  if (c == 0) return out;
  for (const auto& [m, cc] : terms_) out.add_term(m, F.mul(cc, c));
  return out;
}

void Form::check_compatible(const Form& other, const char* op) const {
  if (!field_->same_spec(other.field())) {
    throw std::invalid_argument(std::string(op) + ": field mismatch");
  }
}

Form operator+(const Form& f, const Form& g) {
  f.check_compatible(g, "form addition");
  if (f.degree() != g.degree()) {
    throw std::invalid_argument("form addition: degree mismatch");
  }
  Form out = f;
  for (const auto& [m, c] : g.terms_) map_accumulate(*f.field_, out.terms_, m, c);
  return out;
}

Form operator*(const Form& f, const Form& g) {
  f.check_compatible(g, "form multiplication");
  Form out(f.field_, f.degree() + g.degree());
  TermMap prod = map_mul(*f.field_, f.terms_, g.terms_);
  for (const auto& [m, c] : prod) out.add_term(m, c);
  return out;
}

bool operator==(const Form& f, const Form& g) {
  return f.field_->same_spec(*g.field_) && f.degree_ == g.degree_ &&
         f.terms_ == g.terms_;
}

std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first_term = true;
  for (const auto& [m, c] : terms_) {
    if (!first_term) out += " + ";
    first_term = false;
    bool need_star = false;
    if (c != 1 || m.degree() == 0) {
      out += std::to_string(c);
      need_star = true;
    }
    for (int i = 0; i < 4; ++i) {
      const std::uint32_t e = m.e[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      if (need_star) out += "*";
      out += "X" + std::to_string(i);
      if (e > 1) out += "^" + std::to_string(e);
      need_star = true;
    }
  }
  return out;
}

namespace {

struct FormParser {
  std::string_view text;
  std::size_t pos = 0;
  const Field& F;

  explicit FormParser(std::string_view t, const Field& f) : text(t), F(f) {}

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("form parse error at offset " +
                                std::to_string(pos) + ": " + what);
  }
  std::uint64_t read_int() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("expected a number");
    std::uint64_t v = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (v > 100'000'000'000ULL) fail("number too large");
      ++pos;
    }
    return v;
  }

  // primary := INT | 'X' axis ['^' INT]; multiplies into (coeff, mono)
  void read_primary(std::uint32_t& coeff, Mono& mono) {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint64_t v = read_int();
      if (v >= F.q()) fail("coefficient out of [0, q)");
      coeff = F.mul(coeff, static_cast<std::uint32_t>(v));
      return;
    }
    if (c == 'X' || c == 'x') {
      ++pos;
      if (pos >= text.size() || text[pos] < '0' || text[pos] > '3')
        fail("variable index must be 0..3");
      const int axis = text[pos] - '0';
      ++pos;
      std::uint64_t exp = 1;
      if (peek() == '^') {
        ++pos;
        exp = read_int();
      }
      mono.e[static_cast<std::size_t>(axis)] += static_cast<std::uint32_t>(exp);
      return;
    }
    fail("expected a coefficient or a variable");
  }
};

}  // namespace

Form Form::parse(std::string_view text, FieldPtr field) {
  FormParser P(text, *field);
  struct RawTerm {
    Mono m;
    std::uint32_t coeff;
  };
  std::vector<RawTerm> raw;

  bool negate = false;
  if (P.peek() == '+' || P.peek() == '-') {
    negate = P.peek() == '-';
    ++P.pos;
  }
  while (true) {
    std::uint32_t coeff = 1;
    Mono mono{};
    P.read_primary(coeff, mono);
    while (P.peek() == '*') {
      ++P.pos;
      P.read_primary(coeff, mono);
    }
    if (negate) coeff = field->neg(coeff);
    raw.push_back({mono, coeff});

    if (P.done()) break;
    const char s = P.peek();
    if (s != '+' && s != '-') P.fail("expected '+' or '-'");
    negate = s == '-';
    ++P.pos;
  }

  const std::uint32_t degree = raw.front().m.degree();
  for (const auto& t : raw) {
    if (t.m.degree() != degree) {
      throw std::invalid_argument("form is not homogeneous: term of degree " +
                                  std::to_string(t.m.degree()) +
                                  " next to degree " + std::to_string(degree));
    }
  }
  Form out(field, degree);
  for (const auto& t : raw) out.add_term(t.m, t.coeff);
  return out;
}

}  // namespace pg3
