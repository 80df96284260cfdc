#pragma once

// Sparse multivariate polynomials over an exact coefficient ring, kept in a
// canonical form: no zero coefficients, terms in descending graded-lex order.

#include <algorithm>
#include <cctype>
#include <compare>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bsv/coeff.hpp"
#include "bsv/errors.hpp"
#include "bsv/monomial.hpp"

namespace bsv {

/// Degree of a polynomial in one variable. The zero polynomial has degree
/// minus infinity, which is distinct from every finite degree.
class Degree {
 public:
  constexpr explicit Degree(std::uint64_t value) : value_(value) {}
  static constexpr Degree neg_infinity() { return Degree(); }

  constexpr bool is_neg_infinity() const { return !value_.has_value(); }
  std::uint64_t value() const {
    if (!value_) throw DomainError("degree of the zero polynomial has no finite value");
    return *value_;
  }

  constexpr bool operator==(const Degree&) const = default;
  constexpr std::strong_ordering operator<=>(const Degree& o) const {
    if (!value_ || !o.value_) return value_.has_value() <=> o.value_.has_value();
    return *value_ <=> *o.value_;
  }

  std::string to_string() const { return value_ ? std::to_string(*value_) : "-inf"; }

 private:
  constexpr Degree() = default;
  std::optional<std::uint64_t> value_;
};

template <class Ring>
class Polynomial {
 public:
  using ring_type = Ring;
  using coeff_type = typename Ring::value_type;

  struct Term {
    Monomial monomial;
    coeff_type coeff;

    bool operator==(const Term&) const = default;
  };

  Polynomial()
    requires std::default_initializable<Ring>
  = default;

  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const Ring& ring, const coeff_type& c) {
    Polynomial out(ring);
    if (!ring.is_zero(c)) out.terms_.push_back({Monomial{}, c});
    return out;
  }

  template <std::integral I>
  static Polynomial constant(const Ring& ring, I c) {
    return constant(ring, ring.from_int(static_cast<long>(c)));
  }

  static Polynomial variable(const Ring& ring, VarId v, std::uint32_t e = 1) {
    return monomial(ring, Monomial::of(v, e), ring.one());
  }

  static Polynomial monomial(const Ring& ring, Monomial m, const coeff_type& c) {
    Polynomial out(ring);
    if (!ring.is_zero(c)) out.terms_.push_back({std::move(m), c});
    return out;
  }

  /// Builds the canonical form from arbitrary terms: like monomials are
  /// combined, zeros dropped, terms sorted.
  static Polynomial from_terms(const Ring& ring, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.monomial > b.monomial; });
    Polynomial out(ring);
    out.terms_.reserve(terms.size());
    for (auto& t : terms) {
      if (!out.terms_.empty() && out.terms_.back().monomial == t.monomial) {
        out.terms_.back().coeff = ring.add(out.terms_.back().coeff, t.coeff);
      } else {
        if (!out.terms_.empty() && ring.is_zero(out.terms_.back().coeff)) out.terms_.pop_back();
        out.terms_.push_back(std::move(t));
      }
    }
    if (!out.terms_.empty() && ring.is_zero(out.terms_.back().coeff)) out.terms_.pop_back();
    return out;
  }

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

  coeff_type constant_term() const {
    if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
    return ring_.zero();
  }

  coeff_type coefficient(const Monomial& m) const {
    for (const auto& t : terms_) {
      if (t.monomial == m) return t.coeff;
    }
    return ring_.zero();
  }

  Degree degree_in(VarId v) const {
    if (terms_.empty()) return Degree::neg_infinity();
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max<std::uint64_t>(d, t.monomial.exponent(v));
    return Degree(d);
  }

  Degree total_degree() const {
    if (terms_.empty()) return Degree::neg_infinity();
    return Degree(terms_.front().monomial.degree());
  }

  std::vector<VarId> variables() const {
    std::set<VarId> vs;
    for (const auto& t : terms_) {
      for (const auto& f : t.monomial.factors()) vs.insert(f.first);
    }
    return {vs.begin(), vs.end()};
  }

  Polynomial operator-() const {
    Polynomial out(ring_);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.monomial, ring_.neg(t.coeff)});
    return out;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    const Ring& ring = a.ring_;
    if (a.size() == 1 || b.size() == 1) {
      const auto& single = a.size() == 1 ? a.terms_[0] : b.terms_[0];
      const auto& other = a.size() == 1 ? b : a;
      std::vector<Term> out;
      out.reserve(other.size());
      for (const auto& t : other.terms_) {
        coeff_type c = ring.mul(single.coeff, t.coeff);
        if (!ring.is_zero(c)) out.push_back({single.monomial * t.monomial, std::move(c)});
      }
      // multiplying by a monomial preserves the order
      Polynomial p(ring);
      p.terms_ = std::move(out);
      return p;
    }
    std::unordered_map<Monomial, coeff_type, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        auto [it, inserted] = acc.try_emplace(ta.monomial * tb.monomial, ring.zero());
        ring.add_mul(it->second, ta.coeff, tb.coeff);
      }
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc) {
      if (!ring.is_zero(c)) terms.push_back({m, std::move(c)});
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.monomial > y.monomial; });
    Polynomial p(ring);
    p.terms_ = std::move(terms);
    return p;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  bool operator==(const Polynomial& o) const {
    check_same_ring(*this, o);
    return terms_ == o.terms_;
  }

  /// Canonical text, e.g. "3*u21^2*x12 - x11". The zero polynomial is "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      std::string c = ring_.to_string(t.coeff);
      const bool negative = !c.empty() && c[0] == '-';
      if (negative) c.erase(0, 1);
      if (s.empty()) {
        if (negative) s += '-';
      } else {
        s += negative ? " - " : " + ";
      }
      if (t.monomial.is_one()) {
        s += c;
      } else {
        if (c != "1") s += c + "*";
        s += t.monomial.to_string();
      }
    }
    return s;
  }

 private:
  static void check_same_ring(const Polynomial& a, const Polynomial& b) {
    if (!(a.ring_ == b.ring_)) {
      throw DomainError("coefficient rings differ: " + a.ring_.name() + " vs " + b.ring_.name());
    }
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_same_ring(a, b);
    const Ring& ring = a.ring_;
    Polynomial out(ring);
    out.terms_.reserve(a.size() + b.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->monomial > ib->monomial)) {
        out.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->monomial > ia->monomial) {
        out.terms_.push_back({ib->monomial, subtract ? ring.neg(ib->coeff) : ib->coeff});
        ++ib;
      } else {
        coeff_type c = subtract ? ring.sub(ia->coeff, ib->coeff) : ring.add(ia->coeff, ib->coeff);
        if (!ring.is_zero(c)) out.terms_.push_back({ia->monomial, std::move(c)});
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  Ring ring_;
  std::vector<Term> terms_;
};

using IntPoly = Polynomial<IntegerRing>;
using RatPoly = Polynomial<RationalField>;
using FpPoly = Polynomial<PrimeField>;

template <class Ring>
Polynomial<Ring> pow(const Polynomial<Ring>& base, std::uint64_t e) {
  Polynomial<Ring> acc = Polynomial<Ring>::constant(base.ring(), base.ring().one());
  Polynomial<Ring> b = base;
  while (e > 0) {
    if (e & 1U) acc = acc * b;
    e >>= 1U;
    if (e > 0) b = b * b;
  }
  return acc;
}

template <class Ring>
Polynomial<Ring> scale(const Polynomial<Ring>& f, const typename Ring::value_type& c) {
  return f * Polynomial<Ring>::constant(f.ring(), c);
}

/// f with v replaced by the constant c.
template <class Ring>
Polynomial<Ring> substitute(const Polynomial<Ring>& f, VarId v, const typename Ring::value_type& c) {
  const Ring& ring = f.ring();
  std::vector<typename Polynomial<Ring>::Term> out;
  out.reserve(f.size());
  std::vector<typename Ring::value_type> powers{ring.one()};
  for (const auto& t : f.terms()) {
    const std::uint32_t e = t.monomial.exponent(v);
    if (e == 0) {
      out.push_back(t);
      continue;
    }
    while (powers.size() <= e) powers.push_back(ring.mul(powers.back(), c));
    out.push_back({t.monomial.with_exponent(v, 0), ring.mul(t.coeff, powers[e])});
  }
  return Polynomial<Ring>::from_terms(ring, std::move(out));
}

template <class Ring, std::integral I>
  requires(!std::same_as<I, typename Ring::value_type>)
Polynomial<Ring> substitute(const Polynomial<Ring>& f, VarId v, I c) {
  return substitute(f, v, f.ring().from_int(static_cast<long>(c)));
}

/// f / v. Throws NotDivisible naming the first term of f free of v.
template <class Ring>
Polynomial<Ring> divide_by_variable(const Polynomial<Ring>& f, VarId v) {
  std::vector<typename Polynomial<Ring>::Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    const std::uint32_t e = t.monomial.exponent(v);
    if (e == 0) {
      throw NotDivisible(Polynomial<Ring>::monomial(f.ring(), t.monomial, t.coeff).to_string());
    }
    out.push_back({t.monomial.with_exponent(v, e - 1), t.coeff});
  }
  return Polynomial<Ring>::from_terms(f.ring(), std::move(out));
}

/// Exact quotient f / g by leading-term reduction. Throws NotDivisible when
/// g does not divide f.
template <class Ring>
Polynomial<Ring> exact_divide(const Polynomial<Ring>& f, const Polynomial<Ring>& g) {
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  const Ring& ring = f.ring();
  if (g.is_constant()) {
    const auto& c = g.terms().front().coeff;
    std::vector<typename Polynomial<Ring>::Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) out.push_back({t.monomial, ring.div_exact(t.coeff, c)});
    return Polynomial<Ring>::from_terms(ring, std::move(out));
  }
  const auto& lead = g.terms().front();
  Polynomial<Ring> q(ring);
  Polynomial<Ring> rem = f;
  while (!rem.is_zero()) {
    const auto& r = rem.terms().front();
    if (!divides(lead.monomial, r.monomial)) {
      throw NotDivisible(Polynomial<Ring>::monomial(ring, r.monomial, r.coeff).to_string());
    }
    typename Ring::value_type c;
    try {
      c = ring.div_exact(r.coeff, lead.coeff);
    } catch (const NotDivisible&) {
      throw NotDivisible(Polynomial<Ring>::monomial(ring, r.monomial, r.coeff).to_string());
    }
    auto step = Polynomial<Ring>::monomial(ring, quotient(r.monomial, lead.monomial), c);
    q += step;
    rem -= step * g;
  }
  return q;
}

namespace detail {

inline std::uint64_t to_fp(const PrimeField& field, const mpz_class& c) { return field.from_integer(c); }
inline std::uint64_t to_fp(const PrimeField& field, const mpq_class& c) { return field.from_rational(c); }

}  // namespace detail

/// Coefficients of f mapped into F_p; integer and rational coefficients are
/// reduced, F_p coefficients must already live in the same field.
template <class Ring>
FpPoly to_prime_field(const Polynomial<Ring>& f, const PrimeField& field) {
  if constexpr (std::same_as<Ring, PrimeField>) {
    if (!(f.ring() == field)) {
      throw DomainError("cannot map " + f.ring().name() + " into " + field.name());
    }
    return f;
  } else {
    std::vector<FpPoly::Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) out.push_back({t.monomial, detail::to_fp(field, t.coeff)});
    return FpPoly::from_terms(field, std::move(out));
  }
}

inline FpPoly reduce_mod_p(const IntPoly& f, std::uint64_t p) { return to_prime_field(f, PrimeField(p)); }

inline RatPoly to_rational(const IntPoly& f) {
  std::vector<RatPoly::Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({t.monomial, mpq_class(t.coeff)});
  return RatPoly::from_terms(RationalField{}, std::move(out));
}

using Point = std::map<VarId, std::uint64_t>;

/// Value of f at point over F_p. Every variable of f must be assigned.
template <class Ring>
std::uint64_t evaluate(const Polynomial<Ring>& f, const Point& point, std::uint64_t p) {
  const PrimeField field(p);
  std::uint64_t acc = 0;
  for (const auto& t : f.terms()) {
    std::uint64_t c;
    if constexpr (std::same_as<Ring, PrimeField>) {
      if (!(f.ring() == field)) throw DomainError("cannot evaluate " + f.ring().name() + " over " + field.name());
      c = t.coeff;
    } else {
      c = detail::to_fp(field, t.coeff);
    }
    for (const auto& [v, e] : t.monomial.factors()) {
      auto it = point.find(v);
      if (it == point.end()) throw EvaluationError("variable " + v.name() + " is not assigned");
      c = field.mul(c, field.pow(it->second % p, e));
    }
    acc = field.add(acc, c);
  }
  return acc;
}

namespace detail {

template <class Ring>
class PolyParser {
 public:
  PolyParser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  Polynomial<Ring> parse() {
    auto p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  using Poly = Polynomial<Ring>;

  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what +
                      " in '" + std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    skip();
    bool negate = false;
    if (eat('-')) {
      negate = true;
    } else {
      eat('+');
    }
    Poly acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }

  std::uint64_t exponent() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 9) fail("bad exponent");
    return std::stoull(std::string(text_.substr(start, pos_ - start)));
  }

  Poly factor() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    Poly base(ring_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!eat(')')) fail("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
        ++pos_;
      }
      base = Poly::constant(ring_, ring_.parse(text_.substr(start, pos_ - start)));
    } else if (c == 'u' || c == 'x') {
      const std::size_t start = pos_++;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      base = Poly::variable(ring_, VarId::parse(text_.substr(start, pos_ - start)));
    } else {
      fail("unexpected '" + std::string(1, c) + "'");
    }
    if (eat('^')) return pow(base, exponent());
    return base;
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Inverse of Polynomial::to_string; also accepts parentheses and powers of
/// parenthesized expressions.
template <class Ring>
Polynomial<Ring> parse_polynomial(std::string_view text, const Ring& ring = Ring{}) {
  return detail::PolyParser<Ring>(text, ring).parse();
}

}  // namespace bsv
