#pragma once

// Coefficient rings for exact polynomial arithmetic: the integers, the
// rationals (both GMP-backed) and prime fields F_p with p < 2^63.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "bsv/errors.hpp"

namespace bsv {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

inline mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

/// Residue of z modulo p in [0, p).
inline std::uint64_t mod_u64(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), to_mpz(p).get_mpz_t());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

struct IntegerRing {
  using value_type = mpz_class;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const { return v; }
  value_type from_integer(const mpz_class& v) const { return v; }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  void add_mul(value_type& acc, const value_type& a, const value_type& b) const {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }

  /// a / b, or throws NotDivisible when b does not divide a in ZZ.
  value_type div_exact(const value_type& a, const value_type& b) const {
    if (sgn(b) == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) {
      throw NotDivisible(a.get_str() + " / " + b.get_str());
    }
    value_type q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }

  value_type parse(std::string_view text) const {
    value_type v;
    if (text.empty() || v.set_str(std::string(text), 10) != 0) {
      throw DomainError("bad integer literal '" + std::string(text) + "'");
    }
    return v;
  }

  std::string to_string(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "ZZ"; }

  bool operator==(const IntegerRing&) const = default;
};

struct RationalField {
  using value_type = mpq_class;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const { return v; }
  value_type from_integer(const mpz_class& v) const { return mpq_class(v); }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  void add_mul(value_type& acc, const value_type& a, const value_type& b) const { acc += a * b; }

  value_type div_exact(const value_type& a, const value_type& b) const {
    if (sgn(b) == 0) throw NotDivisible(a.get_str() + " / 0");
    return a / b;
  }

  value_type parse(std::string_view text) const {
    value_type v;
    if (text.empty() || v.set_str(std::string(text), 10) != 0 || sgn(v.get_den()) == 0) {
      throw DomainError("bad rational literal '" + std::string(text) + "'");
    }
    v.canonicalize();
    return v;
  }

  std::string to_string(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "QQ"; }

  bool operator==(const RationalField&) const = default;
};

/// F_p for a prime p < 2^63. Values are kept reduced in [0, p).
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 63) || !is_prime(p)) {
      throw DomainError("modulus " + std::to_string(p) + " is not a supported prime");
    }
  }

  std::uint64_t characteristic() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const {
    long long r = static_cast<long long>(v) % static_cast<long long>(p_);
    return r < 0 ? static_cast<value_type>(r + static_cast<long long>(p_)) : static_cast<value_type>(r);
  }
  value_type from_integer(const mpz_class& v) const { return mod_u64(v, p_); }
  value_type from_rational(const mpq_class& v) const {
    const value_type den = mod_u64(v.get_den(), p_);
    if (den == 0) {
      throw EvaluationError("denominator " + v.get_den().get_str() + " vanishes mod " +
                            std::to_string(p_));
    }
    return mul(mod_u64(v.get_num(), p_), inverse(den));
  }

  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    const value_type s = a + b;
    return (s >= p_ || s < a) ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  void add_mul(value_type& acc, value_type a, value_type b) const { acc = add(acc, mul(a, b)); }

  value_type pow(value_type base, std::uint64_t e) const {
    value_type acc = 1;
    while (e > 0) {
      if (e & 1U) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return acc;
  }

  value_type inverse(value_type a) const {
    if (a == 0) throw EvaluationError("inverse of 0 in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
  }

  value_type div_exact(value_type a, value_type b) const {
    if (b == 0) throw NotDivisible(std::to_string(a) + " / 0");
    return mul(a, inverse(b));
  }

  value_type parse(std::string_view text) const {
    RationalField q;
    return from_rational(q.parse(text));
  }

  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

}  // namespace bsv
