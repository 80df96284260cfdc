#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bsv/errors.hpp"

namespace bsv {

enum class VarKind : std::uint8_t { G = 0, X = 1 };

/// A coordinate of the chart U^- x b: u_ij (i > j) is an entry of the
/// lower unitriangular g, x_ij (i <= j) an entry of the upper triangular X.
/// The member order makes the defaulted comparison the canonical variable
/// order: all u's row-major, then all x's row-major.
class VarId {
 public:
  static VarId g(int i, int j) {
    if (j < 1 || i <= j || i > 255) {
      throw DomainError("u" + std::to_string(i) + "_" + std::to_string(j) +
                        " needs i > j >= 1");
    }
    return VarId(VarKind::G, i, j);
  }

  static VarId x(int i, int j) {
    if (i < 1 || j < i || j > 255) {
      throw DomainError("x" + std::to_string(i) + "_" + std::to_string(j) +
                        " needs 1 <= i <= j");
    }
    return VarId(VarKind::X, i, j);
  }

  /// Accepts "u21", "x13" and the long form "x10_12".
  static VarId parse(std::string_view text) {
    auto fail = [&] { return DomainError("bad variable name '" + std::string(text) + "'"); };
    if (text.size() < 3 || (text[0] != 'u' && text[0] != 'x')) throw fail();
    const std::string_view digits = text.substr(1);
    int i = 0;
    int j = 0;
    if (const auto us = digits.find('_'); us != std::string_view::npos) {
      auto a = digits.substr(0, us);
      auto b = digits.substr(us + 1);
      if (a.empty() || b.empty() || a.size() > 3 || b.size() > 3) throw fail();
      for (char c : a) {
        if (c < '0' || c > '9') throw fail();
        i = i * 10 + (c - '0');
      }
      for (char c : b) {
        if (c < '0' || c > '9') throw fail();
        j = j * 10 + (c - '0');
      }
    } else {
      if (digits.size() != 2 || digits[0] < '0' || digits[0] > '9' || digits[1] < '0' ||
          digits[1] > '9') {
        throw fail();
      }
      i = digits[0] - '0';
      j = digits[1] - '0';
    }
    return text[0] == 'u' ? g(i, j) : x(i, j);
  }

  VarKind kind() const { return kind_; }
  int i() const { return i_; }
  int j() const { return j_; }

  bool valid_for(int n) const { return i_ <= n && j_ <= n; }

  std::string name() const {
    const char prefix = kind_ == VarKind::G ? 'u' : 'x';
    if (i_ < 10 && j_ < 10) {
      return std::string{prefix, static_cast<char>('0' + i_), static_cast<char>('0' + j_)};
    }
    return prefix + std::to_string(i_) + "_" + std::to_string(j_);
  }

  auto operator<=>(const VarId&) const = default;

 private:
  VarId(VarKind kind, int i, int j)
      : kind_(kind), i_(static_cast<std::uint8_t>(i)), j_(static_cast<std::uint8_t>(j)) {}

  VarKind kind_;
  std::uint8_t i_;
  std::uint8_t j_;
};

/// Product of variables with positive exponents, kept sorted by VarId.
class Monomial {
 public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;

  explicit Monomial(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    for (const auto& [v, e] : factors) {
      if (e == 0) continue;
      if (!factors_.empty() && factors_.back().first == v) {
        factors_.back().second += e;
      } else {
        factors_.emplace_back(v, e);
      }
      degree_ += e;
    }
  }

  static Monomial of(VarId v, std::uint32_t e = 1) { return Monomial({{v, e}}); }

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint64_t degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }

  std::uint32_t exponent(VarId v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                               [](const Factor& f, VarId key) { return f.first < key; });
    return (it != factors_.end() && it->first == v) ? it->second : 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto ia = a.factors_.begin();
    auto ib = b.factors_.begin();
    while (ia != a.factors_.end() || ib != b.factors_.end()) {
      if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
        out.factors_.push_back(*ia++);
      } else if (ia == a.factors_.end() || ib->first < ia->first) {
        out.factors_.push_back(*ib++);
      } else {
        out.factors_.emplace_back(ia->first, ia->second + ib->second);
        ++ia;
        ++ib;
      }
    }
    out.degree_ = a.degree_ + b.degree_;
    return out;
  }

  /// Copy with the exponent of v replaced by e.
  Monomial with_exponent(VarId v, std::uint32_t e) const {
    std::vector<Factor> fs;
    fs.reserve(factors_.size() + 1);
    for (const auto& f : factors_) {
      if (f.first != v) fs.push_back(f);
    }
    fs.emplace_back(v, e);
    return Monomial(std::move(fs));
  }

  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& [v, e] : factors_) {
      if (!s.empty()) s += '*';
      s += v.name();
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

  /// Graded lexicographic order: total degree first, then the first
  /// variable (in VarId order) whose exponents differ decides.
  std::strong_ordering operator<=>(const Monomial& o) const {
    if (auto c = degree_ <=> o.degree_; c != 0) return c;
    auto ia = factors_.begin();
    auto ib = o.factors_.begin();
    for (; ia != factors_.end() && ib != o.factors_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) {
        return ia->first < ib->first ? std::strong_ordering::greater
                                     : std::strong_ordering::less;
      }
      if (ia->second != ib->second) return ia->second <=> ib->second;
    }
    if (ia != factors_.end()) return std::strong_ordering::greater;
    if (ib != o.factors_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& [v, e] : factors_) {
      const std::size_t k = (static_cast<std::size_t>(v.kind()) << 48) ^
                            (static_cast<std::size_t>(v.i()) << 40) ^
                            (static_cast<std::size_t>(v.j()) << 32) ^ e;
      h = (h ^ k) * 0x100000001b3ULL;
    }
    return h;
  }

 private:
  std::vector<Factor> factors_;
  std::uint64_t degree_ = 0;
};

/// True when a divides b.
inline bool divides(const Monomial& a, const Monomial& b) {
  for (const auto& [v, e] : a.factors()) {
    if (b.exponent(v) < e) return false;
  }
  return true;
}

/// b / a; requires divides(a, b).
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  if (!divides(a, b)) {
    throw DomainError("monomial " + a.to_string() + " does not divide " + b.to_string());
  }
  std::vector<Monomial::Factor> fs;
  fs.reserve(b.factors().size());
  for (const auto& [v, e] : b.factors()) {
    const std::uint32_t d = a.exponent(v);
    if (e > d) fs.emplace_back(v, e - d);
  }
  return Monomial(std::move(fs));
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace bsv
