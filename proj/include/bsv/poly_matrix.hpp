#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bsv/errors.hpp"
#include "bsv/polynomial.hpp"

namespace bsv {

/// Dense matrix of polynomials over one coefficient ring. Indices are 0-based.
template <class Ring>
class PolyMatrix {
 public:
  using Poly = Polynomial<Ring>;

  PolyMatrix(std::size_t rows, std::size_t cols, const Ring& ring = Ring{})
      : rows_(rows), cols_(cols), ring_(ring), entries_(rows * cols, Poly(ring)) {
    if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be positive");
  }

  static PolyMatrix identity(std::size_t n, const Ring& ring = Ring{}) {
    PolyMatrix m(n, n, ring);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = Poly::constant(ring, ring.one());
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Ring& ring() const { return ring_; }

  Poly& operator()(std::size_t r, std::size_t c) { return entries_.at(r * cols_ + c); }
  const Poly& operator()(std::size_t r, std::size_t c) const { return entries_.at(r * cols_ + c); }

  /// Rows [0, nrows) and columns [0, ncols).
  PolyMatrix leading(std::size_t nrows, std::size_t ncols) const {
    if (nrows > rows_ || ncols > cols_) throw DomainError("leading block larger than matrix");
    PolyMatrix out(nrows, ncols, ring_);
    for (std::size_t r = 0; r < nrows; ++r) {
      for (std::size_t c = 0; c < ncols; ++c) out(r, c) = (*this)(r, c);
    }
    return out;
  }

  PolyMatrix select(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    PolyMatrix out(rs.size(), cs.size(), ring_);
    for (std::size_t r = 0; r < rs.size(); ++r) {
      for (std::size_t c = 0; c < cs.size(); ++c) out(r, c) = (*this)(rs[r], cs[c]);
    }
    return out;
  }

  bool is_zero() const {
    for (const auto& e : entries_) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix size mismatch in sum");
    PolyMatrix out(a.rows_, a.cols_, a.ring_);
    for (std::size_t k = 0; k < a.entries_.size(); ++k) out.entries_[k] = a.entries_[k] + b.entries_[k];
    return out;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix size mismatch in product");
    PolyMatrix out(a.rows_, b.cols_, a.ring_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t c = 0; c < b.cols_; ++c) {
        Poly acc(a.ring_);
        for (std::size_t k = 0; k < a.cols_; ++k) {
          if (a(r, k).is_zero() || b(k, c).is_zero()) continue;
          acc += a(r, k) * b(k, c);
        }
        out(r, c) = std::move(acc);
      }
    }
    return out;
  }

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      s += r ? ", [" : "[";
      for (std::size_t c = 0; c < cols_; ++c) {
        if (c) s += ", ";
        s += (*this)(r, c).to_string();
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  Ring ring_;
  std::vector<Poly> entries_;
};

using IntMatrix = PolyMatrix<IntegerRing>;

enum class Triangle { lower, upper };

/// Whether A is square with ones on the diagonal and zeros on the other side.
template <class Ring>
bool is_unitriangular(const PolyMatrix<Ring>& a, Triangle side) {
  if (a.rows() != a.cols()) return false;
  const auto one = Polynomial<Ring>::constant(a.ring(), a.ring().one());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r == c && !(a(r, c) == one)) return false;
      const bool off_side = side == Triangle::lower ? c > r : c < r;
      if (off_side && !a(r, c).is_zero()) return false;
    }
  }
  return true;
}

/// Exact inverse of a lower or upper unitriangular matrix by substitution;
/// no division is needed, so entries stay polynomial.
template <class Ring>
PolyMatrix<Ring> invert_unitriangular(const PolyMatrix<Ring>& a) {
  const bool lower = is_unitriangular(a, Triangle::lower);
  if (!lower && !is_unitriangular(a, Triangle::upper)) {
    throw DomainError("matrix is not unitriangular");
  }
  const std::size_t n = a.rows();
  auto inv = PolyMatrix<Ring>::identity(n, a.ring());
  if (lower) {
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t c = 0; c < r; ++c) {
        Polynomial<Ring> acc(a.ring());
        for (std::size_t k = c; k < r; ++k) acc += a(r, k) * inv(k, c);
        inv(r, c) = -acc;
      }
    }
  } else {
    for (std::size_t c = 1; c < n; ++c) {
      for (std::size_t r = c; r-- > 0;) {
        Polynomial<Ring> acc(a.ring());
        for (std::size_t k = r + 1; k <= c; ++k) acc += a(r, k) * inv(k, c);
        inv(r, c) = -acc;
      }
    }
  }
  return inv;
}

/// Laplace expansion along the first row, memoized on the set of columns
/// still available (one entry per column subset).
template <class Ring>
Polynomial<Ring> determinant_cofactor(const PolyMatrix<Ring>& a) {
  if (a.rows() != a.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n > 20) throw CapacityError("cofactor expansion limited to 20x20");
  using Poly = Polynomial<Ring>;
  // minors[mask] = det of rows [n - popcount(mask), n) restricted to the columns in mask
  std::map<std::uint32_t, Poly> minors;
  minors.emplace(0U, Poly::constant(a.ring(), a.ring().one()));
  for (std::size_t size = 1; size <= n; ++size) {
    std::map<std::uint32_t, Poly> next;
    const std::size_t row = n - size;
    for (const auto& [mask, sub] : minors) {
      if (sub.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (mask & (1U << c)) continue;
        if (a(row, c).is_zero()) continue;
        const std::uint32_t grown = mask | (1U << c);
        // sign: number of chosen columns left of c
        int below = 0;
        for (std::size_t k = 0; k < c; ++k) below += (mask >> k) & 1U;
        Poly term = a(row, c) * sub;
        auto [it, inserted] = next.try_emplace(grown, Poly(a.ring()));
        if (below % 2 == 0) {
          it->second += term;
        } else {
          it->second -= term;
        }
      }
    }
    minors = std::move(next);
  }
  const std::uint32_t all = n == 32 ? ~0U : ((1U << n) - 1U);
  auto it = minors.find(all);
  return it == minors.end() ? Poly(a.ring()) : it->second;
}

/// Fraction-free (Bareiss) elimination; every division is exact.
template <class Ring>
Polynomial<Ring> determinant_bareiss(PolyMatrix<Ring> a) {
  if (a.rows() != a.cols()) throw DomainError("determinant of a non-square matrix");
  using Poly = Polynomial<Ring>;
  const std::size_t n = a.rows();
  Poly prev = Poly::constant(a.ring(), a.ring().one());
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k).is_zero()) ++swap;
      if (swap == n) return Poly(a.ring());
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
      negate = !negate;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c < n; ++c) {
        Poly num = a(k, k) * a(r, c) - a(r, k) * a(k, c);
        a(r, c) = exact_divide(num, prev);
      }
      a(r, k) = Poly(a.ring());
    }
    prev = a(k, k);
  }
  Poly det = a(n - 1, n - 1);
  return negate ? -det : det;
}

/// Cofactor expansion up to 4x4, Bareiss elimination above.
template <class Ring>
Polynomial<Ring> determinant(const PolyMatrix<Ring>& a) {
  if (a.rows() != a.cols()) throw DomainError("determinant of a non-square matrix");
  return a.rows() <= 4 ? determinant_cofactor(a) : determinant_bareiss(a);
}

// ---- dense F_p helpers used by randomized checks ----

using FpMatrix = std::vector<std::vector<std::uint64_t>>;

template <class Ring>
FpMatrix evaluate(const PolyMatrix<Ring>& a, const Point& point, std::uint64_t p) {
  FpMatrix out(a.rows(), std::vector<std::uint64_t>(a.cols(), 0));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out[r][c] = evaluate(a(r, c), point, p);
  }
  return out;
}

inline std::size_t rank_mod_p(FpMatrix m, std::uint64_t p) {
  const PrimeField f(p);
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const std::uint64_t inv = f.inverse(m[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const std::uint64_t factor = f.mul(m[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) m[r][k] = f.sub(m[r][k], f.mul(factor, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

inline std::uint64_t det_mod_p(FpMatrix m, std::uint64_t p) {
  const PrimeField f(p);
  const std::size_t n = m.size();
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = f.neg(det);
    }
    det = f.mul(det, m[c][c]);
    const std::uint64_t inv = f.inverse(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const std::uint64_t factor = f.mul(m[r][c], inv);
      for (std::size_t k = c; k < n; ++k) m[r][k] = f.sub(m[r][k], f.mul(factor, m[c][k]));
    }
  }
  return det;
}

inline FpMatrix multiply_mod_p(const FpMatrix& a, const FpMatrix& b, std::uint64_t p) {
  const PrimeField f(p);
  FpMatrix out(a.size(), std::vector<std::uint64_t>(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[r][k] == 0) continue;
      for (std::size_t c = 0; c < b[k].size(); ++c) out[r][c] = f.add(out[r][c], f.mul(a[r][k], b[k][c]));
    }
  }
  return out;
}

/// General inverse over F_p by Gauss-Jordan; throws on a singular matrix.
inline FpMatrix inverse_mod_p(FpMatrix m, std::uint64_t p) {
  const PrimeField f(p);
  const std::size_t n = m.size();
  FpMatrix inv(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t k = 0; k < n; ++k) inv[k][k] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw EvaluationError("singular matrix mod " + std::to_string(p));
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    const std::uint64_t s = f.inverse(m[c][c]);
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] = f.mul(m[c][k], s);
      inv[c][k] = f.mul(inv[c][k], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const std::uint64_t factor = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] = f.sub(m[r][k], f.mul(factor, m[c][k]));
        inv[r][k] = f.sub(inv[r][k], f.mul(factor, inv[c][k]));
      }
    }
  }
  return inv;
}

// ---- rank over the fraction field ----

enum class RankMode { symbolic, randomized };

struct RankOptions {
  RankMode mode = RankMode::symbolic;
  int trials = 20;
  std::uint64_t prime = 2147483647ULL;  // 2^31 - 1
  std::uint64_t seed = 0;
};

struct RankResult {
  std::size_t rank = 0;
  /// Symbolic mode: rows/columns of a nonzero rank x rank minor.
  std::vector<std::size_t> witness_rows;
  std::vector<std::size_t> witness_cols;
  /// Randomized mode: index of the trial reaching the reported rank.
  std::optional<int> witness_trial;
};

namespace detail {

inline void for_each_subset(std::size_t n, std::size_t k, const auto& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Rank over the fraction field. Symbolic mode searches for the largest
/// nonzero minor and is exact. Randomized mode evaluates at random points of
/// F_p^vars and reports the largest rank seen, a lower bound that is exact
/// with probability at least 1 - trials * deg / p.
template <class Ring>
RankResult symbolic_rank(const PolyMatrix<Ring>& a, const RankOptions& opts = {}) {
  RankResult result;
  if (opts.mode == RankMode::symbolic) {
    const std::size_t max_k = std::min(a.rows(), a.cols());
    for (std::size_t k = 1; k <= max_k; ++k) {
      bool found = false;
      detail::for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rs) {
        detail::for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cs) {
          if (!determinant(a.select(rs, cs)).is_zero()) {
            result.rank = k;
            result.witness_rows = rs;
            result.witness_cols = cs;
            found = true;
          }
          return found;
        });
        return found;
      });
      // every (k+1)-minor expands into k-minors, so none can be nonzero now
      if (!found) break;
    }
    return result;
  }
  std::set<VarId> vars;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      for (const auto& v : a(r, c).variables()) vars.insert(v);
    }
  }
  std::mt19937_64 rng(opts.seed);
  for (int t = 0; t < opts.trials; ++t) {
    Point point;
    for (const auto& v : vars) point[v] = rng() % opts.prime;
    const std::size_t rk = rank_mod_p(evaluate(a, point, opts.prime), opts.prime);
    if (!result.witness_trial || rk > result.rank) {
      result.rank = rk;
      result.witness_trial = t;
    }
  }
  return result;
}

}  // namespace bsv
