#pragma once

// Order ideals of the index poset [1,n] x [1,n] with
//   (i,j) <= (r,s)  iff  i >= r and j <= s,
// the coordinate subspaces b[S] of the upper triangular matrices they cut
// out, and Lie / B-stability checks for those subspaces.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bsv/coeff.hpp"
#include "bsv/errors.hpp"

namespace bsv {

/// 1-based matrix position; the defaulted order is row-major.
struct Position {
  int i = 1;
  int j = 1;

  bool upper() const { return i <= j; }
  bool valid_for(int n) const { return i >= 1 && j >= 1 && i <= n && j <= n; }
  auto operator<=>(const Position&) const = default;

  std::string to_string() const { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }
};

/// The order relation in use. `row_flipped` reverses the row inequality and
/// exists only to check that the verifier notices a wrong order.
enum class Order { dominance, row_flipped };

inline bool leq(Position a, Position b, Order order = Order::dominance) {
  if (order == Order::row_flipped) return a.i <= b.i && a.j <= b.j;
  return a.i >= b.i && a.j <= b.j;
}

inline bool is_ideal(std::span<const Position> members, int n, Order order = Order::dominance) {
  const std::set<Position> set(members.begin(), members.end());
  for (const auto& m : set) {
    if (!m.valid_for(n)) {
      throw DomainError("position " + m.to_string() + " outside [1," + std::to_string(n) + "]^2");
    }
  }
  for (const auto& m : set) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const Position q{i, j};
        if (leq(q, m, order) && !set.contains(q)) return false;
      }
    }
  }
  return true;
}

/// A downward-closed subset S of [1,n]^2. Members are kept sorted row-major.
class PosetIdeal {
 public:
  PosetIdeal(int n, std::vector<Position> members, Order order = Order::dominance) : n_(n) {
    if (n < 1) throw DomainError("matrix size must be >= 1");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!is_ideal(members, n, order)) throw DomainError("not an order ideal: " + format(members));
    members_ = std::move(members);
  }

  static PosetIdeal empty(int n) { return PosetIdeal(n, {}); }

  static PosetIdeal full(int n) {
    std::vector<Position> all;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) all.push_back({i, j});
    }
    return PosetIdeal(n, std::move(all));
  }

  static PosetIdeal strict_lower(int n) {
    std::vector<Position> lower;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j < i; ++j) lower.push_back({i, j});
    }
    return PosetIdeal(n, std::move(lower));
  }

  int n() const { return n_; }
  const std::vector<Position>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Position p) const { return std::binary_search(members_.begin(), members_.end(), p); }

  /// Members with i <= j.
  std::vector<Position> upper_members() const {
    std::vector<Position> out;
    for (const auto& m : members_) {
      if (m.upper()) out.push_back(m);
    }
    return out;
  }

  PosetIdeal without(Position p, Order order = Order::dominance) const {
    std::vector<Position> rest;
    for (const auto& m : members_) {
      if (m != p) rest.push_back(m);
    }
    return PosetIdeal(n_, std::move(rest), order);
  }

  PosetIdeal with(Position p, Order order = Order::dominance) const {
    auto more = members_;
    more.push_back(p);
    return PosetIdeal(n_, std::move(more), order);
  }

  bool operator==(const PosetIdeal&) const = default;

  /// Canonical order: by n, then size, then lexicographically on members.
  std::strong_ordering operator<=>(const PosetIdeal& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    if (auto c = members_.size() <=> o.members_.size(); c != 0) return c;
    return members_ <=> o.members_;
  }

  /// "[[2,1],[1,1]]" style member list, row-major.
  std::string to_string() const { return format(members_); }

 private:
  static std::string format(const std::vector<Position>& ps) {
    std::string s = "[";
    for (std::size_t k = 0; k < ps.size(); ++k) {
      if (k) s += ",";
      s += "[" + std::to_string(ps[k].i) + "," + std::to_string(ps[k].j) + "]";
    }
    return s + "]";
  }

  int n_;
  std::vector<Position> members_;
};

/// All order ideals of [1,n]^2 in canonical order. Brute force over subsets
/// for n <= 3, growth by single admissible elements above that.
inline std::vector<PosetIdeal> enumerate_ideals(int n, Order order = Order::dominance, int max_n = 5) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (n > max_n) {
    throw CapacityError("ideal enumeration for n=" + std::to_string(n) + " exceeds cap " +
                        std::to_string(max_n));
  }
  std::vector<Position> all;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) all.push_back({i, j});
  }
  std::vector<PosetIdeal> out;
  if (n <= 3) {
    const std::uint32_t count = 1U << all.size();
    std::vector<Position> subset;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      subset.clear();
      for (std::size_t k = 0; k < all.size(); ++k) {
        if (mask & (1U << k)) subset.push_back(all[k]);
      }
      if (is_ideal(subset, n, order)) out.emplace_back(n, subset, order);
    }
  } else {
    std::set<std::vector<Position>> seen{{}};
    std::vector<std::vector<Position>> frontier{{}};
    while (!frontier.empty()) {
      std::vector<std::vector<Position>> next;
      for (const auto& s : frontier) {
        const std::set<Position> members(s.begin(), s.end());
        for (const auto& cand : all) {
          if (members.contains(cand)) continue;
          bool admissible = true;
          for (const auto& q : all) {
            if (q != cand && leq(q, cand, order) && !members.contains(q)) {
              admissible = false;
              break;
            }
          }
          if (!admissible) continue;
          auto grown = s;
          grown.insert(std::upper_bound(grown.begin(), grown.end(), cand), cand);
          if (seen.insert(grown).second) next.push_back(std::move(grown));
        }
      }
      frontier = std::move(next);
    }
    for (const auto& s : seen) out.emplace_back(n, s, order);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Members of S with no strictly larger member, row-major.
inline std::vector<Position> maximal_elements(const PosetIdeal& s, Order order = Order::dominance) {
  std::vector<Position> out;
  for (const auto& a : s.members()) {
    const bool dominated = std::any_of(s.members().begin(), s.members().end(), [&](const Position& b) {
      return b != a && leq(a, b, order);
    });
    if (!dominated) out.push_back(a);
  }
  return out;
}

/// Level of an upper position: r = s + n - t.
inline int level(Position p, int n) { return p.i + n - p.j; }

struct PeelStep {
  Position position;
  int r = 0;

  bool operator==(const PeelStep&) const = default;
};

/// Removes maximal elements (s,t) with s <= t one at a time, smallest level
/// r = s+n-t first and row-major among equal levels, until only members
/// with i > j remain.
inline std::vector<PeelStep> peel_sequence(const PosetIdeal& s, Order order = Order::dominance) {
  if (!is_ideal(s.members(), s.n(), order)) throw DomainError("not an order ideal: " + s.to_string());
  std::vector<PeelStep> out;
  PosetIdeal current = s;
  while (true) {
    std::optional<PeelStep> best;
    for (const auto& m : maximal_elements(current, order)) {
      if (!m.upper()) continue;
      const PeelStep step{m, level(m, s.n())};
      if (!best || step.r < best->r || (step.r == best->r && step.position < best->position)) best = step;
    }
    if (!best) break;
    out.push_back(*best);
    current = current.without(best->position, order);
  }
  return out;
}

/// Ideal part of S left after peel_sequence.
inline PosetIdeal peel_remainder(const PosetIdeal& s, Order order = Order::dominance) {
  PosetIdeal current = s;
  for (const auto& step : peel_sequence(s, order)) current = current.without(step.position, order);
  return current;
}

/// Block sizes of a standard parabolic subgroup of GL_n.
class BlockComposition {
 public:
  explicit BlockComposition(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw DomainError("block composition must be non-empty");
    for (int b : sizes_) {
      if (b < 1) throw DomainError("block sizes must be >= 1");
      n_ += b;
    }
  }

  int n() const { return n_; }
  const std::vector<int>& sizes() const { return sizes_; }

  /// 0-based index of the block containing row/column k (1-based).
  int block_of(int k) const {
    int end = 0;
    for (std::size_t b = 0; b < sizes_.size(); ++b) {
      end += sizes_[b];
      if (k <= end) return static_cast<int>(b);
    }
    throw DomainError("index " + std::to_string(k) + " outside the composition");
  }

 private:
  std::vector<int> sizes_;
  int n_ = 0;
};

/// S whose b[S] is the nilradical n_P of the standard parabolic with the
/// given blocks: everything strictly below the diagonal plus the upper part
/// of each diagonal block.
inline PosetIdeal parabolic_to_ideal(const BlockComposition& blocks) {
  const int n = blocks.n();
  std::vector<Position> members;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i > j || blocks.block_of(i) == blocks.block_of(j)) members.push_back({i, j});
    }
  }
  return PosetIdeal(n, std::move(members));
}

/// Coordinates of b[S]: positions with i <= j outside S, row-major.
inline std::vector<Position> free_positions(const PosetIdeal& s) {
  std::vector<Position> out;
  for (int i = 1; i <= s.n(); ++i) {
    for (int j = i; j <= s.n(); ++j) {
      if (!s.contains({i, j})) out.push_back({i, j});
    }
  }
  return out;
}

/// Whether the span of E_ij over the given upper positions is closed under
/// bracket with all of b, using [E_ij, E_kl] = d_jk E_il - d_li E_kj.
inline bool is_coordinate_lie_ideal(std::span<const Position> upper_subset, int n) {
  const std::set<Position> span(upper_subset.begin(), upper_subset.end());
  for (const auto& p : span) {
    if (!p.valid_for(n) || !p.upper()) throw DomainError("position " + p.to_string() + " is not in b");
  }
  for (int k = 1; k <= n; ++k) {
    for (int l = k; l <= n; ++l) {
      for (const auto& [i, j] : span) {
        // [E_kl, E_ij] = d_li E_kj - d_jk E_il
        std::vector<std::pair<Position, int>> terms;
        if (l == i) terms.push_back({{k, j}, 1});
        if (j == k) terms.push_back({{i, l}, -1});
        if (terms.size() == 2 && terms[0].first == terms[1].first) continue;
        for (const auto& [pos, c] : terms) {
          if (!span.contains(pos)) return false;
        }
      }
    }
  }
  return true;
}

struct BInvarianceReport {
  bool pass = true;
  int trials = 0;
  std::optional<std::string> witness;
};

namespace detail {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t p) { return rng() % p; }

using FpDense = std::vector<std::vector<std::uint64_t>>;

/// Inverse of an invertible upper triangular matrix over F_p.
inline FpDense invert_upper(const FpDense& b, const PrimeField& f) {
  const std::size_t n = b.size();
  FpDense inv(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t rr = n; rr-- > 0;) {
      if (rr > c) continue;
      std::uint64_t acc = rr == c ? 1 : 0;
      for (std::size_t k = rr + 1; k <= c; ++k) acc = f.sub(acc, f.mul(b[rr][k], inv[k][c]));
      inv[rr][c] = f.mul(acc, f.inverse(b[rr][rr]));
    }
  }
  return inv;
}

/// Conjugates each E_v (v in span) by random invertible upper triangular b
/// over F_p and checks the result vanishes at every forbidden position.
inline BInvarianceReport b_conjugation_check(int n, std::span<const Position> span,
                                             std::span<const Position> forbidden, std::uint64_t p,
                                             int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  const PrimeField f(p);
  std::mt19937_64 rng(seed);
  BInvarianceReport report;
  for (int t = 0; t < trials; ++t) {
    FpDense b(n, std::vector<std::uint64_t>(n, 0));
    for (int i = 0; i < n; ++i) {
      do {
        b[i][i] = draw(rng, p);
      } while (b[i][i] == 0);
      for (int j = i + 1; j < n; ++j) b[i][j] = draw(rng, p);
    }
    const FpDense inv = invert_upper(b, f);
    ++report.trials;
    for (const auto& v : span) {
      // b E_v b^-1 = (column v.i of b) (row v.j of b^-1)
      for (const auto& q : forbidden) {
        const std::uint64_t entry = f.mul(b[q.i - 1][v.i - 1], inv[v.j - 1][q.j - 1]);
        if (entry != 0) {
          report.pass = false;
          report.witness = "trial " + std::to_string(t) + ": b*E" + v.to_string() +
                           "*b^-1 is nonzero at " + q.to_string();
          return report;
        }
      }
    }
  }
  return report;
}

}  // namespace detail

/// Randomized check over F_p that b[S] is stable under conjugation by B.
inline BInvarianceReport check_b_invariance(const PosetIdeal& s, std::uint64_t p, int trials,
                                            std::uint64_t seed) {
  const auto span = free_positions(s);
  return detail::b_conjugation_check(s.n(), span, s.members(), p, trials, seed);
}

/// Coordinate subspaces of b that are Lie ideals, compared against the
/// family of subspaces b[S].
struct IdealCensus {
  struct Entry {
    std::vector<Position> span;
    bool b_stable = false;
    bool is_b_of_ideal = false;
  };
  int n = 0;
  std::size_t subsets_scanned = 0;
  std::vector<Entry> lie_ideals;
  std::size_t ideal_count = 0;            // order ideals S
  std::size_t distinct_b_of_ideals = 0;   // distinct subspaces b[S]
  bool every_b_stable_is_b_of_ideal = true;
  bool every_b_of_ideal_is_lie_ideal = true;
};

inline IdealCensus coordinate_ideal_census(int n, std::uint64_t p, int trials, std::uint64_t seed,
                                           int max_n = 4) {
  if (n > max_n) throw CapacityError("census for n=" + std::to_string(n) + " exceeds cap");
  IdealCensus census;
  census.n = n;
  std::vector<Position> upper;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) upper.push_back({i, j});
  }
  const auto ideals = enumerate_ideals(n);
  census.ideal_count = ideals.size();
  std::set<std::vector<Position>> family;
  for (const auto& s : ideals) family.insert(free_positions(s));
  census.distinct_b_of_ideals = family.size();
  for (const auto& span : family) {
    if (!is_coordinate_lie_ideal(span, n)) census.every_b_of_ideal_is_lie_ideal = false;
  }

  const std::uint64_t count = std::uint64_t{1} << upper.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<Position> span;
    std::vector<Position> outside;
    for (std::size_t k = 0; k < upper.size(); ++k) {
      ((mask >> k) & 1U ? span : outside).push_back(upper[k]);
    }
    ++census.subsets_scanned;
    if (!is_coordinate_lie_ideal(span, n)) continue;
    IdealCensus::Entry e;
    e.span = span;
    e.b_stable = detail::b_conjugation_check(n, span, outside, p, trials, seed).pass;
    e.is_b_of_ideal = family.contains(span);
    if (e.b_stable && !e.is_b_of_ideal) census.every_b_stable_is_b_of_ideal = false;
    census.lie_ideals.push_back(std::move(e));
  }
  return census;
}

}  // namespace bsv
