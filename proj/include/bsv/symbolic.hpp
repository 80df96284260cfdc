#pragma once

// Generic matrices on the chart U^- x b[S]: the lower unitriangular g with
// entries u_ij, the upper triangular X with entries x_ij at the free
// positions of S, the 0/1 shift matrices delta_r[S], and the determinant
// factors
//
//   F_r[S] = det( (g (X + delta_r[S]) g^-1)_{<=r, <=r} ).

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsv/content_store.hpp"
#include "bsv/errors.hpp"
#include "bsv/poly_matrix.hpp"
#include "bsv/polynomial.hpp"
#include "bsv/poset.hpp"

namespace bsv {

/// Coordinates of U^- x b for GL_n in canonical variable order.
inline std::vector<VarId> chart_universe(int n) {
  std::vector<VarId> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j < i; ++j) out.push_back(VarId::g(i, j));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) out.push_back(VarId::x(i, j));
  }
  return out;
}

inline IntMatrix generic_unitriangular_lower(int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  auto g = IntMatrix::identity(n);
  for (int i = 2; i <= n; ++i) {
    for (int j = 1; j < i; ++j) g(i - 1, j - 1) = IntPoly::variable({}, VarId::g(i, j));
  }
  return g;
}

/// g^-1 for the generic g of size n; computed once per n.
inline const IntMatrix& generic_lower_inverse(int n) {
  static std::mutex mu;
  static std::map<int, IntMatrix> table;
  {
    std::lock_guard lock(mu);
    if (auto it = table.find(n); it != table.end()) return it->second;
  }
  IntMatrix inv = invert_unitriangular(generic_unitriangular_lower(n));
  std::lock_guard lock(mu);
  return table.try_emplace(n, std::move(inv)).first->second;
}

inline IntMatrix generic_borel_element(const PosetIdeal& s) {
  IntMatrix x(s.n(), s.n());
  for (const auto& p : free_positions(s)) x(p.i - 1, p.j - 1) = IntPoly::variable({}, VarId::x(p.i, p.j));
  return x;
}

/// `drop_last_entry` removes the last stripe entry; it exists only so tests
/// can confirm the claim checks react to a wrong shift matrix.
enum class DeltaVariant { exact, drop_last_entry };

inline std::string to_string(DeltaVariant v) { return v == DeltaVariant::exact ? "exact" : "drop_last_entry"; }

struct DeltaMatrix {
  int n = 0;
  int r = 0;
  std::vector<Position> support;

  bool is_zero() const { return support.empty(); }

  IntMatrix to_matrix() const {
    IntMatrix m(n, n);
    for (const auto& p : support) m(p.i - 1, p.j - 1) = IntPoly::constant({}, 1);
    return m;
  }
};

/// delta_r[S]: ones at the upper members (i,j) of S on the stripe
/// i + n - j = r. It is zero when S has no upper member, and adding an
/// upper maximal (s,t) to S adds exactly the entry (s,t) at level s+n-t.
inline DeltaMatrix delta_matrix(const PosetIdeal& s, int r, DeltaVariant variant = DeltaVariant::exact) {
  const int n = s.n();
  if (r < 1 || r > 2 * n - 1) {
    throw DomainError("level r=" + std::to_string(r) + " outside [1, " + std::to_string(2 * n - 1) + "]");
  }
  DeltaMatrix d{n, r, {}};
  for (const auto& p : s.upper_members()) {
    if (level(p, n) == r) d.support.push_back(p);
  }
  if (variant == DeltaVariant::drop_last_entry && !d.support.empty()) d.support.pop_back();
  return d;
}

/// g M g^-1 for unitriangular g.
template <class Ring>
PolyMatrix<Ring> conjugate(const PolyMatrix<Ring>& g, const PolyMatrix<Ring>& m) {
  if (g.rows() != g.cols() || m.rows() != m.cols() || g.rows() != m.rows()) {
    throw DomainError("conjugate: size mismatch");
  }
  return g * m * invert_unitriangular(g);
}

/// X + delta_r[S] for the generic X of b[S].
inline IntMatrix shifted_borel_element(const PosetIdeal& s, int r, DeltaVariant variant = DeltaVariant::exact) {
  return generic_borel_element(s) + delta_matrix(s, r, variant).to_matrix();
}

/// F_r[S], uncached. Only rows and columns up to r of g M g^-1 are formed:
/// since g is lower triangular, (g M g^-1)_{<=r,<=r} = g_{<=r,<=r} M_{<=r,:} (g^-1)_{:,<=r}.
inline IntPoly compute_minor_factor(const PosetIdeal& s, int r, DeltaVariant variant = DeltaVariant::exact) {
  const int n = s.n();
  if (r < 1) throw DomainError("minor level must be >= 1");
  if (r > n) {
    throw DomainError("minor level r=" + std::to_string(r) + " exceeds n=" + std::to_string(n) +
                      "; peeling never produces such a level");
  }
  const IntMatrix m = shifted_borel_element(s, r, variant);
  const IntMatrix g = generic_unitriangular_lower(n);
  const IntMatrix& ginv = generic_lower_inverse(n);
  const IntMatrix block = g.leading(r, r) * m.leading(r, n) * ginv.leading(n, r);
  return determinant(block);
}

/// Memo table for F_r[S] keyed by (n, S, r, shift variant), optionally
/// backed by an on-disk content store. Concurrent misses on one key may
/// both compute; they produce identical canonical values.
class FactorCache {
 public:
  FactorCache() = default;
  explicit FactorCache(std::optional<std::filesystem::path> dir) {
    if (dir) store_.emplace(*dir);
  }

  FactorCache(const FactorCache&) = delete;
  FactorCache& operator=(const FactorCache&) = delete;

  static std::string key(const PosetIdeal& s, int r, DeltaVariant variant) {
    std::string k = "{\"domain\":\"ZZ\",\"n\":" + std::to_string(s.n()) + ",\"S\":" + s.to_string() +
                    ",\"r\":" + std::to_string(r);
    if (variant != DeltaVariant::exact) k += ",\"delta\":\"" + to_string(variant) + "\"";
    return k + "}";
  }

  IntPoly get(const PosetIdeal& s, int r, DeltaVariant variant = DeltaVariant::exact) {
    const std::string k = key(s, r, variant);
    {
      std::lock_guard lock(mu_);
      if (auto it = memo_.find(k); it != memo_.end()) {
        ++hits_;
        return it->second;
      }
    }
    std::optional<IntPoly> value;
    if (store_) {
      if (auto text = store_->load(k)) {
        try {
          value = parse_polynomial<IntegerRing>(*text);
          ++disk_hits_;
        } catch (const DomainError&) {
          value.reset();
        }
      }
    }
    if (!value) {
      ++misses_;
      value = compute_minor_factor(s, r, variant);
      if (store_) store_->store(k, value->to_string());
    }
    std::lock_guard lock(mu_);
    return memo_.try_emplace(k, std::move(*value)).first->second;
  }

  std::size_t hits() const { return hits_; }
  std::size_t disk_hits() const { return disk_hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::mutex mu_;
  std::map<std::string, IntPoly> memo_;
  std::optional<ContentStore> store_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> disk_hits_{0};
  std::atomic<std::size_t> misses_{0};
};

/// F_r[S] through a process-wide cache without disk backing.
inline IntPoly minor_factor(const PosetIdeal& s, int r, DeltaVariant variant = DeltaVariant::exact) {
  static FactorCache cache;
  return cache.get(s, r, variant);
}

}  // namespace bsv
