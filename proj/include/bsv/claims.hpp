#pragma once

// Mechanical checks of the inductive step: for an ideal S' and an upper
// maximal (s,t) of S = S' + {(s,t)}, with r = s + n - t,
//
//   F'  = F_r[S']  has degree one in x_st and is divisible by x_st,
//   (F' / x_st)|_{x_st = 0} = F_r[S],
//   (X + delta_r[S'])_{<=r, <=n} loses rank below r once x_st = 0,
//   and the block pattern behind that rank count holds entrywise.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bsv/content_store.hpp"
#include "bsv/errors.hpp"
#include "bsv/poly_matrix.hpp"
#include "bsv/poset.hpp"
#include "bsv/symbolic.hpp"

namespace bsv {

inline constexpr std::uint64_t kDefaultSeed = 0xB08E1;
inline constexpr std::uint64_t kMersenne31 = 2147483647ULL;

enum class Check {
  degree_at_most_one,
  degree_one,
  divisibility,
  residue_identity,
  rank_drop,
  block_zeros,
  numeric_cross_check,
};

inline constexpr Check kAllChecks[] = {
    Check::degree_at_most_one, Check::degree_one,  Check::divisibility,        Check::residue_identity,
    Check::rank_drop,          Check::block_zeros, Check::numeric_cross_check,
};

inline std::string to_string(Check c) {
  switch (c) {
    case Check::degree_at_most_one: return "degree_at_most_one";
    case Check::degree_one: return "degree_one";
    case Check::divisibility: return "divisibility";
    case Check::residue_identity: return "residue_identity";
    case Check::rank_drop: return "rank_drop";
    case Check::block_zeros: return "block_zeros";
    case Check::numeric_cross_check: return "numeric_cross_check";
  }
  return "?";
}

struct CheckResult {
  bool pass = true;
  std::string witness;  // empty on pass

  static CheckResult ok() { return {}; }
  static CheckResult fail(std::string w) { return {false, std::move(w)}; }
};

struct StepReport {
  PosetIdeal s_prime;
  Position st;
  int r = 0;
  std::string factor_prime;  // F_r[S']
  std::string quotient;      // F_r[S'] / x_st, empty when not divisible
  std::string factor;        // F_r[S]
  std::vector<std::pair<Check, CheckResult>> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second.pass; });
  }

  const CheckResult& check(Check which) const {
    for (const auto& [c, res] : checks) {
      if (c == which) return res;
    }
    throw DomainError("check " + to_string(which) + " not in report");
  }
};

struct ChainReport {
  PosetIdeal ideal;
  std::vector<StepReport> steps;  // build-up order, from the base case to S
  CheckResult base_case;
  double millis = 0;

  bool passed() const {
    return base_case.pass && std::all_of(steps.begin(), steps.end(), [](const auto& s) { return s.passed(); });
  }
};

struct Summary {
  int n = 0;
  std::vector<ChainReport> chains;  // canonical ideal order
  double millis = 0;

  std::size_t passed() const {
    return static_cast<std::size_t>(
        std::count_if(chains.begin(), chains.end(), [](const auto& c) { return c.passed(); }));
  }
  bool all_passed() const { return passed() == chains.size(); }
};

enum class RankPolicy { automatic, symbolic, randomized };

struct VerifyOptions {
  /// automatic: exact minors for n <= 3, random evaluations above.
  RankPolicy rank_policy = RankPolicy::automatic;
  int random_trials = 20;
  std::uint64_t prime = kMersenne31;
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 1;
  int max_n = 4;
  Order order = Order::dominance;
  DeltaVariant delta = DeltaVariant::exact;
};

/// delta_r[S] = 0 for r = 1..n when S has no member with i <= j.
inline CheckResult verify_base_case(const PosetIdeal& s, DeltaVariant variant = DeltaVariant::exact) {
  if (!s.upper_members().empty()) {
    throw DomainError("base case needs S inside the strict lower triangle, got " + s.to_string());
  }
  for (int r = 1; r <= s.n(); ++r) {
    const auto d = delta_matrix(s, r, variant);
    if (!d.is_zero()) return CheckResult::fail("delta_" + std::to_string(r) + " has support at " + d.support[0].to_string());
  }
  return CheckResult::ok();
}

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::string positions_1based(const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k] + 1);
  return s + "}";
}

}  // namespace detail

class Verifier {
 public:
  explicit Verifier(VerifyOptions opts = {}, FactorCache* cache = nullptr) : opts_(opts), cache_(cache) {
    if (!cache_) {
      owned_ = std::make_unique<FactorCache>();
      cache_ = owned_.get();
    }
  }

  const VerifyOptions& options() const { return opts_; }

  StepReport verify_step(const PosetIdeal& s_prime, Position st) const {
    const int n = s_prime.n();
    if (!st.valid_for(n)) throw DomainError("position " + st.to_string() + " outside the matrix");
    if (!st.upper()) throw DomainError("peeled position " + st.to_string() + " needs s <= t");
    if (s_prime.contains(st)) throw DomainError(st.to_string() + " already belongs to S'");
    const PosetIdeal s = s_prime.with(st, opts_.order);
    for (const auto& b : s.members()) {
      if (b != st && leq(st, b, opts_.order)) {
        throw DomainError(st.to_string() + " is not maximal in " + s.to_string());
      }
    }

    StepReport rep{s_prime, st, level(st, n), {}, {}, {}, {}};
    const int r = rep.r;
    const VarId xst = VarId::x(st.i, st.j);
    const IntPoly f_prime = cache_->get(s_prime, r, opts_.delta);
    const IntPoly f = cache_->get(s, r, opts_.delta);
    rep.factor_prime = f_prime.to_string();
    rep.factor = f.to_string();

    const Degree deg = f_prime.degree_in(xst);
    const std::string deg_text = "deg_" + xst.name() + " F' = " + deg.to_string() + ", F' = " + rep.factor_prime;
    rep.checks.emplace_back(Check::degree_at_most_one,
                            deg <= Degree(1) ? CheckResult::ok() : CheckResult::fail(deg_text));
    rep.checks.emplace_back(Check::degree_one,
                            deg == Degree(1) ? CheckResult::ok() : CheckResult::fail(deg_text));

    std::optional<IntPoly> quotient;
    try {
      quotient = divide_by_variable(f_prime, xst);
      rep.quotient = quotient->to_string();
      rep.checks.emplace_back(Check::divisibility, CheckResult::ok());
    } catch (const NotDivisible& e) {
      rep.checks.emplace_back(Check::divisibility, CheckResult::fail("term " + e.witness() + " lacks " + xst.name()));
    }

    if (quotient) {
      const IntPoly residue = substitute(*quotient, xst, 0);
      rep.checks.emplace_back(Check::residue_identity,
                              residue == f ? CheckResult::ok()
                                           : CheckResult::fail("residue - F = " + (residue - f).to_string()));
    } else {
      rep.checks.emplace_back(Check::residue_identity, CheckResult::fail("no quotient: F' is not divisible"));
    }

    const std::uint64_t step_seed = seed_for(s_prime, st);
    IntMatrix top = shifted_borel_element(s_prime, r, opts_.delta).leading(r, n);
    for (std::size_t a = 0; a < top.rows(); ++a) {
      for (std::size_t b = 0; b < top.cols(); ++b) top(a, b) = substitute(top(a, b), xst, 0);
    }
    rep.checks.emplace_back(Check::rank_drop, rank_drop(top, r, step_seed));
    rep.checks.emplace_back(Check::block_zeros, block_zeros(top, st, r));
    rep.checks.emplace_back(Check::numeric_cross_check,
                            numeric_cross_check(s_prime, s, st, r, f_prime, f, step_seed ^ 0x5a5a5a5aULL));
    return rep;
  }

  ChainReport verify_chain(const PosetIdeal& s) const {
    const auto start = std::chrono::steady_clock::now();
    ChainReport rep{s, {}, {}, 0};
    const auto peel = peel_sequence(s, opts_.order);
    PosetIdeal current = s;
    for (const auto& step : peel) current = current.without(step.position, opts_.order);

    if (const auto upper = current.upper_members(); !upper.empty()) {
      rep.base_case = CheckResult::fail("peeling stalls at " + current.to_string() + ": " + upper[0].to_string() +
                                        " has i <= j but is not removable; delta_" +
                                        std::to_string(level(upper[0], s.n())) + " is nonzero");
    } else {
      rep.base_case = verify_base_case(current, opts_.delta);
    }

    for (auto it = peel.rbegin(); it != peel.rend(); ++it) {
      rep.steps.push_back(verify_step(current, it->position));
      current = current.with(it->position, opts_.order);
    }
    rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
  }

  /// Every ideal of [1,n]^2, fanned out over `jobs` workers; the result is
  /// in canonical ideal order whatever the scheduling.
  Summary verify_all(int n) const {
    if (n < 1) throw DomainError("n must be >= 1");
    if (n > opts_.max_n) {
      throw CapacityError("n=" + std::to_string(n) + " exceeds the cap max_n=" + std::to_string(opts_.max_n));
    }
    const auto start = std::chrono::steady_clock::now();
    const auto ideals = enumerate_ideals(n, opts_.order, std::max(opts_.max_n, 5));
    Summary sum;
    sum.n = n;
    std::vector<std::optional<ChainReport>> slots(ideals.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
      while (true) {
        const std::size_t k = next++;
        if (k >= ideals.size()) return;
        try {
          slots[k] = verify_chain(ideals[k]);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    };
    const unsigned jobs = std::max(1U, std::min<unsigned>(opts_.jobs, static_cast<unsigned>(ideals.size())));
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    for (auto& slot : slots) sum.chains.push_back(std::move(*slot));
    sum.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return sum;
  }

 private:
  bool symbolic_rank_for(int n) const {
    switch (opts_.rank_policy) {
      case RankPolicy::symbolic: return true;
      case RankPolicy::randomized: return false;
      case RankPolicy::automatic: return n <= 3;
    }
    return true;
  }

  std::uint64_t seed_for(const PosetIdeal& s_prime, Position st) const {
    const std::string tag = s_prime.to_string() + "|" + st.to_string() + "|" + std::to_string(s_prime.n());
    return detail::splitmix(opts_.seed ^ ContentStore::fnv1a(tag));
  }

  CheckResult rank_drop(const IntMatrix& top, int r, std::uint64_t seed) const {
    const int n = static_cast<int>(top.cols());
    RankOptions ro;
    ro.mode = symbolic_rank_for(n) ? RankMode::symbolic : RankMode::randomized;
    ro.trials = opts_.random_trials;
    ro.prime = opts_.prime;
    ro.seed = seed;
    const RankResult res = symbolic_rank(top, ro);
    if (res.rank < static_cast<std::size_t>(r)) return CheckResult::ok();
    if (ro.mode == RankMode::symbolic) {
      return CheckResult::fail("nonzero " + std::to_string(res.rank) + "-minor at rows " +
                               detail::positions_1based(res.witness_rows) + " cols " +
                               detail::positions_1based(res.witness_cols));
    }
    return CheckResult::fail("random trial " + std::to_string(*res.witness_trial) + " has rank " +
                             std::to_string(res.rank) + " >= r = " + std::to_string(r));
  }

  static CheckResult block_zeros(const IntMatrix& top, Position st, int r) {
    for (int i = st.i; i <= r; ++i) {
      for (int j = 1; j <= st.j; ++j) {
        const auto& e = top(i - 1, j - 1);
        if (!e.is_zero()) {
          return CheckResult::fail("entry " + Position{i, j}.to_string() + " = " + e.to_string() +
                                   " should vanish");
        }
      }
    }
    return CheckResult::ok();
  }

  /// Recomputes the leading r x r minor of g M g^-1 numerically over F_p at
  /// random points and compares with the symbolic factors.
  CheckResult numeric_cross_check(const PosetIdeal& s_prime, const PosetIdeal& s, Position st, int r,
                                  const IntPoly& f_prime, const IntPoly& f, std::uint64_t seed) const {
    const int n = s_prime.n();
    const std::uint64_t p = opts_.prime;
    const VarId xst = VarId::x(st.i, st.j);
    const IntMatrix m_prime = shifted_borel_element(s_prime, r, opts_.delta);
    const IntMatrix m = shifted_borel_element(s, r, opts_.delta);
    std::mt19937_64 rng(seed);
    auto minor_at = [&](const IntMatrix& mat, const Point& pt) {
      FpMatrix g(n, std::vector<std::uint64_t>(n, 0));
      for (int i = 0; i < n; ++i) {
        g[i][i] = 1;
        for (int j = 0; j < i; ++j) g[i][j] = pt.at(VarId::g(i + 1, j + 1));
      }
      const FpMatrix conj = multiply_mod_p(multiply_mod_p(g, evaluate(mat, pt, p), p), inverse_mod_p(g, p), p);
      FpMatrix lead(r, std::vector<std::uint64_t>(r, 0));
      for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) lead[a][b] = conj[a][b];
      }
      return det_mod_p(lead, p);
    };
    for (int t = 0; t < opts_.random_trials; ++t) {
      Point pt;
      for (const auto& v : chart_universe(n)) pt[v] = rng() % p;
      const std::uint64_t numeric = minor_at(m_prime, pt);
      if (numeric != evaluate(f_prime, pt, p)) {
        return CheckResult::fail("trial " + std::to_string(t) + ": numeric F' = " + std::to_string(numeric) +
                                 " but symbolic F' evaluates to " + std::to_string(evaluate(f_prime, pt, p)));
      }
      if (minor_at(m, pt) != evaluate(f, pt, p)) {
        return CheckResult::fail("trial " + std::to_string(t) + ": numeric F disagrees with symbolic F");
      }
      Point zeroed = pt;
      zeroed[xst] = 0;
      if (const auto z = minor_at(m_prime, zeroed); z != 0) {
        return CheckResult::fail("trial " + std::to_string(t) + ": minor at " + xst.name() + " = 0 is " +
                                 std::to_string(z));
      }
    }
    return CheckResult::ok();
  }

  VerifyOptions opts_;
  FactorCache* cache_;
  std::unique_ptr<FactorCache> owned_;
};

}  // namespace bsv
