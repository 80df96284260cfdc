#pragma once

// Frobenius splitting on the affine chart U^- x b in characteristic p.
//
// The trace map sends x^a to x^((a - (p-1)) / p) when every exponent over
// the universe is congruent to p-1 mod p, and to 0 otherwise. A polynomial
// f defines a splitting iff Tr(f) = 1, and that splitting is compatible
// with the coordinate hyperplane {v = 0} iff Tr(f * v * m) lies in (v) for
// every monomial m.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bsv/errors.hpp"
#include "bsv/polynomial.hpp"
#include "bsv/poset.hpp"
#include "bsv/symbolic.hpp"

namespace bsv {

namespace detail {

inline void check_universe(const FpPoly& f, std::span<const VarId> universe) {
  const std::set<VarId> uni(universe.begin(), universe.end());
  for (const auto& v : f.variables()) {
    if (!uni.contains(v)) throw DomainError("variable " + v.name() + " is not in the universe");
  }
}

}  // namespace detail

inline FpPoly trace_map(const FpPoly& f, std::span<const VarId> universe) {
  detail::check_universe(f, universe);
  const std::uint64_t p = f.ring().characteristic();
  std::vector<FpPoly::Term> out;
  for (const auto& t : f.terms()) {
    std::vector<Monomial::Factor> exps;
    bool survives = true;
    for (const auto& v : universe) {
      const std::uint64_t a = t.monomial.exponent(v);
      if ((a + 1) % p != 0) {
        survives = false;
        break;
      }
      exps.emplace_back(v, static_cast<std::uint32_t>((a + 1 - p) / p));
    }
    if (survives) out.push_back({Monomial(std::move(exps)), t.coeff});
  }
  return FpPoly::from_terms(f.ring(), std::move(out));
}

inline bool is_splitting(const FpPoly& f, std::span<const VarId> universe) {
  return trace_map(f, universe) == FpPoly::constant(f.ring(), 1);
}

struct CompatWitness {
  Monomial multiplier;
  Monomial trace_monomial;
  std::uint64_t coeff = 0;
};

struct CompatReport {
  VarId variable;
  bool compatible = true;
  std::optional<CompatWitness> witness;  // present iff not compatible
};

/// Only terms with v-exponent a_v <= p-2 can leave (v): for such a term the
/// multiplier's residue class is forced (m_v = p-2-a_v, m_w = -1-a_w mod p),
/// and it lands on a trace monomial free of v. Contributions are summed per
/// (multiplier, trace monomial) and any nonzero sum is a violation.
inline CompatReport compatible_with_coordinate(const FpPoly& f, VarId v, std::span<const VarId> universe) {
  detail::check_universe(f, universe);
  if (std::find(universe.begin(), universe.end(), v) == universe.end()) {
    throw DomainError("variable " + v.name() + " is not in the universe");
  }
  const PrimeField& field = f.ring();
  const std::uint64_t p = field.characteristic();
  std::map<std::pair<Monomial, Monomial>, std::uint64_t> buckets;
  std::vector<std::pair<Monomial, Monomial>> order;
  for (const auto& t : f.terms()) {
    const std::uint64_t av = t.monomial.exponent(v);
    if (av + 2 > p) continue;
    std::vector<Monomial::Factor> mult;
    std::vector<Monomial::Factor> out;
    for (const auto& w : universe) {
      const std::uint64_t a = t.monomial.exponent(w);
      const std::uint64_t m = w == v ? p - 2 - av : (p - 1 - a % p) % p;
      mult.emplace_back(w, static_cast<std::uint32_t>(m));
      const std::uint64_t total = a + m + (w == v ? 1 : 0);
      out.emplace_back(w, static_cast<std::uint32_t>((total + 1 - p) / p));
    }
    std::pair key{Monomial(std::move(mult)), Monomial(std::move(out))};
    auto [it, inserted] = buckets.try_emplace(key, 0);
    if (inserted) order.push_back(key);
    it->second = field.add(it->second, t.coeff);
  }
  CompatReport rep{v, true, std::nullopt};
  for (const auto& key : order) {
    const std::uint64_t c = buckets.at(key);
    if (c != 0) {
      rep.compatible = false;
      rep.witness = CompatWitness{key.first, key.second, c};
      break;
    }
  }
  return rep;
}

// ---- candidate sections ----

struct MinorAtom {
  PosetIdeal ideal;
  int r = 0;
};

struct VarAtom {
  VarId var;
};

struct LiteralAtom {
  IntPoly value;
};

using Atom = std::variant<MinorAtom, VarAtom, LiteralAtom>;

struct CandidateFactor {
  Atom atom;
  std::uint32_t exponent = 1;
};

/// (prod_k atom_k^{e_k})^outer over the chart of GL_n.
struct CandidateExpr {
  int n = 1;
  std::vector<CandidateFactor> factors;
  std::uint32_t outer = 1;
};

struct SplitCaps {
  std::size_t max_terms = 5'000'000;
  std::size_t max_search = 1'000'000;
};

inline std::string describe(const Atom& atom) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, MinorAtom>) {
          return "F_" + std::to_string(a.r) + a.ideal.to_string();
        } else if constexpr (std::is_same_v<T, VarAtom>) {
          return a.var.name();
        } else {
          return "(" + a.value.to_string() + ")";
        }
      },
      atom);
}

inline IntPoly atom_polynomial(const Atom& atom, int n, FactorCache& cache) {
  return std::visit(
      [&](const auto& a) -> IntPoly {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, MinorAtom>) {
          if (a.ideal.n() != n) throw DomainError("minor atom ideal has n=" + std::to_string(a.ideal.n()));
          return cache.get(a.ideal, a.r);
        } else if constexpr (std::is_same_v<T, VarAtom>) {
          if (!a.var.valid_for(n)) throw DomainError("variable " + a.var.name() + " outside GL_" + std::to_string(n));
          return IntPoly::variable({}, a.var);
        } else {
          for (const auto& v : a.value.variables()) {
            if (!v.valid_for(n)) throw DomainError("literal uses " + v.name() + " outside GL_" + std::to_string(n));
          }
          return a.value;
        }
      },
      atom);
}

namespace detail {

inline FpPoly checked_mul(const FpPoly& a, const FpPoly& b, std::size_t max_terms) {
  FpPoly out = a * b;
  if (out.size() > max_terms) throw CapacityError("candidate exceeds " + std::to_string(max_terms) + " terms");
  return out;
}

inline FpPoly checked_pow(const FpPoly& base, std::uint64_t e, std::size_t max_terms) {
  FpPoly acc = FpPoly::constant(base.ring(), 1);
  FpPoly b = base;
  while (e > 0) {
    if (e & 1U) acc = checked_mul(acc, b, max_terms);
    e >>= 1U;
    if (e > 0) b = checked_mul(b, b, max_terms);
  }
  return acc;
}

}  // namespace detail

inline FpPoly build_candidate(const CandidateExpr& c, std::uint64_t p, FactorCache& cache, const SplitCaps& caps = {}) {
  const PrimeField field(p);
  FpPoly acc = FpPoly::constant(field, 1);
  for (const auto& factor : c.factors) {
    const FpPoly base = reduce_mod_p(atom_polynomial(factor.atom, c.n, cache), p);
    acc = detail::checked_mul(acc, detail::checked_pow(base, factor.exponent, caps.max_terms), caps.max_terms);
  }
  return detail::checked_pow(acc, c.outer, caps.max_terms);
}

struct IdealCompat {
  PosetIdeal ideal;
  bool compatibly_split = true;
  std::vector<CompatReport> variables;
};

struct SimultaneousReport {
  int n = 1;
  std::uint64_t p = 2;
  std::size_t terms = 0;
  bool splits = false;
  std::string trace;  // Tr(f), canonical text
  std::vector<IdealCompat> ideals;  // empty when f does not split

  bool all_compatible() const {
    return splits && std::all_of(ideals.begin(), ideals.end(), [](const auto& i) { return i.compatibly_split; });
  }
};

/// Coordinate equations of b[S] inside b: x_ij for the upper members of S.
inline std::vector<VarId> ideal_equations(const PosetIdeal& s) {
  std::vector<VarId> out;
  for (const auto& m : s.upper_members()) out.push_back(VarId::x(m.i, m.j));
  return out;
}

inline SimultaneousReport simultaneous_report_for(const FpPoly& f, int n, std::span<const PosetIdeal> ideals) {
  const auto universe = chart_universe(n);
  SimultaneousReport rep;
  rep.n = n;
  rep.p = f.ring().characteristic();
  rep.terms = f.size();
  const FpPoly tr = trace_map(f, universe);
  rep.trace = tr.to_string();
  rep.splits = tr == FpPoly::constant(f.ring(), 1);
  if (!rep.splits) return rep;
  for (const auto& s : ideals) {
    if (s.n() != n) throw DomainError("ideal " + s.to_string() + " is not for GL_" + std::to_string(n));
    IdealCompat ic{s, true, {}};
    for (const auto& v : ideal_equations(s)) {
      ic.variables.push_back(compatible_with_coordinate(f, v, universe));
      if (!ic.variables.back().compatible) ic.compatibly_split = false;
    }
    rep.ideals.push_back(std::move(ic));
  }
  return rep;
}

inline SimultaneousReport simultaneous_report(const CandidateExpr& c, std::uint64_t p,
                                              std::span<const PosetIdeal> ideals, FactorCache& cache,
                                              const SplitCaps& caps = {}) {
  return simultaneous_report_for(build_candidate(c, p, cache, caps), c.n, ideals);
}

/// Exhaustive search over exponent vectors in [0, bound]^atoms (first atom
/// slowest). Returns, in that order, every candidate that splits the chart
/// and compatibly splits each target ideal.
inline std::vector<CandidateExpr> search_candidates(int n, std::uint64_t p, const std::vector<Atom>& atoms,
                                                    std::uint32_t exponent_bound,
                                                    std::span<const PosetIdeal> targets, FactorCache& cache,
                                                    const SplitCaps& caps = {}, std::uint32_t outer = 1) {
  std::size_t count = 1;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (count > caps.max_search / (exponent_bound + 1ULL)) {
      throw CapacityError("search space exceeds " + std::to_string(caps.max_search) + " candidates");
    }
    count *= exponent_bound + 1ULL;
  }
  if (count > caps.max_search) throw CapacityError("search space exceeds " + std::to_string(caps.max_search) + " candidates");

  const PrimeField field(p);
  std::vector<std::vector<FpPoly>> powers;
  for (const auto& atom : atoms) {
    const FpPoly base = reduce_mod_p(atom_polynomial(atom, n, cache), p);
    std::vector<FpPoly> pw{FpPoly::constant(field, 1)};
    for (std::uint32_t e = 1; e <= exponent_bound; ++e) pw.push_back(detail::checked_mul(pw.back(), base, caps.max_terms));
    powers.push_back(std::move(pw));
  }
  const auto universe = chart_universe(n);
  std::vector<CandidateExpr> found;
  std::vector<std::uint32_t> exps(atoms.size(), 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    FpPoly f = FpPoly::constant(field, 1);
    for (std::size_t k = 0; k < atoms.size(); ++k) f = detail::checked_mul(f, powers[k][exps[k]], caps.max_terms);
    f = detail::checked_pow(f, outer, caps.max_terms);
    if (is_splitting(f, universe)) {
      bool ok = true;
      for (const auto& s : targets) {
        for (const auto& v : ideal_equations(s)) {
          if (!compatible_with_coordinate(f, v, universe).compatible) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) {
        CandidateExpr c{n, {}, outer};
        for (std::size_t k = 0; k < atoms.size(); ++k) c.factors.push_back({atoms[k], exps[k]});
        found.push_back(std::move(c));
      }
    }
    for (std::size_t k = atoms.size(); k-- > 0;) {
      if (++exps[k] <= exponent_bound) break;
      exps[k] = 0;
    }
  }
  return found;
}

}  // namespace bsv
