#pragma once

// JSON forms of ideals, polynomials, verifier reports and the candidate DSL.
// Report objects carry "schema": "1"; timings are written only on request.

#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "bsv/claims.hpp"
#include "bsv/errors.hpp"
#include "bsv/poset.hpp"
#include "bsv/splitting.hpp"

namespace bsv {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

inline json members_to_json(const std::vector<Position>& ps) {
  json arr = json::array();
  for (const auto& p : ps) arr.push_back({p.i, p.j});
  return arr;
}

inline json to_json(const PosetIdeal& s) { return {{"n", s.n()}, {"members", members_to_json(s.members())}}; }

inline std::vector<Position> members_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("ideal members must be a JSON array of [i,j] pairs");
  std::vector<Position> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw DomainError("ideal member must be an [i,j] pair, got " + e.dump());
    }
    out.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return out;
}

/// Accepts {"n":..,"members":[..]} or a bare member list (then n is required).
inline PosetIdeal ideal_from_json(const json& j, std::optional<int> n = std::nullopt, Order order = Order::dominance) {
  if (j.is_object()) {
    if (!j.contains("n") || !j.contains("members")) throw DomainError("ideal object needs \"n\" and \"members\"");
    const int jn = j.at("n").get<int>();
    if (n && *n != jn) throw DomainError("ideal has n=" + std::to_string(jn) + ", expected " + std::to_string(*n));
    return PosetIdeal(jn, members_from_json(j.at("members")), order);
  }
  if (!n) throw DomainError("a bare member list needs an explicit n");
  return PosetIdeal(*n, members_from_json(j), order);
}

template <class Ring>
json to_json(const Polynomial<Ring>& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) {
    json mono = json::object();
    for (const auto& [v, e] : t.monomial.factors()) mono[v.name()] = e;
    terms.push_back({{"monomial", mono}, {"coeff", f.ring().to_string(t.coeff)}});
  }
  return {{"domain", f.ring().name()}, {"text", f.to_string()}, {"terms", terms}};
}

inline json to_json(const CheckResult& c) {
  json j = {{"pass", c.pass}};
  if (!c.pass) j["witness"] = c.witness;
  return j;
}

inline json to_json(const StepReport& s) {
  json checks = json::object();
  for (const auto& [c, res] : s.checks) checks[to_string(c)] = to_json(res);
  json j = {{"st", {s.st.i, s.st.j}},
            {"r", s.r},
            {"s_prime", members_to_json(s.s_prime.members())},
            {"factor_prime", s.factor_prime},
            {"factor", s.factor}};
  if (!s.quotient.empty()) j["quotient"] = s.quotient;
  j["checks"] = checks;
  j["pass"] = s.passed();
  return j;
}

inline json to_json(const ChainReport& c, bool timing) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back(to_json(s));
  json j = {{"n", c.ideal.n()},
            {"ideal", to_json(c.ideal)},
            {"steps", steps},
            {"base_case", to_json(c.base_case)},
            {"pass", c.passed()}};
  if (timing) j["millis"] = c.millis;
  return j;
}

inline json chain_document(const ChainReport& c, bool timing) {
  json j = {{"schema", kSchemaVersion}};
  j.update(to_json(c, timing));
  return j;
}

inline json to_json(const Summary& s, bool timing) {
  json chains = json::array();
  for (const auto& c : s.chains) chains.push_back(to_json(c, timing));
  json j = {{"schema", kSchemaVersion},
            {"n", s.n},
            {"ideals", s.chains.size()},
            {"passed", s.passed()},
            {"pass", s.all_passed()},
            {"chains", chains}};
  if (timing) j["millis"] = s.millis;
  return j;
}

// ---- candidate DSL ----
//
// {"factors":[{"atom":{"minor":{"S":[[i,j],..],"r":k}}, "exp":e},
//             {"atom":{"var":"x12"}, "exp":e},
//             {"atom":{"lit":"x11*x12 + x12^2"}, "exp":e}],
//  "outer":e}
// "S" may also be a full ideal object {"n":..,"members":..}.

inline json to_json(const Atom& atom) {
  return std::visit(
      [](const auto& a) -> json {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, MinorAtom>) {
          return {{"minor", {{"S", members_to_json(a.ideal.members())}, {"r", a.r}}}};
        } else if constexpr (std::is_same_v<T, VarAtom>) {
          return {{"var", a.var.name()}};
        } else {
          return {{"lit", a.value.to_string()}};
        }
      },
      atom);
}

inline json to_json(const CandidateExpr& c) {
  json factors = json::array();
  for (const auto& f : c.factors) factors.push_back({{"atom", to_json(f.atom)}, {"exp", f.exponent}});
  return {{"factors", factors}, {"outer", c.outer}};
}

inline std::uint32_t exponent_from_json(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0 || j.get<long long>() > 1'000'000) {
    throw DomainError(std::string(what) + " must be a nonnegative integer, got " + j.dump());
  }
  return j.get<std::uint32_t>();
}

inline Atom atom_from_json(const json& j, int n) {
  if (!j.is_object() || j.size() != 1) throw DomainError("atom must be an object with one key, got " + j.dump());
  if (j.contains("minor")) {
    const json& m = j.at("minor");
    if (!m.is_object() || !m.contains("S") || !m.contains("r") || !m.at("r").is_number_integer()) {
      throw DomainError("minor atom needs \"S\" and integer \"r\"");
    }
    const int r = m.at("r").get<int>();
    PosetIdeal s = ideal_from_json(m.at("S"), n);
    if (r < 1 || r > n) throw DomainError("minor level r=" + std::to_string(r) + " outside [1," + std::to_string(n) + "]");
    return MinorAtom{std::move(s), r};
  }
  if (j.contains("var")) {
    if (!j.at("var").is_string()) throw DomainError("var atom needs a variable name");
    const VarId v = VarId::parse(j.at("var").get<std::string>());
    if (!v.valid_for(n)) throw DomainError("variable " + v.name() + " outside GL_" + std::to_string(n));
    return VarAtom{v};
  }
  if (j.contains("lit")) {
    if (!j.at("lit").is_string()) throw DomainError("lit atom needs polynomial text");
    return LiteralAtom{parse_polynomial<IntegerRing>(j.at("lit").get<std::string>())};
  }
  throw DomainError("unknown atom kind in " + j.dump());
}

inline CandidateExpr candidate_from_json(const json& j, int n) {
  if (!j.is_object() || !j.contains("factors") || !j.at("factors").is_array()) {
    throw DomainError("candidate needs a \"factors\" array");
  }
  CandidateExpr c;
  c.n = n;
  for (const auto& f : j.at("factors")) {
    if (!f.is_object() || !f.contains("atom")) throw DomainError("factor needs an \"atom\"");
    const std::uint32_t e = f.contains("exp") ? exponent_from_json(f.at("exp"), "exp") : 1;
    c.factors.push_back({atom_from_json(f.at("atom"), n), e});
  }
  c.outer = j.contains("outer") ? exponent_from_json(j.at("outer"), "outer") : 1;
  return c;
}

inline json to_json(const CompatReport& r) {
  json j = {{"var", r.variable.name()}, {"compatible", r.compatible}};
  if (r.witness) {
    j["witness"] = {{"multiplier", r.witness->multiplier.to_string()},
                    {"trace_monomial", r.witness->trace_monomial.to_string()},
                    {"coeff", r.witness->coeff}};
  }
  return j;
}

inline json to_json(const SimultaneousReport& r) {
  json j = {{"schema", kSchemaVersion}, {"n", r.n}, {"p", r.p}, {"terms", r.terms}, {"splits", r.splits},
            {"trace", r.trace}};
  json ideals = json::array();
  for (const auto& ic : r.ideals) {
    json vars = json::array();
    for (const auto& v : ic.variables) vars.push_back(to_json(v));
    ideals.push_back({{"ideal", to_json(ic.ideal)}, {"compatibly_split", ic.compatibly_split}, {"equations", vars}});
  }
  j["ideals"] = ideals;
  j["all_compatible"] = r.all_compatible();
  return j;
}

inline json to_json(const IdealCensus& c) {
  json entries = json::array();
  for (const auto& e : c.lie_ideals) {
    entries.push_back({{"span", members_to_json(e.span)}, {"b_stable", e.b_stable}, {"is_b_of_ideal", e.is_b_of_ideal}});
  }
  return {{"n", c.n},
          {"subsets_scanned", c.subsets_scanned},
          {"coordinate_lie_ideals", c.lie_ideals.size()},
          {"order_ideals", c.ideal_count},
          {"distinct_b_of_ideals", c.distinct_b_of_ideals},
          {"every_b_stable_is_b_of_ideal", c.every_b_stable_is_b_of_ideal},
          {"every_b_of_ideal_is_lie_ideal", c.every_b_of_ideal_is_lie_ideal},
          {"lie_ideals", entries}};
}

}  // namespace bsv
