// bsv: enumerate poset ideals, verify the residue-step claims for GL_n, and
// test candidate Frobenius splittings on the chart U^- x b.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed,
//             2 usage / capacity / domain error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bsv/bsv.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Caps {
  int max_n = 4;
  std::size_t max_terms = 5'000'000;
  std::size_t max_search = 1'000'000;
};

enum class Output { human, json };

struct RunConfig {
  std::optional<int> n;
  std::optional<std::uint64_t> p;
  std::uint64_t seed = bsv::kDefaultSeed;
  std::string seed_text;
  std::string cache_dir;
  Caps caps;
  Output output = Output::human;
  unsigned jobs = 1;
  bool timing = true;
};

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  const auto v = std::stoull(text, &used, 0);
  if (used != text.size()) throw bsv::DomainError("bad seed '" + text + "'");
  return v;
}

std::optional<std::filesystem::path> resolve_cache_dir(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return std::filesystem::path(cfg.cache_dir);
  if (const char* env = std::getenv("BSV_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

void finalize(RunConfig& cfg) {
  if (!cfg.seed_text.empty()) cfg.seed = parse_seed(cfg.seed_text);
  if (cfg.n && (*cfg.n < 1 || *cfg.n > cfg.caps.max_n)) {
    throw bsv::CapacityError("n=" + std::to_string(*cfg.n) + " outside [1, max_n=" + std::to_string(cfg.caps.max_n) + "]");
  }
  if (cfg.p && !bsv::is_prime(*cfg.p)) throw bsv::DomainError("--p " + std::to_string(*cfg.p) + " is not prime");
}

std::vector<int> parse_blocks(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw bsv::DomainError("bad block size '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void print_chain_human(const bsv::ChainReport& c, std::ostream& os) {
  os << (c.passed() ? "PASS " : "FAIL ") << c.ideal.to_string() << "  steps=" << c.steps.size() << "\n";
  if (!c.base_case.pass) os << "    base_case: " << c.base_case.witness << "\n";
  for (const auto& s : c.steps) {
    for (const auto& [check, res] : s.checks) {
      if (!res.pass) {
        os << "    step " << s.st.to_string() << " r=" << s.r << " " << bsv::to_string(check) << ": " << res.witness
           << "\n";
      }
    }
  }
}

// ---- ideals ----

int cmd_ideals(const RunConfig& cfg, bool census) {
  const int n = *cfg.n;
  const auto ideals = bsv::enumerate_ideals(n, bsv::Order::dominance, cfg.caps.max_n);
  std::optional<bsv::IdealCensus> cen;
  if (census) cen = bsv::coordinate_ideal_census(n, cfg.p.value_or(bsv::kMersenne31), 20, cfg.seed, cfg.caps.max_n);

  if (cfg.output == Output::json) {
    bsv::json list = bsv::json::array();
    for (const auto& s : ideals) list.push_back(bsv::members_to_json(s.members()));
    bsv::json doc = {{"schema", bsv::kSchemaVersion}, {"n", n}, {"count", ideals.size()}, {"ideals", list}};
    if (cen) doc["census"] = bsv::to_json(*cen);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << ideals.size() << " ideals for n=" << n << "\n";
    for (const auto& s : ideals) std::cout << "  " << s.to_string() << "\n";
    if (cen) {
      std::cout << "census: " << cen->subsets_scanned << " coordinate subspaces of b scanned, "
                << cen->lie_ideals.size() << " are Lie ideals, " << cen->distinct_b_of_ideals
                << " distinct b[S]\n";
      for (const auto& e : cen->lie_ideals) {
        std::string span = "[";
        for (std::size_t k = 0; k < e.span.size(); ++k) span += (k ? "," : "") + e.span[k].to_string();
        span += "]";
        std::cout << "  " << span << "  b_stable=" << (e.b_stable ? "yes" : "no")
                  << "  is_b[S]=" << (e.is_b_of_ideal ? "yes" : "no") << "\n";
      }
      std::cout << "every B-stable coordinate Lie ideal is some b[S]: "
                << (cen->every_b_stable_is_b_of_ideal ? "yes" : "no") << "\n";
      std::cout << "every b[S] is a Lie ideal: " << (cen->every_b_of_ideal_is_lie_ideal ? "yes" : "no") << "\n";
    }
  }
  if (cen && !(cen->every_b_stable_is_b_of_ideal && cen->every_b_of_ideal_is_lie_ideal)) return kExitCheckFailed;
  return kExitOk;
}

// ---- verify ----

struct VerifyArgs {
  std::string ideal;
  std::string parabolic;
  std::string rank_mode = "auto";
  int trials = 20;
};

int cmd_verify(RunConfig cfg, const VerifyArgs& args) {
  std::optional<bsv::PosetIdeal> single;
  if (!args.parabolic.empty()) {
    const bsv::BlockComposition blocks(parse_blocks(args.parabolic));
    if (cfg.n && *cfg.n != blocks.n()) {
      throw bsv::DomainError("--parabolic sums to " + std::to_string(blocks.n()) + " but --n is " + std::to_string(*cfg.n));
    }
    cfg.n = blocks.n();
    finalize(cfg);
    single = bsv::parabolic_to_ideal(blocks);
  } else if (!args.ideal.empty()) {
    single = bsv::ideal_from_json(bsv::json::parse(args.ideal), cfg.n);
    cfg.n = single->n();
    finalize(cfg);
  } else {
    finalize(cfg);
  }
  if (!cfg.n) throw bsv::DomainError("--n is required");

  bsv::VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.jobs = cfg.jobs;
  opts.max_n = cfg.caps.max_n;
  opts.random_trials = args.trials;
  if (args.rank_mode == "symbolic") {
    opts.rank_policy = bsv::RankPolicy::symbolic;
  } else if (args.rank_mode == "randomized") {
    opts.rank_policy = bsv::RankPolicy::randomized;
  } else if (args.rank_mode != "auto") {
    throw bsv::DomainError("--rank-mode must be auto, symbolic or randomized");
  }
  bsv::FactorCache cache(resolve_cache_dir(cfg));
  const bsv::Verifier verifier(opts, &cache);

  if (single) {
    const auto chain = verifier.verify_chain(*single);
    if (cfg.output == Output::json) {
      std::cout << bsv::chain_document(chain, cfg.timing).dump(2) << "\n";
    } else {
      print_chain_human(chain, std::cout);
    }
    return chain.passed() ? kExitOk : kExitCheckFailed;
  }

  const auto summary = verifier.verify_all(*cfg.n);
  if (cfg.output == Output::json) {
    std::cout << bsv::to_json(summary, cfg.timing).dump(2) << "\n";
  } else {
    for (const auto& c : summary.chains) print_chain_human(c, std::cout);
    std::cout << summary.passed() << "/" << summary.chains.size() << " ideals pass for n=" << summary.n;
    if (cfg.timing) std::cout << " in " << summary.millis << " ms";
    std::cout << "\n";
  }
  return summary.all_passed() ? kExitOk : kExitCheckFailed;
}

// ---- split ----

struct SplitArgs {
  std::string candidate;
  std::string ideal;
  bool expect_split = false;
};

int cmd_split(const RunConfig& cfg, const SplitArgs& args) {
  if (!cfg.p) throw bsv::DomainError("--p is required");
  const int n = *cfg.n;
  std::ifstream in(args.candidate);
  if (!in) throw bsv::DomainError("cannot read candidate file " + args.candidate);
  bsv::json doc;
  try {
    doc = bsv::json::parse(in);
  } catch (const bsv::json::parse_error& e) {
    throw bsv::DomainError(std::string("candidate file is not JSON: ") + e.what());
  }
  const auto candidate = bsv::candidate_from_json(doc, n);

  std::vector<bsv::PosetIdeal> ideals;
  if (!args.ideal.empty()) {
    ideals.push_back(bsv::ideal_from_json(bsv::json::parse(args.ideal), n));
  } else {
    ideals = bsv::enumerate_ideals(n, bsv::Order::dominance, cfg.caps.max_n);
  }
  bsv::FactorCache cache(resolve_cache_dir(cfg));
  bsv::SplitCaps caps{cfg.caps.max_terms, cfg.caps.max_search};
  const auto report = bsv::simultaneous_report(candidate, *cfg.p, ideals, cache, caps);

  if (cfg.output == Output::json) {
    std::cout << bsv::to_json(report).dump(2) << "\n";
  } else {
    std::cout << "candidate over GF(" << report.p << "), " << report.terms << " terms\n";
    std::cout << "splits: " << (report.splits ? "yes" : "no") << "  (Tr f = " << report.trace << ")\n";
    for (const auto& ic : report.ideals) {
      std::cout << "  " << (ic.compatibly_split ? "compatible   " : "INCOMPATIBLE ") << ic.ideal.to_string() << "\n";
      for (const auto& v : ic.variables) {
        if (v.witness) {
          std::cout << "      {" << v.variable.name() << "=0}: multiplier " << v.witness->multiplier.to_string()
                    << " gives trace term " << v.witness->coeff << "*" << v.witness->trace_monomial.to_string()
                    << "\n";
        }
      }
    }
  }
  if (args.expect_split && !report.all_compatible()) return kExitCheckFailed;
  return kExitOk;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_timing) {
  cmd->add_option("--n", cfg.n, "matrix size");
  cmd->add_option("--p", cfg.p, "prime characteristic");
  cmd->add_option("--seed", cfg.seed_text, "random seed (decimal or 0x hex)");
  cmd->add_option("--cache-dir", cfg.cache_dir, "on-disk factor cache (default: $BSV_CACHE_DIR)");
  cmd->add_option("--max-n", cfg.caps.max_n, "largest n accepted")->check(CLI::Range(1, 6));
  cmd->add_option("--max-terms", cfg.caps.max_terms, "largest candidate polynomial");
  cmd->add_option("--max-search", cfg.caps.max_search, "largest candidate search space");
  cmd->add_flag_function(
      "--json", [&cfg](std::int64_t) { cfg.output = Output::json; }, "emit JSON");
  if (with_timing) {
    cmd->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1U, 256U));
    cmd->add_flag_function(
        "--no-timing", [&cfg](std::int64_t) { cfg.timing = false; }, "omit timing fields");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poset-ideal and Frobenius-splitting verifier for GL_n"};
  app.require_subcommand(1);

  RunConfig cfg;
  bool census = false;
  VerifyArgs vargs;
  SplitArgs sargs;

  auto* ideals = app.add_subcommand("ideals", "list the order ideals of [1,n]^2");
  add_common(ideals, cfg, false);
  ideals->add_flag("--census", census, "compare coordinate Lie ideals of b with the b[S] family");

  auto* verify = app.add_subcommand("verify", "verify the residue-step claims for one ideal or all of them");
  add_common(verify, cfg, true);
  verify->add_option("--ideal", vargs.ideal, "ideal as JSON, [[i,j],...] or {\"n\":..,\"members\":..}");
  verify->add_option("--parabolic", vargs.parabolic, "block sizes of a standard parabolic, e.g. 2,1");
  verify->add_option("--rank-mode", vargs.rank_mode, "auto | symbolic | randomized");
  verify->add_option("--trials", vargs.trials, "random trials for randomized checks")->check(CLI::Range(1, 100000));

  auto* split = app.add_subcommand("split", "test a candidate splitting against ideals");
  add_common(split, cfg, false);
  split->add_option("--candidate", sargs.candidate, "candidate DSL file")->required();
  split->add_option("--ideal", sargs.ideal, "restrict to one ideal (JSON)");
  split->add_flag("--expect-split", sargs.expect_split, "exit 1 unless the candidate splits all ideals compatibly");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(cfg, vargs);
    finalize(cfg);
    if (!cfg.n) throw bsv::DomainError("--n is required");
    if (ideals->parsed()) return cmd_ideals(cfg, census);
    return cmd_split(cfg, sargs);
  } catch (const bsv::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
  } catch (const bsv::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const bsv::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}
