#pragma once

// Independent oracles and random generators shared by the test binaries.
// Nothing here calls into the code under test except for value types.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bsv/bsv.hpp"

namespace oracle {

// ---- poset ----

inline bool below(bsv::Position a, bsv::Position b) { return a.i >= b.i && a.j <= b.j; }

inline bool closed_downward(const std::vector<bsv::Position>& set, int n) {
  for (const auto& a : set) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const bsv::Position b{i, j};
        if (below(b, a) && std::find(set.begin(), set.end(), b) == set.end()) return false;
      }
    }
  }
  return true;
}

/// Every downward-closed subset of [1,n]^2, by filtering all 2^(n*n) subsets.
inline std::set<std::vector<bsv::Position>> brute_force_ideals(int n) {
  std::vector<bsv::Position> all;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) all.push_back({i, j});
  }
  std::set<std::vector<bsv::Position>> out;
  const std::uint32_t total = 1U << all.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    std::vector<bsv::Position> set;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (mask & (1U << k)) set.push_back(all[k]);
    }
    if (closed_downward(set, n)) out.insert(set);
  }
  return out;
}

// ---- F_p linear algebra ----

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

using Dense = std::vector<std::vector<std::uint64_t>>;

inline Dense matmul(const Dense& a, const Dense& b, std::uint64_t p) {
  Dense c(a.size(), std::vector<std::uint64_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] = (c[i][j] + mulmod(a[i][k], b[k][j], p)) % p;
    }
  }
  return c;
}

/// Leibniz formula over all permutations.
inline std::uint64_t leibniz_det(const Dense& a, std::uint64_t p) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[k] = k;
  std::uint64_t total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    std::uint64_t term = 1;
    for (std::size_t i = 0; i < n; ++i) term = mulmod(term, a[i][perm[i]], p);
    total = inversions % 2 ? (total + p - term) % p : (total + term) % p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Inverse of a lower unitriangular matrix by forward substitution.
inline Dense lower_unit_inverse(const Dense& g, std::uint64_t p) {
  const std::size_t n = g.size();
  Dense inv(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    inv[c][c] = 1;
    for (std::size_t r = c + 1; r < n; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t k = c; k < r; ++k) acc = (acc + mulmod(g[r][k], inv[k][c], p)) % p;
      inv[r][c] = (p - acc) % p;
    }
  }
  return inv;
}

/// det((g (X + delta) g^-1)_{<=r,<=r}) at a point, with X supported off S
/// and delta the ones at upper members of S on the stripe i+n-j = r.
inline std::uint64_t factor_at(const bsv::PosetIdeal& s, int r, const bsv::Point& pt, std::uint64_t p) {
  const int n = s.n();
  Dense g(n, std::vector<std::uint64_t>(n, 0));
  Dense m(n, std::vector<std::uint64_t>(n, 0));
  for (int i = 1; i <= n; ++i) {
    g[i - 1][i - 1] = 1;
    for (int j = 1; j < i; ++j) g[i - 1][j - 1] = pt.at(bsv::VarId::g(i, j));
    for (int j = i; j <= n; ++j) {
      if (s.contains({i, j})) {
        m[i - 1][j - 1] = (i + n - j == r) ? 1 : 0;
      } else {
        m[i - 1][j - 1] = pt.at(bsv::VarId::x(i, j));
      }
    }
  }
  const Dense c = matmul(matmul(g, m, p), lower_unit_inverse(g, p), p);
  Dense lead(r, std::vector<std::uint64_t>(r));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) lead[i][j] = c[i][j];
  }
  return leibniz_det(lead, p);
}

// ---- trace map and compatibility by definition ----

using Exponents = std::vector<std::uint32_t>;

inline Exponents exponents_of(const bsv::Monomial& m, const std::vector<bsv::VarId>& universe) {
  Exponents e;
  for (const auto& v : universe) e.push_back(m.exponent(v));
  return e;
}

/// Tr(f) as a map exponent-vector -> coefficient; requires every exponent of
/// a surviving term to be p-1 mod p.
inline std::map<Exponents, std::uint64_t> trace(const std::vector<std::pair<Exponents, std::uint64_t>>& terms,
                                                std::uint64_t p) {
  std::map<Exponents, std::uint64_t> out;
  for (const auto& [e, c] : terms) {
    bool keep = true;
    for (auto a : e) keep = keep && (a % p == p - 1);
    if (!keep) continue;
    Exponents q;
    for (auto a : e) q.push_back(static_cast<std::uint32_t>((a - (p - 1)) / p));
    out[q] = (out[q] + c) % p;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Tr(f * v * x^m) lies in (v) for every m in [0,p-1]^universe.
inline bool compatible_by_definition(const bsv::FpPoly& f, bsv::VarId v, const std::vector<bsv::VarId>& universe) {
  const std::uint64_t p = f.ring().characteristic();
  std::size_t vpos = universe.size();
  std::vector<std::pair<Exponents, std::uint64_t>> base;
  for (std::size_t k = 0; k < universe.size(); ++k) {
    if (universe[k] == v) vpos = k;
  }
  for (const auto& t : f.terms()) base.emplace_back(exponents_of(t.monomial, universe), t.coeff);
  Exponents m(universe.size(), 0);
  while (true) {
    std::vector<std::pair<Exponents, std::uint64_t>> shifted;
    for (const auto& [e, c] : base) {
      Exponents s = e;
      for (std::size_t k = 0; k < s.size(); ++k) s[k] += m[k];
      s[vpos] += 1;
      shifted.emplace_back(std::move(s), c);
    }
    for (const auto& [e, c] : trace(shifted, p)) {
      if (e[vpos] == 0) return false;
    }
    std::size_t k = 0;
    while (k < m.size() && m[k] == p - 1) m[k++] = 0;
    if (k == m.size()) break;
    ++m[k];
  }
  return true;
}

}  // namespace oracle

namespace gen {

using Rng = std::mt19937_64;

inline std::vector<bsv::VarId> random_universe(Rng& rng, std::size_t max_vars) {
  auto pool = bsv::chart_universe(4);
  std::shuffle(pool.begin(), pool.end(), rng);
  const std::size_t k = 1 + rng() % std::min(max_vars, pool.size());
  pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k), pool.end());
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline bsv::IntPoly random_int_poly(Rng& rng, const std::vector<bsv::VarId>& vars, int max_terms = 5,
                                    int max_exp = 3, int coeff_range = 7) {
  const bsv::IntegerRing zz;
  bsv::IntPoly f(zz);
  const int terms = static_cast<int>(rng() % (max_terms + 1));
  for (int t = 0; t < terms; ++t) {
    std::vector<bsv::Monomial::Factor> fs;
    for (const auto& v : vars) {
      const auto e = static_cast<std::uint32_t>(rng() % (max_exp + 1));
      if (e && rng() % 2) fs.emplace_back(v, e);
    }
    const long c = static_cast<long>(rng() % (2 * coeff_range + 1)) - coeff_range;
    f += bsv::IntPoly::monomial(zz, bsv::Monomial(std::move(fs)), zz.from_int(c));
  }
  return f;
}

/// Random F_p polynomial whose v-exponents lean towards >= p-1, so both
/// compatible and incompatible cases occur.
inline bsv::FpPoly random_fp_poly(Rng& rng, const std::vector<bsv::VarId>& vars, bsv::VarId v, std::uint64_t p,
                                  int max_terms) {
  const bsv::PrimeField field(p);
  bsv::FpPoly f(field);
  const int terms = 1 + static_cast<int>(rng() % max_terms);
  for (int t = 0; t < terms; ++t) {
    std::vector<bsv::Monomial::Factor> fs;
    for (const auto& w : vars) {
      std::uint32_t e = static_cast<std::uint32_t>(rng() % (2 * p));
      if (w == v && rng() % 4 != 0) e = static_cast<std::uint32_t>(p - 1 + rng() % (p + 1));
      if (e) fs.emplace_back(w, e);
    }
    f += bsv::FpPoly::monomial(field, bsv::Monomial(std::move(fs)), 1 + rng() % (p - 1));
  }
  return f;
}

inline bsv::Point random_point(Rng& rng, const std::vector<bsv::VarId>& vars, std::uint64_t p) {
  bsv::Point pt;
  for (const auto& v : vars) pt[v] = rng() % p;
  return pt;
}

}  // namespace gen

namespace proc {

struct Result {
  int status = -1;
  std::string out;
};

/// Runs a shell command and captures stdout.
inline Result run(const std::string& cmd) {
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace proc
