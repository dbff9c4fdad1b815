#pragma once

// Independent verification by interpolation-matrix rank over a prime field.
// Full column rank at one random specialization certifies generic emptiness
// (all maximal minors vanish identically if the generic rank were smaller),
// while a rank deficit at a sample is evidence of a defect: the sample rank
// never exceeds the generic rank.

#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "waldcert/cremona.hpp"
#include "waldcert/hilbert.hpp"
#include "waldcert/system.hpp"

namespace waldcert {
namespace oracle {

inline constexpr std::uint64_t kDefaultPrime = 4611686018427387847ULL;  // 2^62 - 57
inline constexpr std::uint64_t kDefaultSeed = 20240917ULL;
inline constexpr long long kDefaultColumnCap = 3000;

namespace fp {
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (std::uint64_t)((unsigned __int128)a * b % p);
}
inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return pow(a, p - 2, p); }
}  // namespace fp

// Incremental row-reduction rank accumulator with early exit at full column
// rank. Pivot rows are kept normalized.
class RankAccumulator {
 public:
  RankAccumulator(long long columns, std::uint64_t p) : cols_(columns), p_(p) {}

  // Reduces the row in place and absorbs it; returns true if rank grew.
  bool add_row(std::vector<std::uint64_t>& row) {
    for (size_t r = 0; r < pivots_.size(); ++r) {
      std::uint64_t c = row[pivot_col_[r]];
      if (c == 0) continue;
      const auto& pr = pivots_[r];
      for (long long j = 0; j < cols_; ++j)
        if (pr[j]) row[j] = fp::sub(row[j], fp::mul(c, pr[j], p_), p_);
    }
    long long lead = -1;
    for (long long j = 0; j < cols_; ++j)
      if (row[j]) {
        lead = j;
        break;
      }
    if (lead < 0) return false;
    std::uint64_t s = fp::inv(row[lead], p_);
    for (long long j = lead; j < cols_; ++j) row[j] = fp::mul(row[j], s, p_);
    pivots_.push_back(row);
    pivot_col_.push_back(lead);
    return true;
  }

  long long rank() const { return (long long)pivots_.size(); }
  bool full() const { return rank() == cols_; }

 private:
  long long cols_;
  std::uint64_t p_;
  std::vector<std::vector<std::uint64_t>> pivots_;
  std::vector<long long> pivot_col_;
};

struct OracleResult {
  int N = 0;
  long long d = 0;
  std::vector<long long> mults;
  long long columns = 0;
  long long conditions = 0;
  long long rank = 0;
  long long dim_at_sample = 0;
  bool certified_empty = false;
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;

  std::string str() const {
    std::ostringstream os;
    os << "N=" << N << " d=" << d << " mults=[";
    for (size_t i = 0; i < mults.size(); ++i) os << (i ? "," : "") << mults[i];
    os << "] columns=" << columns << " conditions=" << conditions << " rank=" << rank
       << " dim=" << dim_at_sample << " certified=" << (certified_empty ? "yes" : "no");
    return os.str();
  }
};

namespace detail {
// Degree-d monomial exponent vectors in N+1 variables, lexicographic.
inline void enumerate_monomials(int nvars, long long d, std::vector<std::vector<int>>& out,
                                std::vector<int>& cur) {
  if ((int)cur.size() == nvars - 1) {
    cur.push_back((int)d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long long e = d; e >= 0; --e) {
    cur.push_back((int)e);
    enumerate_monomials(nvars, d - e, out, cur);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> monomials(int nvars, long long d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  enumerate_monomials(nvars, d, out, cur);
  return out;
}
}  // namespace detail

// Dimension of I(m_1,...,m_s)_d at a random specialization over F_p. The
// condition rows per point are the order-(m_i - 1) derivative conditions
// (lower orders follow from Euler's identity when p > d). Multiplicities
// exceeding d+1 use order-d rows, which force full rank -- the correct answer,
// since a nonzero degree-d form has multiplicity at most d at a point.
inline OracleResult system_dim(int N, long long d, const std::vector<long long>& mults,
                               std::uint64_t prime = kDefaultPrime,
                               std::uint64_t seed = kDefaultSeed,
                               long long column_cap = kDefaultColumnCap) {
  if (N < 1 || d < 0) throw std::invalid_argument("system_dim: bad N or d");
  for (long long m : mults)
    if (m <= 0) throw std::invalid_argument("system_dim: multiplicities must be positive");
  if (prime <= (std::uint64_t)d)
    throw std::invalid_argument("system_dim: prime must exceed the degree");
  Int cols = binomial(d + N, N);
  if (cols > column_cap) throw std::invalid_argument("system_dim: column cap exceeded");

  OracleResult res;
  res.N = N;
  res.d = d;
  res.mults = mults;
  res.columns = cols.get_si();
  res.prime = prime;
  res.seed = seed;
  for (long long m : mults) res.conditions += binomial(N + m - 1, N).get_si();

  auto cols_exp = detail::monomials(N + 1, d);

  // Small binomial table mod p for the derivative coefficients.
  int bmax = (int)d + 1;
  std::vector<std::vector<std::uint64_t>> binom(bmax + 1, std::vector<std::uint64_t>(bmax + 2, 0));
  for (int n = 0; n <= bmax; ++n) {
    binom[n][0] = 1 % prime;
    for (int k = 1; k <= n; ++k)
      binom[n][k] = fp::add(binom[n - 1][k], binom[n - 1][k - 1], prime);
  }

  std::mt19937_64 gen(seed);
  RankAccumulator acc(res.columns, prime);

  std::vector<std::uint64_t> row((size_t)res.columns);
  for (long long m : mults) {
    // Random point in the affine chart x_0 = 1.
    std::vector<std::uint64_t> pt(N + 1);
    pt[0] = 1;
    for (int j = 1; j <= N; ++j) pt[j] = gen() % prime;
    // Power table pt[j]^e.
    std::vector<std::vector<std::uint64_t>> pw(N + 1, std::vector<std::uint64_t>((size_t)d + 1));
    for (int j = 0; j <= N; ++j) {
      pw[j][0] = 1;
      for (long long e = 1; e <= d; ++e) pw[j][e] = fp::mul(pw[j][e - 1], pt[j], prime);
    }
    long long order = std::min(m - 1, d);
    auto rows_exp = detail::monomials(N + 1, order);
    for (const auto& beta : rows_exp) {
      bool nonzero_row = false;
      for (size_t c = 0; c < cols_exp.size(); ++c) {
        const auto& gamma = cols_exp[c];
        std::uint64_t v = 1;
        for (int j = 0; j <= N && v; ++j) {
          if (gamma[j] < beta[j]) {
            v = 0;
            break;
          }
          v = fp::mul(v, binom[gamma[j]][beta[j]], prime);
          v = fp::mul(v, pw[j][gamma[j] - beta[j]], prime);
        }
        row[c] = v;
        nonzero_row = nonzero_row || v;
      }
      if (nonzero_row) acc.add_row(row);
      if (acc.full()) break;
    }
    if (acc.full()) break;
  }

  res.rank = acc.rank();
  res.dim_at_sample = res.columns - res.rank;
  res.certified_empty = res.rank == res.columns;
  return res;
}

inline OracleResult system_dim(const SystemSpec& sys, const Int& m,
                               std::uint64_t prime = kDefaultPrime,
                               std::uint64_t seed = kDefaultSeed,
                               long long column_cap = kDefaultColumnCap) {
  Int d = sys.degree.eval(m);
  if (d < 0) throw std::invalid_argument("system_dim: negative degree instance");
  std::vector<long long> mults;
  for (const auto& e : sys.expanded()) {
    Int v = e.eval(m);
    if (v > 0) mults.push_back(v.get_si());
  }
  return system_dim(sys.N, d.get_si(), mults, prime, seed, column_cap);
}

// ---------------------------------------------------------------------------
// Alexander-Hirschowitz cross-check: the double-point Hilbert function must
// match the rank at a sample for every non-defective triple, and every listed
// defective triple must come out strictly below the min formula.

struct CrosscheckReport {
  bool ok = true;
  long long checked = 0;
  long long exceptional = 0;
  std::vector<std::string> failures;
};

inline CrosscheckReport ah_crosscheck(int n_max, long long s_max, long long d_max,
                                      std::uint64_t prime = kDefaultPrime,
                                      std::uint64_t seed = kDefaultSeed) {
  CrosscheckReport rep;
  for (int N = 1; N <= n_max; ++N)
    for (long long s = 1; s <= s_max; ++s)
      for (long long d = 0; d <= d_max; ++d) {
        auto h = hf_double(N, s, d);
        auto r = system_dim(N, d, std::vector<long long>(s, 2), prime,
                            mix64(seed ^ mix64((std::uint64_t)(N * 1000003 + s * 1009 + d))));
        ++rep.checked;
        if (h.exceptional) {
          ++rep.exceptional;
          Int cols = binomial(d + N, N), hp = Int(s) * (N + 1);
          Int minval = cols < hp ? cols : hp;
          if (Int(r.rank) >= minval) {
            rep.ok = false;
            rep.failures.push_back("no defect at listed exceptional triple " + r.str());
          }
        } else if (Int(r.rank) != h.value) {
          rep.ok = false;
          rep.failures.push_back("rank mismatch: expected " + h.value.get_str() + " at " + r.str());
        }
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Stress test of the reduction rule on concrete systems: whenever the reduced
// system is certified empty at a sample, the original must be as well.

struct RuleReport {
  long long trials = 0;
  long long reduced_empty = 0;
  long long violations = 0;
  std::vector<std::string> lines;
};

inline RuleReport validate_cremona_rule(int N, int trials, std::uint64_t seed = kDefaultSeed,
                                        std::uint64_t prime = kDefaultPrime) {
  if (N < 2 || N > 3) throw std::invalid_argument("validate_cremona_rule: N in {2,3}");
  RuleReport rep;
  std::mt19937_64 gen(seed);
  long long d_max = N == 2 ? 10 : 8;
  for (int t = 0; t < trials; ++t) {
    long long d = 1 + (long long)(gen() % d_max);
    long long s = (N + 1) + (long long)(gen() % (N + 3));
    SystemSpec sys;
    sys.N = N;
    sys.degree = LinExpr::constant(d);
    for (long long i = 0; i < s; ++i)
      sys.mults.emplace_back(LinExpr::constant(1 + (long long)(gen() % (d + 1))), 1);

    // Random selection of N+1 distinct indices.
    std::vector<long long> idx(s);
    for (long long i = 0; i < s; ++i) idx[i] = i;
    for (long long i = 0; i < N + 1; ++i) {
      long long j = i + (long long)(gen() % (s - i));
      std::swap(idx[i], idx[j]);
    }
    std::vector<long long> sel(idx.begin(), idx.begin() + N + 1);
    std::sort(sel.begin(), sel.end());

    auto step = cremona::cremona_step(sys, sel);
    ++rep.trials;
    std::uint64_t s1 = mix64(seed ^ mix64(2 * t));
    std::uint64_t s2 = mix64(seed ^ mix64(2 * t + 1));

    Int rd = step.reduced.degree.eval(1);
    bool reduced_empty;
    if (rd < 0) {
      reduced_empty = true;
    } else {
      auto r = system_dim(step.reduced, 1, prime, s1);
      reduced_empty = r.certified_empty;
    }
    if (!reduced_empty) continue;
    ++rep.reduced_empty;
    auto orig = system_dim(sys, 1, prime, s2);
    if (!orig.certified_empty) {
      ++rep.violations;
      rep.lines.push_back("rule violation at " + sys.str());
    }
  }
  return rep;
}

}  // namespace oracle
}  // namespace waldcert
