#pragma once

// Verdict pipeline for the m = 2 Demailly inequality
//   ahat(I) >= (alpha(I^(2)) + N - 1)/(N + 1)
// over generic points: required thresholds from the bracket lemmas, the
// containment exponent, the binomial-inequality lemmas, per-case verdicts,
// and the batch suites reproducing the published case ranges.

#include <atomic>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "waldcert/bounds.hpp"
#include "waldcert/hilbert.hpp"

namespace waldcert {
namespace demailly {

struct Threshold {
  long long ell;
  Rat required;
  long long reg_bound;   // General mode: the (possibly adjusted) reg upper bound
  bool adjusted;         // reg bound moved past a defective degree
};

// VeryGeneral: alpha(I^(2)) <= ell + 1 gives required (N + ell)/(N + 1).
// General: reg(I^(2)) <= reg_bound gives required (reg_bound + N - 1)/(N + 1);
// reg_bound is ell + 2 except where a defective degree forces it upward.
inline Threshold required_threshold(int N, long long s, PointMode mode) {
  long long ell = ell_bracket(N, s, mode).ell;
  if (mode == PointMode::VeryGeneral) {
    return {ell, Rat(N + ell, N + 1), 0, false};
  }
  auto reg = reg2_upper(N, s);
  return {ell, Rat(reg.bound + N - 1, N + 1), reg.bound, reg.adjusted};
}

// Least r with (r(N+1) - N + 1) * ahatLB >= r * (regUB + N - 1), which gives
// alpha(I^{(r(N+1)-N+1)}) >= r regUB + r(N-1) via alpha(I^{(t)}) >= t ahat.
// At equality no explicit r follows (the containment exists by a limit
// argument only), so none is returned.
inline std::optional<long long> containment_exponent(int N, const Rat& ahat_lb, long long reg_ub) {
  if (ahat_lb <= Rat(0)) throw std::invalid_argument("containment_exponent: bound must be positive");
  Rat lhs = Rat(N + 1) * ahat_lb;
  Rat rhs = Rat(reg_ub + N - 1);
  if (lhs <= rhs) return std::nullopt;
  Rat r = (Rat(N - 1) * ahat_lb) / (lhs - rhs);
  Int rc = ceil_div(r.num(), r.den());
  if (rc < 1) rc = 1;
  return rc.get_si();
}

// ---------------------------------------------------------------------------
// Binomial-inequality lemmas.

enum class Lemma { Case1, Case2, HowFarA, HowFarB, HowFarC };

// Case1: C(N+l,N) >= (N+1) C(N+l-2,N), equivalent to l^2 - 3l - (N-1) <= 0.
inline bool case1_binomial(int N, long long ell) {
  return binomial(N + ell, N) >= Int(N + 1) * binomial(N + ell - 2, N);
}
inline bool case1_quadratic(int N, long long ell) {
  return Int(ell) * ell - 3 * ell - (N - 1) <= 0;
}

// Case2: C(N+l,N)/(N+1) >= C(N-1+l,N-1)/N + C(N+l-2,N-1)/N + 1, equivalent to
// (N+l-2)!/(l!(N+1)!) (l^2 - 3l - N + 1) >= 1.
inline bool case2_binomial(int N, long long ell) {
  Rat lhs = Rat(binomial(N + ell, N), N + 1);
  Rat rhs = Rat(binomial(N - 1 + ell, N - 1), N) + Rat(binomial(N + ell - 2, N - 1), N) + Rat(1);
  return lhs >= rhs;
}
inline bool case2_product(int N, long long ell) {
  Int num, den;
  mpz_fac_ui(num.get_mpz_t(), (unsigned long)(N + ell - 2));
  Int fl, fn;
  mpz_fac_ui(fl.get_mpz_t(), (unsigned long)ell);
  mpz_fac_ui(fn.get_mpz_t(), (unsigned long)(N + 1));
  den = fl * fn;
  Rat prod = Rat(num, den) * Rat(Int(ell) * ell - 3 * ell - N + 1);
  return prod >= Rat(1);
}

// The two forms of each equivalence agree exactly (identity check).
inline bool case_equivalence_holds(Lemma which, int N, long long ell) {
  if (which == Lemma::Case1) return case1_binomial(N, ell) == case1_quadratic(N, ell);
  if (which == Lemma::Case2) {
    Rat lhs = Rat(binomial(N + ell, N), N + 1) - Rat(binomial(N - 1 + ell, N - 1), N) -
              Rat(binomial(N + ell - 2, N - 1), N);
    Int num;
    mpz_fac_ui(num.get_mpz_t(), (unsigned long)(N + ell - 2));
    Int fl, fn;
    mpz_fac_ui(fl.get_mpz_t(), (unsigned long)ell);
    mpz_fac_ui(fn.get_mpz_t(), (unsigned long)(N + 1));
    Rat prod = Rat(num, fl * fn) * Rat(Int(ell) * ell - 3 * ell - N + 1);
    return lhs == prod;
  }
  return true;
}

inline bool check_binomial_lemma(Lemma which, int N, long long ell = 0) {
  switch (which) {
    case Lemma::Case1: return case1_binomial(N, ell);
    case Lemma::Case2: return case2_product(N, ell);
    case Lemma::HowFarA: {
      Int p;
      mpz_ui_pow_ui(p.get_mpz_t(), 4, (unsigned long)N);
      return p * (N + 1) <= binomial(3 * N + 2, N);
    }
    case Lemma::HowFarB: {
      Int p;
      mpz_ui_pow_ui(p.get_mpz_t(), 3, (unsigned long)N);
      return p * (N + 1) <= binomial(2 * N + 2, N);
    }
    case Lemma::HowFarC: {
      Int p;
      mpz_ui_pow_ui(p.get_mpz_t(), 3, (unsigned long)N);
      return p * (N + 1) <= binomial(2 * N + 3, N);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Verdicts.

enum class Status { Proven, Unproven, Discrepancy };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Proven: return "PROVEN";
    case Status::Unproven: return "UNPROVEN";
    case Status::Discrepancy: return "DISCREPANCY";
  }
  return "?";
}

struct Verdict {
  int N = 0;
  long long s = 0;
  PointMode mode = PointMode::General;
  long long ell = 0;
  Rat required;
  long long reg_bound = 0;
  FactPtr achieved;
  Status status = Status::Unproven;
  std::optional<long long> containment_r;
  std::string note;
  std::string correspondence;  // theorem/case label the row reproduces
};

// Cases covered by the verified derivations themselves (the encoded rule set
// does not import the literature results quoted for the remaining ranges, so
// cases outside these sets degrade to UNPROVEN rather than DISCREPANCY).
inline bool paper_claims(int N, long long s, PointMode mode) {
  if (mode == PointMode::General) {
    if (N == 3) return 6 <= s && s <= 216;
    if (N == 4) return 8 <= s && s <= 625;
    if (N == 5) return (s == 8 || s == 9) || (14 <= s && s <= 1024);
    if (N >= 6) {
      Int lo = Int(1) << N, hi;
      mpz_ui_pow_ui(hi.get_mpz_t(), 4, (unsigned long)N);
      return lo <= s && s <= hi;
    }
    return false;
  }
  // Very general: the N >= 5 trichotomy range, plus the low-dimensional
  // ranges whose generic-point derivations specialize.
  if (N >= 5 && N + 3 <= s && Int(s) <= (Int(1) << N)) return true;
  if (N == 3) return 6 <= s && s <= 216;
  if (N == 4) return 8 <= s && s <= 625;
  if (N == 5) return (s == 8 || s == 9) || (14 <= s && s <= 1024);
  return false;
}

inline bool declared_open(int N, long long s, PointMode mode) {
  return mode == PointMode::General && N == 5 && 10 <= s && s <= 13;
}

inline std::string correspondence_label(int N, long long s, PointMode mode, long long ell) {
  std::ostringstream os;
  if (mode == PointMode::VeryGeneral) {
    if (N >= 5) {
      os << "3.2";
      if (ell <= 3)
        os << " (small ell)";
      else if (case1_quadratic(N, ell))
        os << " case 1";
      else
        os << " case 2";
    } else {
      os << "3.1 bracket";
    }
    return os.str();
  }
  if (N == 3) {
    if (ell == 3) return "5.1.1";
    if (ell == 4) return "5.1.2";
    if (ell == 5) return "5.1.3";
    if (ell == 6) return "5.1.4";
    if (ell <= 8) return "5.1.5";
    if (ell == 9) return "5.1.6";
    if (ell <= 12) return "5.1.7";
    if (ell <= 15) return "5.1.8";
    return "5.1";
  }
  if (N == 4) {
    if (ell == 3) return "5.2.1";
    if (ell == 4) return "5.2.2";
    if (ell == 5) return "5.2.3";
    if (ell == 6) return "5.2.4";
    if (ell == 7) return "5.2.5";
    if (ell <= 10) return "5.2.6";
    if (ell <= 14) return "5.2.7";
    return "5.2";
  }
  if (N == 5) {
    if (declared_open(N, s, mode)) return "5.5 (open)";
    if (ell == 2) return "5.3.1";
    if (ell == 3) return "5.3.2";
    if (ell == 4) return "5.3.3";
    if (ell <= 6) return "5.3.4";
    if (ell == 7) return "5.3.5";
    if (ell == 8) return "5.3.6";
    if (ell <= 11) return "5.3.8";
    return "5.3";
  }
  os << "4.4";
  if (N == 6 && (ell == 8 || ell == 9)) os << " case 1(" << (ell == 8 ? "ii" : "iii") << ")";
  return os.str();
}

inline Verdict verify_case(bounds::BoundEngine& engine, int N, long long s, PointMode mode) {
  if (N < 3) throw std::invalid_argument("verify_case: N >= 3 required");
  Verdict v;
  v.N = N;
  v.s = s;
  v.mode = mode;
  auto th = required_threshold(N, s, mode);
  v.ell = th.ell;
  v.required = th.required;
  v.reg_bound = th.reg_bound;
  v.achieved = engine.derive(N, s);
  v.correspondence = correspondence_label(N, s, mode, th.ell);
  if (v.achieved->bound >= v.required) {
    v.status = Status::Proven;
    if (mode == PointMode::General) {
      v.containment_r = containment_exponent(N, v.achieved->bound, th.reg_bound);
      if (!v.containment_r)
        v.note = "equality: containment exponent exists by limit argument only";
    }
  } else if (paper_claims(N, s, mode) && !declared_open(N, s, mode)) {
    v.status = Status::Discrepancy;
    v.note = "required " + v.required.str() + " vs achieved " + v.achieved->bound.str();
    if (th.adjusted) v.note += " (defective-degree reg adjustment " + std::to_string(th.reg_bound) + ")";
  } else {
    v.status = Status::Unproven;
    v.note = declared_open(N, s, mode) ? "known open case" : "outside verified ranges";
  }
  return v;
}

// ---------------------------------------------------------------------------
// Suites.

struct SuiteCase {
  int N;
  long long s;
  PointMode mode;
};

struct SuiteReport {
  std::string name;
  std::vector<Verdict> rows;
  long long proven = 0, unproven = 0, discrepancy = 0;
  std::vector<std::string> lemma_lines;  // the "lemmas" suite
  bool lemmas_ok = true;
  bool ok() const {
    if (discrepancy > 0 || !lemmas_ok) return false;
    for (auto& r : rows)
      if (r.status == Status::Unproven && !declared_open(r.N, r.s, r.mode)) return false;
    return true;
  }
};

inline std::vector<SuiteCase> suite_cases(const std::string& name, int n_max = 12) {
  std::vector<SuiteCase> cases;
  if (name == "thm5.1") {
    for (long long s = 6; s <= 216; ++s) cases.push_back({3, s, PointMode::General});
  } else if (name == "thm5.2") {
    for (long long s = 8; s <= 625; ++s) cases.push_back({4, s, PointMode::General});
  } else if (name == "thm5.3") {
    for (long long s = 8; s <= 1024; ++s) cases.push_back({5, s, PointMode::General});
  } else if (name == "thm3.2") {
    for (int N = 5; N <= n_max; ++N)
      for (long long s = N + 3; s <= (1LL << N); ++s) cases.push_back({N, s, PointMode::VeryGeneral});
  } else if (name == "thm4.4") {
    // One row per (N, ell bracket), checked at the bracket-minimal point
    // count: the required value is constant on the bracket and the achieved
    // bound is nondecreasing in s, so the minimal s is the binding case.
    for (int N = 6; N <= n_max; ++N) {
      Int lo = Int(1) << N, hi;
      mpz_ui_pow_ui(hi.get_mpz_t(), 4, (unsigned long)N);
      long long ell_lo = ell_bracket(N, lo.get_si(), PointMode::General).ell;
      long long ell_hi = ell_bracket(N, hi.get_si(), PointMode::General).ell;
      for (long long ell = ell_lo; ell <= ell_hi; ++ell) {
        // least s with bracket ell: C(N+ell,N) < (N+1)s, clamped to [2^N, 4^N]
        Int smin = floor_div(binomial(N + ell, N), N + 1) + 1;
        if (smin < lo) smin = lo;
        if (smin > hi) continue;
        if (ell_bracket(N, smin.get_si(), PointMode::General).ell != ell) continue;
        cases.push_back({N, smin.get_si(), PointMode::General});
      }
    }
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
  return cases;
}

inline void run_lemma_suite(SuiteReport& rep) {
  auto line = [&](bool ok, const std::string& what) {
    rep.lemma_lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) rep.lemmas_ok = false;
  };
  for (int N = 5; N <= 40; ++N)
    line(check_binomial_lemma(Lemma::HowFarA, N), "4^N(N+1) <= C(3N+2,N) at N=" + std::to_string(N));
  // Boundary probes one below each stated range.
  line(!check_binomial_lemma(Lemma::HowFarB, 10), "3^N(N+1) <= C(2N+2,N) fails at N=10");
  for (int N = 11; N <= 40; ++N)
    line(check_binomial_lemma(Lemma::HowFarB, N), "3^N(N+1) <= C(2N+2,N) at N=" + std::to_string(N));
  line(!check_binomial_lemma(Lemma::HowFarC, 6), "3^N(N+1) <= C(2N+3,N) fails at N=6");
  for (int N = 7; N <= 40; ++N)
    line(check_binomial_lemma(Lemma::HowFarC, N), "3^N(N+1) <= C(2N+3,N) at N=" + std::to_string(N));
  for (int N = 5; N <= 40; ++N) {
    bool eq = true, ranges = true;
    for (long long ell = 2; ell <= 3 * N; ++ell) {
      eq = eq && case_equivalence_holds(Lemma::Case1, N, ell) &&
           case_equivalence_holds(Lemma::Case2, N, ell);
      // In-range truth: the quadratic criterion decides each case form.
      if (case1_quadratic(N, ell) && !case1_binomial(N, ell)) ranges = false;
      if (!case1_quadratic(N, ell) && ell >= 2 && !case2_product(N, ell)) ranges = false;
    }
    line(eq, "case 1/2 equivalences at N=" + std::to_string(N));
    line(ranges, "case 1/2 criteria in range at N=" + std::to_string(N));
  }
}

inline SuiteReport run_suite(bounds::BoundEngine& engine, const std::string& name, int jobs = 1,
                             int n_max = 12) {
  SuiteReport rep;
  rep.name = name;
  if (name == "lemmas") {
    run_lemma_suite(rep);
    return rep;
  }
  auto cases = suite_cases(name, n_max);
  rep.rows.resize(cases.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= cases.size()) return;
      rep.rows[i] = verify_case(engine, cases[i].N, cases[i].s, cases[i].mode);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::sort(rep.rows.begin(), rep.rows.end(), [](const Verdict& a, const Verdict& b) {
    if (a.N != b.N) return a.N < b.N;
    return a.s < b.s;
  });
  for (auto& r : rep.rows) {
    if (r.status == Status::Proven) ++rep.proven;
    if (r.status == Status::Unproven) ++rep.unproven;
    if (r.status == Status::Discrepancy) ++rep.discrepancy;
  }
  return rep;
}

}  // namespace demailly
}  // namespace waldcert
