#pragma once

// Knowledge base of imported Waldschmidt-constant facts plus the derivation
// combinators (monotone lift, doubling split, clumping, Chudnovsky-type
// schema, Waldschmidt decomposition) and the memoizing orchestrator that
// assembles the best certified lower bound for ahat(P^N, s).

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "waldcert/cremona.hpp"
#include "waldcert/hilbert.hpp"
#include "waldcert/proof.hpp"

namespace waldcert {
namespace bounds {

// ---------------------------------------------------------------------------
// Imported value axioms.

inline constexpr const char* kTagGrid = "grid-exact";            // ahat(k^N) = k
inline constexpr const char* kTagSimplex1 = "simplex-plus-one";  // ahat(N+1) >= (N+1)/N
inline constexpr const char* kTagSimplex2 = "simplex-plus-two";  // ahat(N+2) >= (N+2)/N
inline constexpr const char* kTagSimplex3 = "simplex-plus-three";  // ahat(N+3) >= (N+2)/N
inline constexpr const char* kTagP3Seven = "p3-seven";             // ahat(P^3,7) >= 28/15
inline constexpr const char* kTagP3Fourteen = "p3-fourteen";       // ahat(P^3,14) >= 7/3
inline constexpr const char* kTagP3TwentyOne = "p3-twentyone";     // ahat(P^3,21) >= 8/3
inline constexpr const char* kTagP4Eight = "p4-eight";             // ahat(P^4,8) >= 8/5

inline FactPtr make_axiom(int N, long long s, const Rat& bound, const std::string& tag) {
  auto f = std::make_shared<BoundFact>();
  f->N = N;
  f->s = s;
  f->bound = bound;
  f->rule = FactRule::Axiom;
  f->tag = tag;
  return f;
}

// Checker-side membership test for axiom leaves.
inline bool is_known_axiom(int N, long long s, const Rat& bound, const std::string& tag) {
  if (N < 1 || s < 1) return false;
  if (tag == kTagGrid) {
    Int k = iroot(s, (unsigned long)N);
    Int kn;
    mpz_pow_ui(kn.get_mpz_t(), k.get_mpz_t(), (unsigned long)N);
    return kn == s && bound == Rat(k);
  }
  if (tag == kTagSimplex1) return s == N + 1 && bound == Rat(N + 1, N);
  if (tag == kTagSimplex2) return s == N + 2 && bound == Rat(N + 2, N);
  if (tag == kTagSimplex3) return s == N + 3 && bound == Rat(N + 2, N);
  if (tag == kTagP3Seven) return N == 3 && s == 7 && bound == Rat(28, 15);
  if (tag == kTagP3Fourteen) return N == 3 && s == 14 && bound == Rat(7, 3);
  if (tag == kTagP3TwentyOne) return N == 3 && s == 21 && bound == Rat(8, 3);
  if (tag == kTagP4Eight) return N == 4 && s == 8 && bound == Rat(8, 5);
  return false;
}

// Every axiom instance applicable at (N, s' <= s).
inline std::vector<FactPtr> kb_axioms(int N, long long s) {
  std::vector<FactPtr> out;
  Int kmax = iroot(s, (unsigned long)N);
  for (Int k = 1; k <= kmax; ++k) {
    Int kn;
    mpz_pow_ui(kn.get_mpz_t(), k.get_mpz_t(), (unsigned long)N);
    out.push_back(make_axiom(N, kn.get_si(), Rat(k), kTagGrid));
  }
  if (s >= N + 1) out.push_back(make_axiom(N, N + 1, Rat(N + 1, N), kTagSimplex1));
  if (s >= N + 2) out.push_back(make_axiom(N, N + 2, Rat(N + 2, N), kTagSimplex2));
  if (s >= N + 3) out.push_back(make_axiom(N, N + 3, Rat(N + 2, N), kTagSimplex3));
  if (N == 3) {
    if (s >= 7) out.push_back(make_axiom(3, 7, Rat(28, 15), kTagP3Seven));
    if (s >= 14) out.push_back(make_axiom(3, 14, Rat(7, 3), kTagP3Fourteen));
    if (s >= 21) out.push_back(make_axiom(3, 21, Rat(8, 3), kTagP3TwentyOne));
  }
  if (N == 4 && s >= 8) out.push_back(make_axiom(4, 8, Rat(8, 5), kTagP4Eight));
  return out;
}

// ---------------------------------------------------------------------------
// Combinators.

inline FactPtr monotone_lift(const FactPtr& fact, long long s_to) {
  if (!fact) throw std::invalid_argument("monotone_lift: null fact");
  if (fact->mixed()) throw std::invalid_argument("monotone_lift: mixed fact not allowed");
  if (s_to < fact->s) throw std::invalid_argument("monotone_lift: target below source count");
  if (s_to == fact->s) return fact;
  auto f = std::make_shared<BoundFact>();
  f->N = fact->N;
  f->s = s_to;
  f->bound = fact->bound;
  f->rule = FactRule::Lift;
  f->inputs = {fact};
  return f;
}

inline FactPtr weaken(const FactPtr& fact, const Rat& bound_to) {
  if (!fact) throw std::invalid_argument("weaken: null fact");
  if (bound_to > fact->bound) throw std::invalid_argument("weaken: target above certified bound");
  if (bound_to == fact->bound) return fact;
  auto f = std::make_shared<BoundFact>();
  f->N = fact->N;
  f->s = fact->s;
  f->bound = bound_to;
  f->rule = FactRule::Weaken;
  f->inputs = {fact};
  return f;
}

// ahat(P^N, 2^N q) >= 2 ahat(P^N, q).
inline FactPtr double_points_split(const FactPtr& fact) {
  if (!fact) throw std::invalid_argument("double_points_split: null fact");
  if (fact->mixed()) throw std::invalid_argument("double_points_split: mixed fact not allowed");
  auto f = std::make_shared<BoundFact>();
  f->N = fact->N;
  Int target = Int(fact->s) << fact->N;
  if (!target.fits_slong_p()) throw std::overflow_error("double_points_split: count overflow");
  f->s = target.get_si();
  f->bound = fact->bound * Rat(2);
  f->rule = FactRule::Split;
  f->inputs = {fact};
  return f;
}

// s >= C(N+c, N) for some c >= 2 gives ahat >= (N+c+1)/N; largest such c.
inline std::optional<FactPtr> chudnovsky_bound(int N, long long s) {
  if (N < 1 || s < 1) throw std::invalid_argument("chudnovsky_bound: bad arguments");
  long long best = -1;
  for (long long c = 2; binomial(N + c, N) <= s; ++c) best = c;
  if (best < 0) return std::nullopt;
  auto f = std::make_shared<BoundFact>();
  f->N = N;
  f->s = s;
  f->bound = Rat(N + best + 1, N);
  f->rule = FactRule::Chudnovsky;
  f->chud_c = best;
  return f;
}

// Waldschmidt decomposition: from k+1 facts in P^{N-1} with a_j = bound_j,
//   k <= a_j <= k+1 (j <= k), a_1 > k, a_{k+1} <= k+1,
// conclude ahat(P^N, sum r_j) >= (1 - sum_{j<=k} 1/a_j) a_{k+1} + k.
inline FactPtr decompose(int N, long long k, const std::vector<FactPtr>& facts) {
  if (N < 2 || k < 1) throw std::invalid_argument("decompose: need N >= 2, k >= 1");
  if ((long long)facts.size() != k + 1)
    throw std::invalid_argument("decompose: need exactly k+1 facts");
  for (auto& f : facts) {
    if (!f || f->mixed()) throw std::invalid_argument("decompose: bad input fact");
    if (f->N != N - 1)
      throw std::invalid_argument("decompose: inputs must live in P^(N-1)");
  }
  Rat kk(k), k1(k + 1);
  for (long long j = 0; j < k; ++j) {
    const Rat& a = facts[j]->bound;
    if (a < kk || a > k1)
      throw std::invalid_argument("decompose: precondition k <= a_" + std::to_string(j + 1) +
                                  " <= k+1 violated (a = " + a.str() + ")");
  }
  if (facts[0]->bound <= kk)
    throw std::invalid_argument("decompose: precondition a_1 > k violated (a_1 = " +
                                facts[0]->bound.str() + ")");
  if (facts[k]->bound > k1)
    throw std::invalid_argument("decompose: precondition a_{k+1} <= k+1 violated (a_{k+1} = " +
                                facts[k]->bound.str() + ")");
  Rat coef(1);
  long long total = 0;
  for (long long j = 0; j < k; ++j) coef = coef - Rat(1) / facts[j]->bound;
  for (auto& f : facts) total += f->s;
  auto out = std::make_shared<BoundFact>();
  out->N = N;
  out->s = total;
  out->bound = coef * facts[k]->bound + kk;
  out->rule = FactRule::Decompose;
  out->k = k;
  out->inputs = facts;
  return out;
}

// Clumping obligation: bounding ahat(P^N, 2^N a + b) reduces to the mixed
// pattern (2^a, 1^b), discharged by the reduction engine on the scaled
// family I((2 q m)^a, (q m)^b)_{p m - 1}.
inline SystemSpec clump_obligation(int N, long long a, long long b, const Int& p, const Int& q) {
  if (a < 0 || b < 0 || a + b < 1) throw std::invalid_argument("clump_obligation: bad counts");
  SystemSpec sys;
  sys.N = N;
  sys.degree = LinExpr(p, -1);
  if (a > 0) sys.mults.emplace_back(LinExpr(2 * q, 0), a);
  if (b > 0) sys.mults.emplace_back(LinExpr(q, 0), b);
  return sys;
}

inline FactPtr clump_from_mixed(int N, long long a, long long b, const FactPtr& mixed) {
  if (!mixed || !mixed->mixed()) throw std::invalid_argument("clump: mixed fact required");
  if (mixed->N != N) throw std::invalid_argument("clump: dimension mismatch");
  std::vector<std::pair<long long, long long>> want;
  if (a > 0) want.emplace_back(2, a);
  if (b > 0) want.emplace_back(1, b);
  if (mixed->pattern != want)
    throw std::invalid_argument("clump: mixed fact pattern does not match (2^a, 1^b)");
  Int target = (Int(a) << N) + b;
  if (!target.fits_slong_p()) throw std::overflow_error("clump: count overflow");
  auto f = std::make_shared<BoundFact>();
  f->N = N;
  f->s = target.get_si();
  f->bound = mixed->bound;
  f->rule = FactRule::Clump;
  f->inputs = {mixed};
  f->clump_doubles = a;
  f->clump_simples = b;
  return f;
}

// ---------------------------------------------------------------------------
// Orchestrator.

enum class Strategy { Paper, Search };

class BoundEngine {
 public:
  explicit BoundEngine(Strategy strategy = Strategy::Paper, int search_depth = 3)
      : strategy_(strategy), depth_(search_depth) {}

  // Best certified bound for s generic simple points in P^N. Always at least
  // the trivial ahat >= 1.
  FactPtr derive(int N, long long s) {
    if (N < 2 || s < 1) throw std::invalid_argument("derive: need N >= 2, s >= 1");
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = memo_.find({N, s});
      if (it != memo_.end()) return it->second;
    }
    FactPtr best = compute(N, s);
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = memo_.emplace(std::make_pair(N, s), best);
    return it->second;
  }

  // Discharge a clumping obligation through the reduction engine.
  std::optional<FactPtr> clump(int N, long long a, long long b, const Int& p, const Int& q) {
    auto sys = clump_obligation(N, a, b, p, q);
    auto cert = cremona::prove_empty(sys);
    if (!cert) return std::nullopt;
    auto mixed = cremona::mixed_bound_from_empty(cert);
    return clump_from_mixed(N, a, b, mixed);
  }

 private:
  static void consider(FactPtr& best, const FactPtr& candidate) {
    if (candidate && (!best || candidate->bound > best->bound)) best = candidate;
  }

  FactPtr compute(int N, long long s) {
    FactPtr best;
    // Value axioms at s' <= s, lifted.
    for (auto& ax : kb_axioms(N, s)) consider(best, monotone_lift(ax, s));
    // Chudnovsky-type schema.
    if (auto c = chudnovsky_bound(N, s)) consider(best, *c);
    // Doubling split of the best fact at floor(s / 2^N).
    if (N < 62) {
      long long q = s >> N;
      if (q >= 1) consider(best, monotone_lift(double_points_split(derive(N, q)), s));
    }
    // Scripted reduction/decomposition facts for the low-dimensional cases.
    for (auto& f : scripted(N))
      if (f->s <= s) consider(best, monotone_lift(f, s));
    // Decomposition into P^{N-1} with the bracket targets (N >= 5 only; the
    // P^3 and P^4 scripts are the base of the recursion).
    if (N >= 5) consider(best, decompose_candidate(N, s));
    if (strategy_ == Strategy::Search) consider(best, search_extra(N, s));
    if (!best) best = make_axiom(N, 1, Rat(1), kTagGrid);  // trivial ahat >= 1
    if (best->s < s) best = monotone_lift(best, s);
    return best;
  }

  // Case-2 style candidate: split the points into two bracket-sized groups in
  // P^{N-1} and decompose with targets a_1 = (N-1+l)/N, a_2 = (N-2+l)/N.
  FactPtr decompose_candidate(int N, long long s) {
    long long ell_top = ell_bracket(N, s, PointMode::VeryGeneral).ell;
    for (long long ell = ell_top; ell >= 2; --ell) {
      Rat a1(N - 1 + ell, N), a2(N - 2 + ell, N);
      if (a1 <= Rat(1) || a1 > Rat(2) || a2 > Rat(2)) continue;
      Int r1 = ceil_div(binomial(N - 1 + ell, N - 1), N);
      Int r2 = ceil_div(binomial(N + ell - 2, N - 1), N);
      if (r1 + r2 > s) continue;
      if (!r1.fits_slong_p() || !r2.fits_slong_p()) continue;
      auto f1 = derive(N - 1, r1.get_si());
      if (f1->bound < a1) continue;
      auto f2 = derive(N - 1, r2.get_si());
      if (f2->bound < a2) continue;
      auto d = decompose(N, 1, {weaken(f1, a1), weaken(f2, a2)});
      return monotone_lift(d, s);
    }
    return nullptr;
  }

  // Reduction-engine facts the orchestrator replays in P^4, P^5, and P^6.
  // Built outside the lock: construction recurses into derive() for lower N.
  const std::vector<FactPtr>& scripted(int N) {
    {
      std::lock_guard<std::mutex> lk(script_mu_);
      auto it = scripted_.find(N);
      if (it != scripted_.end()) return it->second;
    }
    std::vector<FactPtr> v;
    if (N == 4) {
      auto six = monotone_lift(make_axiom(4, 6, Rat(3, 2), kTagSimplex2), 6);
      auto base = cremona::empty_from_bound(six, 30, 20);  // I((20m)^6)_{30m-1} = 0

      {  // one thirty-point: three reductions, then one gluing -> 15 points
        SystemSpec sys;
        sys.N = 4;
        sys.degree = LinExpr(36, -1);
        sys.mults = {{LinExpr(30, 0), 1}, {LinExpr(20, 0), 9}};
        auto cert = cremona::prove_empty(sys);
        if (cert) v.push_back(cremona::bound_from_empty(cremona::glue(base, cert)));
      }
      {  // seven thirty-points: one reduction, seven gluings -> 43 points
        SystemSpec sys;
        sys.N = 4;
        sys.degree = LinExpr(44, -1);
        sys.mults = {{LinExpr(20, 0), 1}, {LinExpr(30, 0), 7}};
        auto cert = cremona::prove_empty(sys);
        if (cert) {
          for (int i = 0; i < 7; ++i) cert = cremona::glue(base, cert);
          v.push_back(cremona::bound_from_empty(cert));
        }
      }
      {  // eleven thirty-points: two reductions, eleven gluings -> 67 points
        SystemSpec sys;
        sys.N = 4;
        sys.degree = LinExpr(48, -1);
        sys.mults = {{LinExpr(20, 0), 1}, {LinExpr(30, 0), 11}};
        auto cert = cremona::prove_empty(sys);
        if (cert) {
          for (int i = 0; i < 11; ++i) cert = cremona::glue(base, cert);
          v.push_back(cremona::bound_from_empty(cert));
        }
      }
    } else if (N == 5) {
      // Decompositions over the P^4 ladder.
      auto d1 = try_decompose(5, 1, {fact_at(4, 8), fact_at(4, 6)});       // 25/16 at 14
      auto d2 = try_decompose(5, 1, {fact_at(4, 15), fact_at(4, 7)});      // 5/3 at 22
      auto d3 = try_decompose(5, 2, {fact_at(4, 67), fact_at(4, 43), fact_at(4, 15)});  // 491/220 at 125
      for (auto& d : {d1, d2, d3})
        if (d) v.push_back(d);
    } else if (N == 6) {
      // 429 = 6*2^6 + 45 simple points through the (2^6, 1^45) clump.
      if (auto f = clump(6, 6, 45, 22, 10)) v.push_back(*f);
    }
    std::lock_guard<std::mutex> lk(script_mu_);
    return scripted_.emplace(N, std::move(v)).first->second;
  }

  FactPtr fact_at(int N, long long s) { return derive(N, s); }

  FactPtr try_decompose(int N, long long k, const std::vector<FactPtr>& facts) {
    try {
      return decompose(N, k, facts);
    } catch (const std::invalid_argument&) {
      return nullptr;
    }
  }

  // Bounded extra exploration: wider decomposition sweeps with k = 1..3.
  FactPtr search_extra(int N, long long s, int depth = -1) {
    if (depth < 0) depth = depth_;
    if (depth == 0 || N < 5) return nullptr;
    FactPtr best;
    long long ell_top = ell_bracket(N, s, PointMode::VeryGeneral).ell;
    for (long long k = 1; k <= 3; ++k) {
      for (long long ell = ell_top; ell >= 2; --ell) {
        std::vector<FactPtr> parts;
        std::vector<Rat> targets;
        long long total = 0;
        for (long long j = 0; j <= k; ++j) {
          Rat a(N - 1 + ell - j, N);
          targets.push_back(a);
          Int r = ceil_div(binomial(N - 1 + ell - j, N - 1), N);
          if (!r.fits_slong_p()) {
            parts.clear();
            break;
          }
          total += r.get_si();
          auto f = derive(N - 1, r.get_si());
          if (f->bound < a) {
            parts.clear();
            break;
          }
          parts.push_back(weaken(f, a));
        }
        if ((long long)parts.size() != k + 1 || total > s) continue;
        if (auto d = try_decompose(N, k, parts)) consider(best, monotone_lift(d, s));
      }
    }
    return best;
  }

  Strategy strategy_;
  int depth_;
  std::map<std::pair<int, long long>, FactPtr> memo_;
  std::map<int, std::vector<FactPtr>> scripted_;
  std::mutex mu_;
  std::mutex script_mu_;
};

// Re-validate a fact's derivation tree node by node with exact arithmetic.
// Returns an empty string on success, else a description of the failure.
inline std::string validate_fact(const FactPtr& f);

inline std::string validate_cert(const CertPtr& c);

namespace detail {
inline std::string check(bool ok, const std::string& msg) { return ok ? "" : msg; }
}  // namespace detail

inline std::string validate_fact(const FactPtr& f) {
  if (!f) return "null fact";
  if (f->bound <= Rat(0)) return "nonpositive bound";
  switch (f->rule) {
    case FactRule::Axiom:
      if (f->mixed()) return "axiom: unexpected mixed pattern";
      return detail::check(is_known_axiom(f->N, f->s, f->bound, f->tag),
                           "axiom: unknown instance " + f->tag);
    case FactRule::Lift: {
      if (f->inputs.size() != 1) return "lift: arity";
      auto& in = f->inputs[0];
      if (auto e = validate_fact(in); !e.empty()) return e;
      if (in->mixed() || f->mixed()) return "lift: mixed pattern";
      return detail::check(in->N == f->N && in->s <= f->s && in->bound == f->bound,
                           "lift: parameters do not match input");
    }
    case FactRule::Weaken: {
      if (f->inputs.size() != 1) return "weaken: arity";
      auto& in = f->inputs[0];
      if (auto e = validate_fact(in); !e.empty()) return e;
      return detail::check(in->N == f->N && in->s == f->s && f->bound <= in->bound,
                           "weaken: bound above input");
    }
    case FactRule::Split: {
      if (f->inputs.size() != 1) return "split: arity";
      auto& in = f->inputs[0];
      if (auto e = validate_fact(in); !e.empty()) return e;
      if (in->mixed() || f->mixed()) return "split: mixed pattern";
      return detail::check(in->N == f->N && Int(f->s) == (Int(in->s) << f->N) &&
                               f->bound == in->bound * Rat(2),
                           "split: arithmetic mismatch");
    }
    case FactRule::Chudnovsky:
      return detail::check(f->chud_c >= 2 && binomial(f->N + f->chud_c, f->N) <= f->s &&
                               f->bound == Rat(f->N + f->chud_c + 1, f->N),
                           "chudnovsky: schema conditions fail");
    case FactRule::Decompose: {
      long long k = f->k;
      if (k < 1 || (long long)f->inputs.size() != k + 1) return "decompose: arity";
      Rat coef(1);
      long long total = 0;
      for (long long j = 0; j <= k; ++j) {
        auto& in = f->inputs[j];
        if (auto e = validate_fact(in); !e.empty()) return e;
        if (in->N != f->N - 1) return "decompose: input dimension";
        if (j < k) {
          if (in->bound < Rat(k) || in->bound > Rat(k + 1))
            return "decompose: precondition k <= a_" + std::to_string(j + 1) + " <= k+1";
          coef = coef - Rat(1) / in->bound;
        }
        total += in->s;
      }
      if (f->inputs[0]->bound <= Rat(k)) return "decompose: precondition a_1 > k";
      if (f->inputs[k]->bound > Rat(k + 1)) return "decompose: precondition a_{k+1} <= k+1";
      return detail::check(total == f->s && f->bound == coef * f->inputs[k]->bound + Rat(k),
                           "decompose: arithmetic mismatch");
    }
    case FactRule::Clump: {
      if (f->inputs.size() != 1) return "clump: arity";
      auto& in = f->inputs[0];
      if (auto e = validate_fact(in); !e.empty()) return e;
      if (!in->mixed()) return "clump: input not mixed";
      std::vector<std::pair<long long, long long>> want;
      if (f->clump_doubles > 0) want.emplace_back(2, f->clump_doubles);
      if (f->clump_simples > 0) want.emplace_back(1, f->clump_simples);
      return detail::check(in->N == f->N && in->pattern == want &&
                               Int(f->s) == (Int(f->clump_doubles) << f->N) + f->clump_simples &&
                               f->bound == in->bound,
                           "clump: pattern or arithmetic mismatch");
    }
    case FactRule::FromEmpty: {
      if (!f->cert) return "bound_from_empty: missing certificate";
      if (auto e = validate_cert(f->cert); !e.empty()) return e;
      auto sp = cremona::detail::scaled_pattern(f->cert->claim);
      if (!sp) return "bound_from_empty: claim pattern not scalable";
      if (f->mixed()) {
        return detail::check(f->N == f->cert->claim.N && f->pattern == sp->weights &&
                                 f->bound == Rat(sp->p, sp->q),
                             "bound_from_empty: mixed pattern mismatch");
      }
      return detail::check(sp->weights.size() == 1 && sp->weights[0].first == 1 &&
                               f->N == f->cert->claim.N &&
                               f->s == f->cert->claim.total_points() &&
                               f->bound == Rat(sp->p, sp->q),
                           "bound_from_empty: claim mismatch");
    }
  }
  return "unknown rule";
}

inline std::string validate_cert(const CertPtr& c) {
  if (!c) return "null certificate";
  switch (c->kind) {
    case EmptinessCert::Kind::Reduction: {
      LinExpr degree = c->claim.degree;
      std::vector<LinExpr> mults = c->claim.expanded();
      Int m0 = 1;
      for (auto& st : c->steps) {
        if (st.t == EmptinessCert::RStep::T::Cremona) {
          cremona::StepResult r;
          try {
            r = cremona::transform(c->claim.N, degree, mults, st.selection);
          } catch (const std::exception& e) {
            return std::string("cremona step: ") + e.what();
          }
          if (r.k != st.k) return "cremona step: recorded k differs from (N-1)d - sum";
          degree = r.degree;
          mults = r.reduced;
        } else {
          std::vector<LinExpr> kept;
          Int thr = 1;
          std::vector<long long> sorted = st.dropped;
          std::sort(sorted.begin(), sorted.end());
          size_t di = 0;
          for (long long i = 0; i < (long long)mults.size(); ++i) {
            if (di < sorted.size() && sorted[di] == i) {
              Int t;
              if (!eventually_nonpositive(mults[i], &t)) return "clamp: entry not eventually <= 0";
              if (t > thr) thr = t;
              ++di;
            } else {
              kept.push_back(mults[i]);
            }
          }
          if (di != sorted.size()) return "clamp: dropped index out of range";
          if (thr != st.threshold) return "clamp: wrong threshold";
          if (thr > m0) m0 = thr;
          mults = kept;
        }
        if (!st.after.same_system(SystemSpec::from_expanded(c->claim.N, degree, mults)))
          return "reduction: recorded intermediate system mismatch";
      }
      if (c->negative_degree) {
        Int t;
        if (!eventually_negative(degree, &t)) return "contradiction: degree not eventually negative";
        if (t != c->contradiction_m0) return "contradiction: wrong threshold";
        if (t > m0) m0 = t;
      } else {
        if (c->witness < 0 || c->witness >= (long long)mults.size())
          return "contradiction: witness index out of range";
        Comparison cm = compare(degree, mults[c->witness]);
        if (!cm.eventually_less()) return "contradiction: degree does not stay below witness";
        if (cm.m0 != c->contradiction_m0) return "contradiction: wrong threshold";
        if (cm.m0 > m0) m0 = cm.m0;
      }
      return detail::check(m0 == c->m0, "reduction: m0 is not the maximum of the step thresholds");
    }
    case EmptinessCert::Kind::Glue: {
      if (auto e = validate_cert(c->left); !e.empty()) return e;
      if (auto e = validate_cert(c->right); !e.empty()) return e;
      if (c->left->claim.N != c->right->claim.N || c->claim.N != c->left->claim.N)
        return "glue: dimension mismatch";
      auto rm = c->right->claim.expanded();
      if (c->glue_index < 0 || c->glue_index >= (long long)rm.size())
        return "glue: index out of range";
      if (rm[c->glue_index] != c->left->claim.degree + LinExpr::constant(1))
        return "glue: multiplicity is not left degree + 1";
      std::vector<LinExpr> combined;
      for (long long i = 0; i < (long long)rm.size(); ++i)
        if (i != c->glue_index) combined.push_back(rm[i]);
      for (auto& e : c->left->claim.expanded()) combined.push_back(e);
      auto expect = SystemSpec::from_expanded(c->claim.N, c->right->claim.degree, combined);
      if (!expect.same_system(c->claim)) return "glue: combined claim mismatch";
      Int m0 = c->left->m0 > c->right->m0 ? c->left->m0 : c->right->m0;
      return detail::check(m0 == c->m0, "glue: m0 mismatch");
    }
    case EmptinessCert::Kind::FromBound: {
      if (!c->source) return "empty_from_bound: missing fact";
      if (auto e = validate_fact(c->source); !e.empty()) return e;
      if (c->source->mixed()) return "empty_from_bound: mixed fact";
      if (c->p <= 0 || c->q <= 0) return "empty_from_bound: bad p/q";
      if (Rat(c->p, c->q) > c->source->bound) return "empty_from_bound: p/q above bound";
      SystemSpec expect;
      expect.N = c->source->N;
      expect.degree = LinExpr(c->p, -1);
      expect.mults = {{LinExpr(c->q, 0), c->source->s}};
      if (!expect.same_system(c->claim)) return "empty_from_bound: claim mismatch";
      return detail::check(c->m0 == 1, "empty_from_bound: m0 must be 1");
    }
  }
  return "unknown certificate kind";
}

}  // namespace bounds
}  // namespace waldcert
