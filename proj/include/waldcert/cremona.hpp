#pragma once

// Symbolic Cremona reduction engine. The standard (N+1)-point Cremona map
// shifts the degree and the chosen N+1 multiplicities by
// k = (N-1)d - sum of the chosen multiplicities; nonvanishing transfers from
// the input system to the reduced one, so a downstream contradiction
// (some multiplicity exceeding the degree, or a negative degree) proves the
// original system empty for all m >= m0.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "waldcert/proof.hpp"

namespace waldcert {
namespace cremona {

struct StepResult {
  std::vector<LinExpr> reduced;  // before clamping; same positions as input
  LinExpr degree;
  LinExpr k;
};

// Raw Cremona transform on the expanded multiplicity list. Involutive:
// applying it twice with the same selection restores the input.
inline StepResult transform(int N, const LinExpr& degree, const std::vector<LinExpr>& mults,
                            const std::vector<long long>& selection) {
  if ((long long)selection.size() != N + 1)
    throw std::invalid_argument("cremona: selection must have N+1 indices");
  std::set<long long> uniq(selection.begin(), selection.end());
  if ((long long)uniq.size() != N + 1)
    throw std::invalid_argument("cremona: selection indices must be distinct");
  LinExpr sum;
  for (long long i : selection) {
    if (i < 0 || i >= (long long)mults.size())
      throw std::invalid_argument("cremona: selection index out of range");
    sum = sum + mults[i];
  }
  LinExpr k(degree.slope * (N - 1), degree.intercept * (N - 1));
  k = k - sum;
  StepResult r;
  r.reduced = mults;
  for (long long i : selection) r.reduced[i] = r.reduced[i] + k;
  r.degree = degree + k;
  r.k = k;
  return r;
}

struct ClampResult {
  std::vector<LinExpr> kept;
  std::vector<long long> dropped;  // indices before removal
  Int threshold = 1;               // all dropped entries are <= 0 for m >= threshold
};

// Drop multiplicities that are eventually nonpositive (p^e = R for e <= 0).
inline ClampResult clamp(const std::vector<LinExpr>& mults) {
  ClampResult r;
  for (long long i = 0; i < (long long)mults.size(); ++i) {
    Int t;
    if (eventually_nonpositive(mults[i], &t)) {
      r.dropped.push_back(i);
      if (t > r.threshold) r.threshold = t;
    } else {
      r.kept.push_back(mults[i]);
    }
  }
  return r;
}

// Public single-step operation: transform followed by the clamp scan.
struct CremonaStep {
  SystemSpec reduced;            // after clamping
  SystemSpec reduced_unclamped;  // raw transform output
  LinExpr k;
  std::vector<long long> dropped;
  Int clamp_threshold = 1;
};

inline CremonaStep cremona_step(const SystemSpec& sys, const std::vector<long long>& selection) {
  auto mults = sys.expanded();
  auto t = transform(sys.N, sys.degree, mults, selection);
  CremonaStep out;
  out.k = t.k;
  out.reduced_unclamped = SystemSpec::from_expanded(sys.N, t.degree, t.reduced);
  auto c = clamp(t.reduced);
  out.reduced = SystemSpec::from_expanded(sys.N, t.degree, c.kept);
  out.dropped = c.dropped;
  out.clamp_threshold = c.threshold;
  return out;
}

// Indices of the N+1 eventually-largest multiplicities, ties by list order.
inline std::vector<long long> greedy_selection(int N, const std::vector<LinExpr>& mults) {
  std::vector<long long> idx(mults.size());
  for (size_t i = 0; i < mults.size(); ++i) idx[i] = (long long)i;
  std::stable_sort(idx.begin(), idx.end(), [&](long long a, long long b) {
    return eventually_greater_order(mults[a], mults[b]);
  });
  idx.resize(N + 1);
  std::sort(idx.begin(), idx.end());
  return idx;
}

// Contradiction scan: the eventually-largest multiplicity exceeding the
// degree, or an eventually negative degree.
struct Contradiction {
  bool negative_degree = false;
  long long witness = -1;
  Int m0 = 1;
};

inline std::optional<Contradiction> find_contradiction(const LinExpr& degree,
                                                       const std::vector<LinExpr>& mults) {
  if (!mults.empty()) {
    long long best = 0;
    for (long long i = 1; i < (long long)mults.size(); ++i)
      if (eventually_greater_order(mults[i], mults[best])) best = i;
    Comparison c = compare(degree, mults[best]);
    if (c.eventually_less()) return Contradiction{false, best, c.m0};
  }
  Int t;
  if (eventually_negative(degree, &t)) return Contradiction{true, -1, t};
  return std::nullopt;
}

// Greedy emptiness proof: repeatedly reduce by the N+1 largest multiplicities
// until a contradiction appears. Returns nullopt (NotProven) if max_steps
// reductions do not reach one.
inline CertPtr prove_empty(const SystemSpec& sys, int max_steps = 50) {
  if (sys.N < 2) throw std::invalid_argument("prove_empty: N >= 2 required");
  if (sys.total_points() < 1) throw std::invalid_argument("prove_empty: no points");
  for (auto& [e, c] : sys.mults)
    if (c <= 0) throw std::invalid_argument("prove_empty: counts must be positive");
  if (max_steps < 1) throw std::invalid_argument("prove_empty: max_steps >= 1 required");

  auto cert = std::make_shared<EmptinessCert>();
  cert->claim = sys;
  cert->kind = EmptinessCert::Kind::Reduction;
  Int m0 = 1;

  LinExpr degree = sys.degree;
  std::vector<LinExpr> mults = sys.expanded();

  // Initial clamp scan (claimed systems normally have positive entries).
  {
    auto c = clamp(mults);
    if (!c.dropped.empty()) {
      mults = c.kept;
      if (c.threshold > m0) m0 = c.threshold;
      EmptinessCert::RStep st;
      st.t = EmptinessCert::RStep::T::Clamp;
      st.dropped = c.dropped;
      st.threshold = c.threshold;
      st.after = SystemSpec::from_expanded(sys.N, degree, mults);
      cert->steps.push_back(std::move(st));
    }
  }

  for (int step = 0; step <= max_steps; ++step) {
    if (auto contr = find_contradiction(degree, mults)) {
      cert->negative_degree = contr->negative_degree;
      cert->witness = contr->witness;
      cert->contradiction_m0 = contr->m0;
      if (contr->m0 > m0) m0 = contr->m0;
      cert->m0 = m0;
      return cert;
    }
    if (step == max_steps) break;
    if ((long long)mults.size() < sys.N + 1) return nullptr;

    auto sel = greedy_selection(sys.N, mults);
    auto t = transform(sys.N, degree, mults, sel);
    // A nonnegative reductor cannot shrink the system; the greedy would loop.
    if (!eventually_negative(t.k)) return nullptr;

    EmptinessCert::RStep st;
    st.t = EmptinessCert::RStep::T::Cremona;
    st.selection = sel;
    st.k = t.k;
    degree = t.degree;
    mults = t.reduced;
    st.after = SystemSpec::from_expanded(sys.N, degree, mults);
    cert->steps.push_back(std::move(st));

    auto c = clamp(mults);
    if (!c.dropped.empty()) {
      mults = c.kept;
      if (c.threshold > m0) m0 = c.threshold;
      EmptinessCert::RStep cl;
      cl.t = EmptinessCert::RStep::T::Clamp;
      cl.dropped = c.dropped;
      cl.threshold = c.threshold;
      cl.after = SystemSpec::from_expanded(sys.N, degree, mults);
      cert->steps.push_back(std::move(cl));
    }
  }
  return nullptr;
}

// Gluing: from I(m_1..m_r)_k = 0 and I(m'_1..m'_t)_d = 0 where some m'_j
// equals k+1, conclude I(m_1..m_r, m'_1..m'_{j-1}, m'_{j+1}..m'_t)_d = 0.
inline CertPtr glue(const CertPtr& left, const CertPtr& right) {
  if (!left || !right) throw std::invalid_argument("glue: null certificate");
  if (left->claim.N != right->claim.N) throw std::invalid_argument("glue: dimension mismatch");
  LinExpr need = left->claim.degree + LinExpr::constant(1);
  auto rm = right->claim.expanded();
  long long at = -1;
  for (long long i = 0; i < (long long)rm.size(); ++i)
    if (rm[i] == need) {
      at = i;
      break;
    }
  if (at < 0)
    throw std::invalid_argument("glue: right system has no multiplicity equal to left degree + 1");
  std::vector<LinExpr> combined;
  for (long long i = 0; i < (long long)rm.size(); ++i)
    if (i != at) combined.push_back(rm[i]);
  for (const auto& e : left->claim.expanded()) combined.push_back(e);

  auto cert = std::make_shared<EmptinessCert>();
  cert->kind = EmptinessCert::Kind::Glue;
  cert->claim = SystemSpec::from_expanded(left->claim.N, right->claim.degree, combined).canonical();
  cert->left = left;
  cert->right = right;
  cert->glue_index = at;
  cert->m0 = left->m0 > right->m0 ? left->m0 : right->m0;
  return cert;
}

// From ahat(P^N, s) >= bound and p/q <= bound: a nonzero form of degree
// p m - 1 vanishing to order q m at all s points would force
// ahat <= (p m - 1)/(q m) < p/q, so I((q m)^s)_{p m - 1} = 0 for all m >= 1.
inline CertPtr empty_from_bound(const FactPtr& fact, const Int& p, const Int& q) {
  if (!fact) throw std::invalid_argument("empty_from_bound: null fact");
  if (fact->mixed()) throw std::invalid_argument("empty_from_bound: mixed fact not allowed");
  if (p <= 0 || q <= 0) throw std::invalid_argument("empty_from_bound: p, q must be positive");
  if (Rat(p, q) > fact->bound)
    throw std::invalid_argument("empty_from_bound: p/q exceeds the certified bound");
  auto cert = std::make_shared<EmptinessCert>();
  cert->kind = EmptinessCert::Kind::FromBound;
  cert->claim.N = fact->N;
  cert->claim.degree = LinExpr(p, -1);
  cert->claim.mults = {{LinExpr(q, 0), fact->s}};
  cert->source = fact;
  cert->p = p;
  cert->q = q;
  cert->m0 = 1;
  return cert;
}

inline CertPtr empty_from_bound(const FactPtr& fact) {
  return empty_from_bound(fact, fact->bound.num(), fact->bound.den());
}

namespace detail {
// Claim pattern I((w_1 q m)^{c_1}, ..., (w_t q m)^{c_t})_{p m - 1} with
// gcd-normalized weights. Returns (p, q, weights) or nullopt.
struct ScaledPattern {
  Int p, q;
  std::vector<std::pair<long long, long long>> weights;  // (weight, count)
};

inline std::optional<ScaledPattern> scaled_pattern(const SystemSpec& claim) {
  if (claim.degree.intercept != -1 || claim.degree.slope <= 0) return std::nullopt;
  Int g = 0;
  for (auto& [e, c] : claim.mults) {
    if (e.intercept != 0 || e.slope <= 0) return std::nullopt;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.slope.get_mpz_t());
  }
  if (g == 0) return std::nullopt;
  ScaledPattern sp;
  sp.p = claim.degree.slope;
  sp.q = g;
  auto canon = claim.canonical();
  for (auto& [e, c] : canon.mults) {
    Int w = e.slope / g;
    if (!w.fits_slong_p()) return std::nullopt;
    sp.weights.emplace_back(w.get_si(), c);
  }
  return sp;
}
}  // namespace detail

// ahat(P^N, s) >= p/q from an emptiness certificate for I((q m)^s)_{p m - 1}:
// alpha(I^(q m)) >= p m for m >= m0, and the limit along that subsequence is
// the Waldschmidt constant. Rejects claims that do not match the homogeneous
// pattern exactly (nonzero multiplicity intercepts or degree intercept != -1).
inline FactPtr bound_from_empty(const CertPtr& cert) {
  if (!cert) throw std::invalid_argument("bound_from_empty: null certificate");
  auto sp = detail::scaled_pattern(cert->claim);
  if (!sp || sp->weights.size() != 1 || sp->weights[0].first != 1)
    throw std::invalid_argument("bound_from_empty: claim is not of the form I((q m)^s)_{p m - 1}");
  auto f = std::make_shared<BoundFact>();
  f->N = cert->claim.N;
  f->s = cert->claim.total_points();
  f->bound = Rat(sp->p, sp->q);
  f->rule = FactRule::FromEmpty;
  f->cert = cert;
  return f;
}

// Mixed variant used by the clumping rule: the claim pattern
// I((w_i q m)^{c_i})_{p m - 1} certifies ahat of the mixed fat-point ideal
// with multiplicities w_i to be >= p/q (same subsequence-limit argument).
inline FactPtr mixed_bound_from_empty(const CertPtr& cert) {
  if (!cert) throw std::invalid_argument("mixed_bound_from_empty: null certificate");
  auto sp = detail::scaled_pattern(cert->claim);
  if (!sp) throw std::invalid_argument("mixed_bound_from_empty: claim pattern not scalable");
  auto f = std::make_shared<BoundFact>();
  f->N = cert->claim.N;
  f->s = cert->claim.total_points();
  f->bound = Rat(sp->p, sp->q);
  f->pattern = sp->weights;
  f->rule = FactRule::FromEmpty;
  f->cert = cert;
  return f;
}

}  // namespace cremona
}  // namespace waldcert
