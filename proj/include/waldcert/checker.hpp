#pragma once

// Independent re-validation of certificate files. The checker interprets the
// step DAG using only the rule definitions -- every reductor k, clamp,
// precondition, and arithmetic result is recomputed exactly; it never calls
// the greedy engine. Structural and mathematical failures are distinguished.

#include <optional>
#include <variant>

#include "waldcert/bounds.hpp"
#include "waldcert/certjson.hpp"

namespace waldcert {
namespace checker {

using certs::json;

struct CheckResult {
  bool ok = false;
  bool structural = false;  // malformed file vs mathematical failure
  long long step = -1;
  std::string reason;

  static CheckResult pass() { return {true, false, -1, ""}; }
  static CheckResult structural_error(long long step, std::string why) {
    return {false, true, step, std::move(why)};
  }
  static CheckResult math_error(long long step, std::string why) {
    return {false, false, step, std::move(why)};
  }
  std::string str() const {
    if (ok) return "OK";
    return std::string(structural ? "structural error" : "math error") + " at step " +
           std::to_string(step) + ": " + reason;
  }
};

namespace detail {

struct FactVal {
  int N;
  long long s;
  Rat bound;
  std::vector<std::pair<long long, long long>> pattern;  // mixed when nonempty
};

struct ChainVal {  // pending reduction chain
  SystemSpec root;
  LinExpr degree;
  std::vector<LinExpr> mults;
  Int m0;
};

struct EmptyVal {  // proven emptiness
  SystemSpec claim;
  Int m0;
  std::optional<FactVal> source;  // set for empty_from_bound
};

struct VerdictVal {
  int N;
  long long s;
  std::string mode, status;
};

using Value = std::variant<FactVal, ChainVal, EmptyVal, VerdictVal>;

}  // namespace detail

inline CheckResult check_certificate(const json& doc) {
  using namespace detail;
  using CR = CheckResult;

  if (!doc.is_object()) return CR::structural_error(-1, "not a JSON object");
  if (!doc.contains("version") || doc["version"].get<int>() != certs::kVersion)
    return CR::structural_error(-1, "missing or unsupported version");
  for (const char* key : {"kind", "claim", "steps", "m0"})
    if (!doc.contains(key)) return CR::structural_error(-1, std::string("missing field ") + key);
  std::string kind = doc["kind"].get<std::string>();
  if (kind != "emptiness" && kind != "bound" && kind != "verdict")
    return CR::structural_error(-1, "unknown kind " + kind);
  const json& steps = doc["steps"];
  if (!steps.is_array() || steps.empty()) return CR::structural_error(-1, "empty step list");

  std::vector<Value> values;
  values.reserve(steps.size());

  for (long long i = 0; i < (long long)steps.size(); ++i) {
    const json& st = steps[i];
    std::string rule;
    json params;
    std::vector<long long> inputs;
    try {
      rule = st.at("rule").get<std::string>();
      params = st.at("params");
      for (auto& x : st.at("inputs")) inputs.push_back(x.get<long long>());
    } catch (const std::exception& e) {
      return CR::structural_error(i, std::string("malformed step: ") + e.what());
    }
    for (long long in : inputs)
      if (in < 0 || in >= i) return CR::structural_error(i, "input reference is not a DAG");

    try {
      if (rule == "axiom") {
        FactVal f{params.at("N").get<int>(), params.at("s").get<long long>(),
                  Rat::parse(params.at("bound").get<std::string>()), {}};
        if (!bounds::is_known_axiom(f.N, f.s, f.bound, params.at("tag").get<std::string>()))
          return CR::math_error(i, "axiom not in the knowledge base");
        values.push_back(f);
      } else if (rule == "lift") {
        if (inputs.size() != 1) return CR::structural_error(i, "lift: arity");
        auto* in = std::get_if<FactVal>(&values[inputs[0]]);
        if (!in || !in->pattern.empty()) return CR::structural_error(i, "lift: input not a simple fact");
        long long s = params.at("s").get<long long>();
        if (s < in->s) return CR::math_error(i, "lift: target below source count");
        values.push_back(FactVal{in->N, s, in->bound, {}});
      } else if (rule == "weaken") {
        if (inputs.size() != 1) return CR::structural_error(i, "weaken: arity");
        auto* in = std::get_if<FactVal>(&values[inputs[0]]);
        if (!in) return CR::structural_error(i, "weaken: input not a fact");
        Rat b = Rat::parse(params.at("bound").get<std::string>());
        if (b > in->bound) return CR::math_error(i, "weaken: bound above input");
        if (b <= Rat(0)) return CR::math_error(i, "weaken: nonpositive bound");
        values.push_back(FactVal{in->N, in->s, b, in->pattern});
      } else if (rule == "split") {
        if (inputs.size() != 1) return CR::structural_error(i, "split: arity");
        auto* in = std::get_if<FactVal>(&values[inputs[0]]);
        if (!in || !in->pattern.empty()) return CR::structural_error(i, "split: input not a simple fact");
        Int s2 = Int(in->s) << in->N;
        values.push_back(FactVal{in->N, s2.get_si(), in->bound * Rat(2), {}});
      } else if (rule == "chudnovsky") {
        int N = params.at("N").get<int>();
        long long s = params.at("s").get<long long>();
        long long c = params.at("c").get<long long>();
        if (c < 2 || binomial(N + c, N) > s)
          return CR::math_error(i, "chudnovsky: schema conditions fail");
        values.push_back(FactVal{N, s, Rat(N + c + 1, N), {}});
      } else if (rule == "decompose") {
        long long k = params.at("k").get<long long>();
        if (k < 1 || (long long)inputs.size() != k + 1) return CR::structural_error(i, "decompose: arity");
        std::vector<const FactVal*> fs;
        for (long long in : inputs) {
          auto* f = std::get_if<FactVal>(&values[in]);
          if (!f || !f->pattern.empty())
            return CR::structural_error(i, "decompose: input not a simple fact");
          fs.push_back(f);
        }
        int N = fs[0]->N + 1;
        Rat coef(1);
        long long total = 0;
        for (long long j = 0; j <= k; ++j) {
          if (fs[j]->N != N - 1) return CR::math_error(i, "decompose: input dimension mismatch");
          if (j < k) {
            if (fs[j]->bound < Rat(k) || fs[j]->bound > Rat(k + 1))
              return CR::math_error(i, "precondition k <= a_" + std::to_string(j + 1) + " <= k+1");
            coef = coef - Rat(1) / fs[j]->bound;
          }
          total += fs[j]->s;
        }
        if (fs[0]->bound <= Rat(k)) return CR::math_error(i, "precondition a_1 > k");
        if (fs[k]->bound > Rat(k + 1)) return CR::math_error(i, "precondition a_{k+1} <= k+1");
        values.push_back(FactVal{N, total, coef * fs[k]->bound + Rat(k), {}});
      } else if (rule == "clump") {
        if (inputs.size() != 1) return CR::structural_error(i, "clump: arity");
        auto* in = std::get_if<FactVal>(&values[inputs[0]]);
        if (!in || in->pattern.empty()) return CR::structural_error(i, "clump: input not a mixed fact");
        long long a = params.at("doubles").get<long long>();
        long long b = params.at("simples").get<long long>();
        std::vector<std::pair<long long, long long>> want;
        if (a > 0) want.emplace_back(2, a);
        if (b > 0) want.emplace_back(1, b);
        if (in->pattern != want) return CR::math_error(i, "clump: pattern mismatch");
        Int s = (Int(a) << in->N) + b;
        values.push_back(FactVal{in->N, s.get_si(), in->bound, {}});
      } else if (rule == "system") {
        SystemSpec sys = certs::system_from_json(params);
        if (sys.N < 2 || sys.total_points() < 1) return CR::math_error(i, "system: malformed");
        values.push_back(ChainVal{sys, sys.degree, sys.expanded(), Int(1)});
      } else if (rule == "cremona") {
        if (inputs.size() != 1) return CR::structural_error(i, "cremona: arity");
        auto* ch = std::get_if<ChainVal>(&values[inputs[0]]);
        if (!ch) return CR::structural_error(i, "cremona: input not a reduction chain");
        std::vector<long long> sel;
        for (auto& x : params.at("selection")) sel.push_back(x.get<long long>());
        cremona::StepResult r;
        try {
          r = cremona::transform(ch->root.N, ch->degree, ch->mults, sel);
        } catch (const std::exception& e) {
          return CR::math_error(i, std::string("cremona: ") + e.what());
        }
        if (r.k != LinExpr::parse(params.at("k").get<std::string>()))
          return CR::math_error(i, "cremona: recorded reductor differs from (N-1)d - sum");
        ChainVal next{ch->root, r.degree, r.reduced, ch->m0};
        if (params.contains("after")) {
          auto after = certs::system_from_json(params.at("after"));
          if (!after.same_system(SystemSpec::from_expanded(next.root.N, next.degree, next.mults)))
            return CR::math_error(i, "cremona: recorded intermediate system mismatch");
        }
        values.push_back(next);
      } else if (rule == "clamp") {
        if (inputs.size() != 1) return CR::structural_error(i, "clamp: arity");
        auto* ch = std::get_if<ChainVal>(&values[inputs[0]]);
        if (!ch) return CR::structural_error(i, "clamp: input not a reduction chain");
        std::vector<long long> dropped;
        for (auto& x : params.at("dropped")) dropped.push_back(x.get<long long>());
        std::sort(dropped.begin(), dropped.end());
        std::vector<LinExpr> kept;
        Int thr = 1;
        size_t di = 0;
        for (long long j = 0; j < (long long)ch->mults.size(); ++j) {
          if (di < dropped.size() && dropped[di] == j) {
            Int t;
            if (!eventually_nonpositive(ch->mults[j], &t))
              return CR::math_error(i, "clamp: entry not eventually nonpositive");
            if (t > thr) thr = t;
            ++di;
          } else {
            kept.push_back(ch->mults[j]);
          }
        }
        if (di != dropped.size()) return CR::structural_error(i, "clamp: index out of range");
        if (thr != Int(params.at("threshold").get<std::string>()))
          return CR::math_error(i, "clamp: wrong threshold");
        Int m0 = ch->m0 > thr ? ch->m0 : thr;
        ChainVal next{ch->root, ch->degree, kept, m0};
        if (params.contains("after")) {
          auto after = certs::system_from_json(params.at("after"));
          if (!after.same_system(SystemSpec::from_expanded(next.root.N, next.degree, next.mults)))
            return CR::math_error(i, "clamp: recorded intermediate system mismatch");
        }
        values.push_back(next);
      } else if (rule == "contradiction") {
        if (inputs.size() != 1) return CR::structural_error(i, "contradiction: arity");
        auto* ch = std::get_if<ChainVal>(&values[inputs[0]]);
        if (!ch) return CR::structural_error(i, "contradiction: input not a reduction chain");
        bool neg = params.at("negative_degree").get<bool>();
        Int claimed_m0(params.at("m0").get<std::string>());
        Int t;
        if (neg) {
          if (!eventually_negative(ch->degree, &t))
            return CR::math_error(i, "contradiction: degree not eventually negative");
        } else {
          long long w = params.at("witness").get<long long>();
          if (w < 0 || w >= (long long)ch->mults.size())
            return CR::structural_error(i, "contradiction: witness out of range");
          Comparison cm = compare(ch->degree, ch->mults[w]);
          if (!cm.eventually_less())
            return CR::math_error(i, "contradiction: witness does not exceed the degree");
          t = cm.m0;
        }
        if (t != claimed_m0) return CR::math_error(i, "contradiction: wrong threshold");
        Int m0 = ch->m0 > t ? ch->m0 : t;
        values.push_back(EmptyVal{ch->root, m0, std::nullopt});
      } else if (rule == "empty_from_bound") {
        if (inputs.size() != 1) return CR::structural_error(i, "empty_from_bound: arity");
        auto* f = std::get_if<FactVal>(&values[inputs[0]]);
        if (!f || !f->pattern.empty())
          return CR::structural_error(i, "empty_from_bound: input not a simple fact");
        Int p(params.at("p").get<std::string>()), q(params.at("q").get<std::string>());
        if (p <= 0 || q <= 0) return CR::math_error(i, "empty_from_bound: bad p/q");
        if (Rat(p, q) > f->bound) return CR::math_error(i, "empty_from_bound: p/q above bound");
        SystemSpec claim;
        claim.N = f->N;
        claim.degree = LinExpr(p, -1);
        claim.mults = {{LinExpr(q, 0), f->s}};
        values.push_back(EmptyVal{claim, Int(1), *f});
      } else if (rule == "glue") {
        if (inputs.size() != 2) return CR::structural_error(i, "glue: arity");
        auto* l = std::get_if<EmptyVal>(&values[inputs[0]]);
        auto* r = std::get_if<EmptyVal>(&values[inputs[1]]);
        if (!l || !r) return CR::structural_error(i, "glue: inputs not emptiness claims");
        if (l->claim.N != r->claim.N) return CR::math_error(i, "glue: dimension mismatch");
        long long at = params.at("index").get<long long>();
        auto rm = r->claim.expanded();
        if (at < 0 || at >= (long long)rm.size()) return CR::structural_error(i, "glue: index range");
        if (rm[at] != l->claim.degree + LinExpr::constant(1))
          return CR::math_error(i, "glue: multiplicity is not left degree + 1");
        std::vector<LinExpr> combined;
        for (long long j = 0; j < (long long)rm.size(); ++j)
          if (j != at) combined.push_back(rm[j]);
        for (auto& e : l->claim.expanded()) combined.push_back(e);
        auto claim = SystemSpec::from_expanded(l->claim.N, r->claim.degree, combined);
        if (params.contains("claim")) {
          auto recorded = certs::system_from_json(params.at("claim"));
          if (!recorded.same_system(claim)) return CR::math_error(i, "glue: recorded claim mismatch");
          claim = recorded;
        }
        values.push_back(EmptyVal{claim, l->m0 > r->m0 ? l->m0 : r->m0, std::nullopt});
      } else if (rule == "bound_from_empty" || rule == "mixed_bound_from_empty") {
        if (inputs.size() != 1) return CR::structural_error(i, "bound_from_empty: arity");
        auto* e = std::get_if<EmptyVal>(&values[inputs[0]]);
        if (!e) return CR::structural_error(i, "bound_from_empty: input not an emptiness claim");
        auto sp = cremona::detail::scaled_pattern(e->claim);
        if (!sp) return CR::math_error(i, "bound_from_empty: claim pattern not scalable");
        bool mixed = rule == "mixed_bound_from_empty";
        if (!mixed && (sp->weights.size() != 1 || sp->weights[0].first != 1))
          return CR::math_error(i, "bound_from_empty: claim not homogeneous");
        FactVal f{e->claim.N, e->claim.total_points(), Rat(sp->p, sp->q), {}};
        if (mixed) f.pattern = sp->weights;
        values.push_back(f);
      } else if (rule == "verdict") {
        if (inputs.size() != 1) return CR::structural_error(i, "verdict: arity");
        auto* f = std::get_if<FactVal>(&values[inputs[0]]);
        if (!f || !f->pattern.empty()) return CR::structural_error(i, "verdict: input not a fact");
        std::string mode_s = params.at("mode").get<std::string>();
        PointMode mode = mode_s == "general" ? PointMode::General : PointMode::VeryGeneral;
        auto th = demailly::required_threshold(f->N, f->s, mode);
        if (th.ell != params.at("ell").get<long long>())
          return CR::math_error(i, "verdict: bracket mismatch");
        if (th.required != Rat::parse(params.at("required").get<std::string>()))
          return CR::math_error(i, "verdict: required threshold mismatch");
        if (params.contains("achieved") &&
            f->bound != Rat::parse(params.at("achieved").get<std::string>()))
          return CR::math_error(i, "verdict: recorded achieved bound mismatch");
        std::string status = params.at("status").get<std::string>();
        bool proven = f->bound >= th.required;
        if (proven != (status == "PROVEN"))
          return CR::math_error(i, "verdict: status does not follow from the comparison");
        if (proven && mode == PointMode::General) {
          auto r = demailly::containment_exponent(f->N, f->bound, th.reg_bound);
          const json& rj = params.at("containment_r");
          if (r.has_value() != !rj.is_null() || (r && *r != rj.get<long long>()))
            return CR::math_error(i, "verdict: containment exponent mismatch");
        }
        values.push_back(VerdictVal{f->N, f->s, mode_s, status});
      } else {
        return CR::structural_error(i, "unknown rule " + rule);
      }
    } catch (const std::exception& e) {
      return CR::structural_error(i, std::string("malformed step: ") + e.what());
    }
  }

  // Final value must match the file claim.
  const Value& last = values.back();
  const json& claim = doc["claim"];
  Int file_m0(doc["m0"].get<std::string>());
  try {
    if (kind == "emptiness") {
      auto* e = std::get_if<EmptyVal>(&last);
      if (!e) return CR::structural_error(-1, "final step is not an emptiness claim");
      if (!e->claim.same_system(certs::system_from_json(claim)))
        return CR::math_error(-1, "final claim differs from the file claim");
      if (e->m0 != file_m0) return CR::math_error(-1, "file m0 mismatch");
    } else if (kind == "bound") {
      auto* f = std::get_if<FactVal>(&last);
      if (!f) return CR::structural_error(-1, "final step is not a bound fact");
      if (f->N != claim.at("N").get<int>() || f->s != claim.at("s").get<long long>() ||
          f->bound != Rat::parse(claim.at("bound").get<std::string>()))
        return CR::math_error(-1, "final claim differs from the file claim");
    } else {
      auto* v = std::get_if<VerdictVal>(&last);
      if (!v) return CR::structural_error(-1, "final step is not a verdict");
      if (v->N != claim.at("N").get<int>() || v->s != claim.at("s").get<long long>() ||
          v->status != claim.at("status").get<std::string>())
        return CR::math_error(-1, "final claim differs from the file claim");
    }
  } catch (const std::exception& e) {
    return CR::structural_error(-1, std::string("malformed claim: ") + e.what());
  }
  return CR::pass();
}

}  // namespace checker
}  // namespace waldcert
