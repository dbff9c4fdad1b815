#pragma once

// Certificate files: flat JSON step lists forming a DAG (inputs reference
// earlier step indices), plus a content-addressed store. Serialization is
// deterministic, so serialize -> parse -> serialize is byte-identical.

#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "waldcert/demailly.hpp"
#include "waldcert/proof.hpp"

namespace waldcert {
namespace certs {

using json = nlohmann::ordered_json;
inline constexpr int kVersion = 1;

inline json system_json(const SystemSpec& sys) {
  json mults = json::array();
  for (auto& [e, c] : sys.mults) mults.push_back(json::array({e.str(), c}));
  return json{{"N", sys.N}, {"degree", sys.degree.str()}, {"mults", mults}};
}

inline SystemSpec system_from_json(const json& j) {
  SystemSpec sys;
  sys.N = j.at("N").get<int>();
  sys.degree = LinExpr::parse(j.at("degree").get<std::string>());
  for (auto& m : j.at("mults"))
    sys.mults.emplace_back(LinExpr::parse(m.at(0).get<std::string>()), m.at(1).get<long long>());
  return sys;
}

class Builder {
 public:
  long long emit_fact(const FactPtr& f) {
    auto it = fact_ids_.find(f.get());
    if (it != fact_ids_.end()) return it->second;
    json step;
    std::vector<long long> inputs;
    switch (f->rule) {
      case FactRule::Axiom:
        step["rule"] = "axiom";
        step["params"] = {{"N", f->N}, {"s", f->s}, {"bound", f->bound.str()}, {"tag", f->tag}};
        break;
      case FactRule::Lift:
        inputs = {emit_fact(f->inputs[0])};
        step["rule"] = "lift";
        step["params"] = {{"s", f->s}};
        break;
      case FactRule::Weaken:
        inputs = {emit_fact(f->inputs[0])};
        step["rule"] = "weaken";
        step["params"] = {{"bound", f->bound.str()}};
        break;
      case FactRule::Split:
        inputs = {emit_fact(f->inputs[0])};
        step["rule"] = "split";
        step["params"] = json::object();
        break;
      case FactRule::Chudnovsky:
        step["rule"] = "chudnovsky";
        step["params"] = {{"N", f->N}, {"s", f->s}, {"c", f->chud_c}};
        break;
      case FactRule::Decompose: {
        for (auto& in : f->inputs) inputs.push_back(emit_fact(in));
        step["rule"] = "decompose";
        step["params"] = {{"k", f->k}};
        break;
      }
      case FactRule::Clump:
        inputs = {emit_fact(f->inputs[0])};
        step["rule"] = "clump";
        step["params"] = {{"doubles", f->clump_doubles}, {"simples", f->clump_simples}};
        break;
      case FactRule::FromEmpty:
        inputs = {emit_cert(f->cert)};
        step["rule"] = f->mixed() ? "mixed_bound_from_empty" : "bound_from_empty";
        step["params"] = json::object();
        break;
    }
    step["inputs"] = inputs;
    steps_.push_back(std::move(step));
    long long id = (long long)steps_.size() - 1;
    fact_ids_[f.get()] = id;
    return id;
  }

  long long emit_cert(const CertPtr& c) {
    auto it = cert_ids_.find(c.get());
    if (it != cert_ids_.end()) return it->second;
    long long id = -1;
    switch (c->kind) {
      case EmptinessCert::Kind::Reduction: {
        json start;
        start["rule"] = "system";
        start["params"] = system_json(c->claim);
        start["inputs"] = json::array();
        steps_.push_back(std::move(start));
        long long prev = (long long)steps_.size() - 1;
        for (auto& st : c->steps) {
          json s;
          if (st.t == EmptinessCert::RStep::T::Cremona) {
            s["rule"] = "cremona";
            s["params"] = {{"selection", st.selection}, {"k", st.k.str()},
                           {"after", system_json(st.after)}};
          } else {
            s["rule"] = "clamp";
            s["params"] = {{"dropped", st.dropped}, {"threshold", st.threshold.get_str()},
                           {"after", system_json(st.after)}};
          }
          s["inputs"] = json::array({prev});
          steps_.push_back(std::move(s));
          prev = (long long)steps_.size() - 1;
        }
        json fin;
        fin["rule"] = "contradiction";
        fin["params"] = {{"negative_degree", c->negative_degree}, {"witness", c->witness},
                         {"m0", c->contradiction_m0.get_str()}};
        fin["inputs"] = json::array({prev});
        steps_.push_back(std::move(fin));
        id = (long long)steps_.size() - 1;
        break;
      }
      case EmptinessCert::Kind::Glue: {
        long long l = emit_cert(c->left), r = emit_cert(c->right);
        json s;
        s["rule"] = "glue";
        s["params"] = {{"index", c->glue_index}, {"claim", system_json(c->claim)}};
        s["inputs"] = json::array({l, r});
        steps_.push_back(std::move(s));
        id = (long long)steps_.size() - 1;
        break;
      }
      case EmptinessCert::Kind::FromBound: {
        long long f = emit_fact(c->source);
        json s;
        s["rule"] = "empty_from_bound";
        s["params"] = {{"p", c->p.get_str()}, {"q", c->q.get_str()}};
        s["inputs"] = json::array({f});
        steps_.push_back(std::move(s));
        id = (long long)steps_.size() - 1;
        break;
      }
    }
    cert_ids_[c.get()] = id;
    return id;
  }

  json steps_json() const { return steps_; }

 private:
  json steps_ = json::array();
  std::map<const BoundFact*, long long> fact_ids_;
  std::map<const EmptinessCert*, long long> cert_ids_;
};

inline json cert_file(const CertPtr& c, std::vector<std::string> tags = {}) {
  Builder b;
  b.emit_cert(c);
  json doc;
  doc["version"] = kVersion;
  doc["kind"] = "emptiness";
  doc["claim"] = system_json(c->claim);
  doc["steps"] = b.steps_json();
  doc["m0"] = c->m0.get_str();
  doc["tags"] = tags;
  return doc;
}

inline json fact_file(const FactPtr& f, std::vector<std::string> tags = {}) {
  Builder b;
  b.emit_fact(f);
  json doc;
  doc["version"] = kVersion;
  doc["kind"] = "bound";
  json claim{{"N", f->N}, {"s", f->s}, {"bound", f->bound.str()}};
  if (f->mixed()) {
    json pat = json::array();
    for (auto& [w, c] : f->pattern) pat.push_back(json::array({w, c}));
    claim["pattern"] = pat;
  }
  doc["claim"] = claim;
  doc["steps"] = b.steps_json();
  doc["m0"] = "1";
  doc["tags"] = tags;
  return doc;
}

inline json verdict_file(const demailly::Verdict& v, std::vector<std::string> tags = {}) {
  Builder b;
  long long achieved = b.emit_fact(v.achieved);
  json steps = b.steps_json();
  json vj;
  vj["rule"] = "verdict";
  vj["params"] = {{"mode", v.mode == PointMode::General ? "general" : "very-general"},
                  {"ell", v.ell},
                  {"required", v.required.str()},
                  {"achieved", v.achieved->bound.str()},
                  {"reg_bound", v.reg_bound},
                  {"status", demailly::status_name(v.status)},
                  {"containment_r", v.containment_r ? json(*v.containment_r) : json(nullptr)},
                  {"note", v.note}};
  vj["inputs"] = json::array({achieved});
  steps.push_back(std::move(vj));
  json doc;
  doc["version"] = kVersion;
  doc["kind"] = "verdict";
  doc["claim"] = {{"N", v.N}, {"s", v.s},
                  {"mode", v.mode == PointMode::General ? "general" : "very-general"},
                  {"status", demailly::status_name(v.status)}};
  doc["steps"] = steps;
  doc["m0"] = "1";
  doc["tags"] = tags;
  return doc;
}

inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

inline std::string content_id(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

// Flat directory keyed by content hash; writes are atomic
// (write-temp-then-rename).
class Store {
 public:
  explicit Store(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  std::string save(const json& doc) const {
    std::string text = dump(doc);
    std::string id = content_id(text);
    auto final_path = dir_ / (id + ".json");
    if (std::filesystem::exists(final_path)) return id;
    auto tmp = dir_ / (id + ".json.tmp");
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      os << text;
    }
    std::filesystem::rename(tmp, final_path);
    return id;
  }

  json load(const std::string& id) const {
    std::ifstream is(dir_ / (id + ".json"));
    if (!is) throw std::runtime_error("certificate not found: " + id);
    return json::parse(is);
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace certs
}  // namespace waldcert
