// waldcert command-line interface.
//
// Subcommands: bound, empty, demailly, hilbert, check, oracle-validate,
// report. Exit codes: 0 success, 1 findings (discrepancy / unexpected
// unproven / invalid certificate / oracle violation), 2 usage errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "waldcert/waldcert.hpp"

using namespace waldcert;

namespace {

struct Config {
  std::uint64_t prime = oracle::kDefaultPrime;
  std::uint64_t seed = oracle::kDefaultSeed;
  int jobs = (int)std::max(1u, std::thread::hardware_concurrency());
  long long size_cap = oracle::kDefaultColumnCap;
};

void load_config(const std::string& path, Config& cfg, bool required) {
  std::ifstream is(path);
  if (!is) {
    if (required) throw CLI::ValidationError("config", "cannot open " + path);
    return;
  }
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "prime") cfg.prime = std::stoull(val);
    if (key == "seed") cfg.seed = std::stoull(val);
    if (key == "jobs") cfg.jobs = std::stoi(val);
    if (key == "size_cap") cfg.size_cap = std::stoll(val);
  }
}

std::pair<long long, long long> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    long long v = std::stoll(text);
    return {v, v};
  }
  return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

std::string derivation_summary(const FactPtr& f, int depth = 0) {
  std::ostringstream os;
  std::string pad(2 * depth, ' ');
  os << pad << fact_rule_name(f->rule) << ": ahat(P^" << f->N << ", " << f->s
     << ") >= " << f->bound.str();
  if (!f->tag.empty()) os << " [" << f->tag << "]";
  if (f->cert) os << " from " << f->cert->claim.str() << " (m0=" << f->cert->m0.get_str() << ")";
  os << "\n";
  for (auto& in : f->inputs) os << derivation_summary(in, depth + 1);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified lower bounds for Waldschmidt constants of generic points"};
  app.require_subcommand(1);
  Config cfg;
  load_config("waldcert.cfg", cfg, false);
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file (prime, seed, jobs, size_cap)");

  // ---- bound ----
  auto* cmd_bound = app.add_subcommand("bound", "derive a Waldschmidt lower bound");
  int b_N = 0;
  long long b_s = 0;
  std::string b_strategy = "paper", b_emit;
  cmd_bound->add_option("--N", b_N, "projective dimension")->required();
  cmd_bound->add_option("--points,--s", b_s, "number of points")->required();
  cmd_bound->add_option("--strategy", b_strategy, "paper|search")
      ->check(CLI::IsMember({"paper", "search"}));
  cmd_bound->add_option("--emit", b_emit, "write the derivation certificate to this file");

  // ---- empty ----
  auto* cmd_empty = app.add_subcommand("empty", "prove an m-family of linear systems empty");
  int e_N = 0;
  std::string e_degree, e_mults, e_emit;
  int e_max_steps = 50;
  cmd_empty->add_option("--N", e_N, "projective dimension")->required();
  cmd_empty->add_option("--degree", e_degree, "degree, e.g. \"36m-1\"")->required();
  cmd_empty->add_option("--mults", e_mults, "multiplicities, e.g. \"20m x9, 30m x1\"")->required();
  cmd_empty->add_option("--max-steps", e_max_steps, "reduction step limit");
  cmd_empty->add_option("--emit", e_emit, "write the emptiness certificate to this file");

  // ---- demailly ----
  auto* cmd_dem = app.add_subcommand("demailly", "verify the m=2 conjectural inequality");
  std::string d_mode = "general", d_range, d_suite, d_report, d_certs;
  int d_N = 0, d_jobs = 0, d_nmax = 12;
  cmd_dem->add_option("--mode", d_mode, "general|very-general")
      ->check(CLI::IsMember({"general", "very-general"}));
  cmd_dem->add_option("--N", d_N, "projective dimension");
  cmd_dem->add_option("--s", d_range, "point count or range a..b");
  cmd_dem->add_option("--suite", d_suite, "thm3.2|thm4.4|thm5.1|thm5.2|thm5.3|lemmas");
  cmd_dem->add_option("--N-max", d_nmax, "upper N for the thm3.2/thm4.4 suites");
  cmd_dem->add_option("--report", d_report, "write a markdown report here");
  cmd_dem->add_option("--certs", d_certs, "store per-case verdict certificates here");
  cmd_dem->add_option("--jobs", d_jobs, "worker threads");

  // ---- hilbert ----
  auto* cmd_hil = app.add_subcommand("hilbert", "double-point Hilbert function");
  int h_N = 0;
  long long h_s = 0, h_d = 0;
  bool h_oracle = false;
  std::string h_prime = "auto";
  std::uint64_t h_seed = 0;
  bool h_seed_set = false;
  cmd_hil->add_option("--N", h_N)->required();
  cmd_hil->add_option("--s", h_s)->required();
  cmd_hil->add_option("--d", h_d)->required();
  cmd_hil->add_flag("--oracle", h_oracle, "compute the value by interpolation rank");
  cmd_hil->add_option("--prime", h_prime, "oracle prime or 'auto'");
  cmd_hil->add_option("--seed", h_seed, "oracle seed")->each([&](const std::string&) { h_seed_set = true; });

  // ---- check ----
  auto* cmd_check = app.add_subcommand("check", "re-validate a certificate file");
  std::vector<std::string> c_files;
  cmd_check->add_option("files", c_files, "certificate files")->required();

  // ---- oracle-validate ----
  auto* cmd_ov = app.add_subcommand("oracle-validate", "stress-test engine rules by oracle");
  std::string o_rule = "cremona";
  int o_N = 2, o_trials = 200;
  long long o_smax = 10, o_dmax = 5;
  std::uint64_t o_seed = 0;
  bool o_seed_set = false;
  cmd_ov->add_option("--rule", o_rule, "cremona|ah")->check(CLI::IsMember({"cremona", "ah"}));
  cmd_ov->add_option("--N", o_N, "dimension (cremona) or max dimension (ah)");
  cmd_ov->add_option("--trials", o_trials, "random systems (cremona)");
  cmd_ov->add_option("--s-max", o_smax, "max point count (ah)");
  cmd_ov->add_option("--d-max", o_dmax, "max degree (ah)");
  cmd_ov->add_option("--seed", o_seed)->each([&](const std::string&) { o_seed_set = true; });

  // ---- report ----
  auto* cmd_rep = app.add_subcommand("report", "regenerate a table from stored verdicts");
  std::string r_certs, r_out, r_format = "md";
  cmd_rep->add_option("--certs", r_certs, "certificate directory")->required();
  cmd_rep->add_option("-o,--out", r_out, "output path (stdout if omitted)");
  cmd_rep->add_option("--format", r_format, "md|tsv")->check(CLI::IsMember({"md", "tsv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) load_config(config_path, cfg, true);

    if (app.got_subcommand(cmd_bound)) {
      bounds::BoundEngine engine(b_strategy == "search" ? bounds::Strategy::Search
                                                        : bounds::Strategy::Paper);
      auto fact = engine.derive(b_N, b_s);
      if (auto err = bounds::validate_fact(fact); !err.empty()) {
        std::cerr << "internal: derivation failed re-validation: " << err << "\n";
        return 1;
      }
      std::cout << "ahat(P^" << b_N << ", " << b_s << ") >= " << fact->bound.str() << " (~"
                << fact->bound.decimal() << ")\n";
      std::cout << derivation_summary(fact);
      if (!b_emit.empty()) {
        write_file(b_emit, certs::dump(certs::fact_file(fact)));
        std::cout << "certificate written to " << b_emit << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(cmd_empty)) {
      SystemSpec sys;
      sys.N = e_N;
      sys.degree = LinExpr::parse(e_degree);
      sys.mults = SystemSpec::parse_mults(e_mults);
      auto cert = cremona::prove_empty(sys, e_max_steps);
      if (!cert) {
        std::cout << "NOT PROVEN within " << e_max_steps << " steps\n";
        return 1;
      }
      std::cout << "EMPTY for all m >= " << cert->m0.get_str() << ": " << sys.str() << "\n";
      for (auto& st : cert->steps) {
        if (st.t == EmptinessCert::RStep::T::Cremona) {
          std::cout << "  cremona k=" << st.k.str() << " -> " << st.after.str() << "\n";
        } else {
          std::cout << "  clamp " << st.dropped.size() << " points -> " << st.after.str() << "\n";
        }
      }
      if (cert->negative_degree)
        std::cout << "  contradiction: degree eventually negative\n";
      else
        std::cout << "  contradiction: multiplicity exceeds degree (witness index "
                  << cert->witness << ")\n";
      if (!e_emit.empty()) {
        write_file(e_emit, certs::dump(certs::cert_file(cert)));
        std::cout << "certificate written to " << e_emit << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(cmd_dem)) {
      bounds::BoundEngine engine;
      int jobs = d_jobs > 0 ? d_jobs : cfg.jobs;
      demailly::SuiteReport rep;
      if (!d_suite.empty()) {
        rep = demailly::run_suite(engine, d_suite, jobs, d_nmax);
      } else {
        if (d_N == 0 || d_range.empty())
          throw CLI::ValidationError("demailly", "need --suite or both --N and --s");
        auto [lo, hi] = parse_range(d_range);
        rep.name = "custom";
        PointMode mode = d_mode == "general" ? PointMode::General : PointMode::VeryGeneral;
        for (long long s = lo; s <= hi; ++s)
          rep.rows.push_back(demailly::verify_case(engine, d_N, s, mode));
        for (auto& r : rep.rows) {
          if (r.status == demailly::Status::Proven) ++rep.proven;
          if (r.status == demailly::Status::Unproven) ++rep.unproven;
          if (r.status == demailly::Status::Discrepancy) ++rep.discrepancy;
        }
      }
      for (auto& line : rep.lemma_lines) std::cout << line << "\n";
      std::vector<report::Row> rows;
      std::optional<certs::Store> store;
      if (!d_certs.empty()) store.emplace(d_certs);
      for (auto& v : rep.rows) {
        report::Row row{v, ""};
        if (store) row.cert_id = store->save(certs::verdict_file(v));
        rows.push_back(std::move(row));
      }
      for (auto& row : rows) {
        const auto& v = row.verdict;
        std::cout << "N=" << v.N << " s=" << v.s << " ell=" << v.ell << " required "
                  << v.required.str() << " achieved " << v.achieved->bound.str() << " "
                  << demailly::status_name(v.status);
        if (v.containment_r) std::cout << " r=" << *v.containment_r;
        if (!v.note.empty()) std::cout << " (" << v.note << ")";
        std::cout << "\n";
      }
      std::cout << report::summary_line(rep) << "\n";
      if (!d_report.empty()) {
        write_file(d_report, report::emit_report(rows, report::Format::Markdown, rep.name));
        std::cout << "report written to " << d_report << "\n";
      }
      return rep.ok() ? 0 : 1;
    }

    if (app.got_subcommand(cmd_hil)) {
      auto h = hf_double(h_N, h_s, h_d);
      if (!h_oracle) {
        if (h.exceptional)
          std::cout << "EXCEPTIONAL (use --oracle)\n";
        else
          std::cout << h.value.get_str() << "\n";
        return 0;
      }
      std::uint64_t prime = h_prime == "auto" ? cfg.prime : std::stoull(h_prime);
      auto r = oracle::system_dim(h_N, h_d, std::vector<long long>(h_s, 2), prime,
                                  h_seed_set ? h_seed : cfg.seed, cfg.size_cap);
      std::cout << r.rank << (h.exceptional ? " (defective: min formula gives " : " (min formula: ");
      Int cols = binomial(h_d + h_N, h_N), hp = Int(h_s) * (h_N + 1);
      std::cout << (cols < hp ? cols : hp).get_str() << ")\n";
      return 0;
    }

    if (app.got_subcommand(cmd_check)) {
      bool all_ok = true;
      for (auto& path : c_files) {
        std::ifstream is(path);
        if (!is) {
          std::cerr << path << ": cannot open\n";
          return 2;
        }
        certs::json doc;
        try {
          doc = certs::json::parse(is);
        } catch (const std::exception& e) {
          std::cout << path << ": parse error: " << e.what() << "\n";
          all_ok = false;
          continue;
        }
        auto res = checker::check_certificate(doc);
        std::cout << path << ": " << res.str() << "\n";
        all_ok = all_ok && res.ok;
      }
      return all_ok ? 0 : 1;
    }

    if (app.got_subcommand(cmd_ov)) {
      std::uint64_t seed = o_seed_set ? o_seed : cfg.seed;
      if (o_rule == "cremona") {
        auto rep = oracle::validate_cremona_rule(o_N, o_trials, seed, cfg.prime);
        for (auto& l : rep.lines) std::cout << l << "\n";
        std::cout << "trials=" << rep.trials << " reduced-empty=" << rep.reduced_empty
                  << " violations=" << rep.violations << "\n";
        return rep.violations == 0 ? 0 : 1;
      }
      auto rep = oracle::ah_crosscheck(o_N, o_smax, o_dmax, cfg.prime, seed);
      for (auto& l : rep.failures) std::cout << l << "\n";
      std::cout << "checked=" << rep.checked << " exceptional=" << rep.exceptional
                << (rep.ok ? " all consistent" : " FAILURES") << "\n";
      return rep.ok ? 0 : 1;
    }

    if (app.got_subcommand(cmd_rep)) {
      certs::Store store(r_certs);
      std::vector<report::Row> rows;
      for (auto& entry : std::filesystem::directory_iterator(store.dir())) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream is(entry.path());
        certs::json doc = certs::json::parse(is);
        if (doc.value("kind", "") != "verdict") continue;
        // Rebuild the displayed row from the claim and the final verdict step.
        const auto& claim = doc["claim"];
        const auto& last = doc["steps"].back();
        demailly::Verdict v;
        v.N = claim["N"].get<int>();
        v.s = claim["s"].get<long long>();
        v.mode = claim["mode"] == "general" ? PointMode::General : PointMode::VeryGeneral;
        v.ell = last["params"]["ell"].get<long long>();
        v.required = Rat::parse(last["params"]["required"].get<std::string>());
        std::string st = last["params"]["status"].get<std::string>();
        v.status = st == "PROVEN" ? demailly::Status::Proven
                   : st == "UNPROVEN" ? demailly::Status::Unproven
                                      : demailly::Status::Discrepancy;
        if (!last["params"]["containment_r"].is_null())
          v.containment_r = last["params"]["containment_r"].get<long long>();
        v.note = last["params"]["note"].get<std::string>();
        v.correspondence = demailly::correspondence_label(v.N, v.s, v.mode, v.ell);
        auto res = checker::check_certificate(doc);
        if (!res.ok) {
          std::cerr << entry.path().string() << ": invalid certificate: " << res.str() << "\n";
          return 1;
        }
        auto f = std::make_shared<BoundFact>();
        f->N = v.N;
        f->s = v.s;
        f->bound = Rat::parse(last["params"]["achieved"].get<std::string>());
        v.achieved = f;
        rows.push_back({v, entry.path().stem().string()});
      }
      auto text = report::emit_report(rows, r_format == "md" ? report::Format::Markdown
                                                             : report::Format::Tsv);
      if (r_out.empty())
        std::cout << text;
      else
        write_file(r_out, text);
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
