#pragma once

// Deterministic verdict tables (markdown or tab-separated), sorted by (N, s),
// with a correspondence column naming the theorem case each row reproduces.

#include <sstream>
#include <string>
#include <vector>

#include "waldcert/demailly.hpp"

namespace waldcert {
namespace report {

enum class Format { Markdown, Tsv };

struct Row {
  demailly::Verdict verdict;
  std::string cert_id;  // optional
};

inline std::string emit_report(std::vector<Row> rows, Format format = Format::Markdown,
                               const std::string& title = "") {
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.verdict.N != b.verdict.N) return a.verdict.N < b.verdict.N;
    if (a.verdict.s != b.verdict.s) return a.verdict.s < b.verdict.s;
    return (int)a.verdict.mode < (int)b.verdict.mode;
  });
  std::ostringstream os;
  const char* cols[] = {"N", "s", "mode", "ell", "required", "achieved",
                        "status", "r", "case", "certificate", "note"};
  if (format == Format::Markdown) {
    if (!title.empty()) os << "# " << title << "\n\n";
    os << "|";
    for (auto c : cols) os << " " << c << " |";
    os << "\n|";
    for (size_t i = 0; i < sizeof(cols) / sizeof(cols[0]); ++i) os << "---|";
    os << "\n";
  } else {
    for (size_t i = 0; i < sizeof(cols) / sizeof(cols[0]); ++i)
      os << (i ? "\t" : "") << cols[i];
    os << "\n";
  }
  for (const auto& row : rows) {
    const auto& v = row.verdict;
    std::string fields[] = {
        std::to_string(v.N),
        std::to_string(v.s),
        v.mode == PointMode::General ? "general" : "very-general",
        std::to_string(v.ell),
        v.required.str(),
        v.achieved ? v.achieved->bound.str() : "-",
        demailly::status_name(v.status),
        v.containment_r ? std::to_string(*v.containment_r) : "-",
        v.correspondence,
        row.cert_id.empty() ? "-" : row.cert_id,
        v.note.empty() ? "-" : v.note,
    };
    if (format == Format::Markdown) {
      os << "|";
      for (auto& f : fields) os << " " << f << " |";
      os << "\n";
    } else {
      for (size_t i = 0; i < sizeof(fields) / sizeof(fields[0]); ++i)
        os << (i ? "\t" : "") << fields[i];
      os << "\n";
    }
  }
  return os.str();
}

inline std::string summary_line(const demailly::SuiteReport& rep) {
  std::ostringstream os;
  os << rep.name << ": " << rep.rows.size() << " cases, " << rep.proven << " proven, "
     << rep.unproven << " unproven, " << rep.discrepancy << " discrepancy";
  return os.str();
}

}  // namespace report
}  // namespace waldcert
