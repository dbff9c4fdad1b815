#pragma once

// Linear systems of degree-d forms with prescribed vanishing orders at
// generic points, parameterized by m: I(m_1(m), ..., m_s(m))_{d(m)}.

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "waldcert/linexpr.hpp"

namespace waldcert {

struct SystemSpec {
  int N = 0;
  LinExpr degree;
  std::vector<std::pair<LinExpr, long long>> mults;  // (expression, count)

  long long total_points() const {
    long long t = 0;
    for (auto& [e, c] : mults) t += c;
    return t;
  }

  std::vector<LinExpr> expanded() const {
    std::vector<LinExpr> v;
    v.reserve(total_points());
    for (auto& [e, c] : mults)
      for (long long i = 0; i < c; ++i) v.push_back(e);
    return v;
  }

  static SystemSpec from_expanded(int N, const LinExpr& degree, const std::vector<LinExpr>& v) {
    SystemSpec s;
    s.N = N;
    s.degree = degree;
    for (const auto& e : v) {
      if (!s.mults.empty() && s.mults.back().first == e)
        ++s.mults.back().second;
      else
        s.mults.emplace_back(e, 1);
    }
    return s;
  }

  // Multiset-canonical form: sorted by eventual size, equal entries merged.
  SystemSpec canonical() const {
    auto v = expanded();
    std::sort(v.begin(), v.end(), [](const LinExpr& a, const LinExpr& b) {
      if (a.slope != b.slope) return a.slope > b.slope;
      return a.intercept > b.intercept;
    });
    return from_expanded(N, degree, v);
  }

  bool same_system(const SystemSpec& o) const {
    if (N != o.N || degree != o.degree) return false;
    auto a = canonical().mults, b = o.canonical().mults;
    return a == b;
  }

  std::string mults_str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : mults) {
      if (!first) os << ", ";
      first = false;
      os << e.str() << " x" << c;
    }
    return os.str();
  }

  std::string str() const {
    std::ostringstream os;
    os << "P^" << N << ": I(" << mults_str() << ")_{" << degree.str() << "}";
    return os.str();
  }

  // "20m x9, 30m x1" (count defaults to 1 when the x-part is omitted).
  static std::vector<std::pair<LinExpr, long long>> parse_mults(const std::string& text) {
    std::vector<std::pair<LinExpr, long long>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::string t;
      for (char c : item)
        if (!std::isspace((unsigned char)c)) t += c;
      if (t.empty()) continue;
      auto x = t.rfind('x');
      long long count = 1;
      std::string expr = t;
      if (x != std::string::npos && x + 1 < t.size() &&
          std::all_of(t.begin() + x + 1, t.end(), [](char c) { return std::isdigit((unsigned char)c); })) {
        count = std::stoll(t.substr(x + 1));
        expr = t.substr(0, x);
      }
      if (count <= 0) throw std::invalid_argument("multiplicity count must be positive");
      out.emplace_back(LinExpr::parse(expr), count);
    }
    if (out.empty()) throw std::invalid_argument("empty multiplicity list");
    return out;
  }
};

}  // namespace waldcert
