#pragma once

// Affine-linear expressions a*m + b in the scaling parameter m, with the
// eventual-comparison calculus. A comparison verdict carries the explicit
// threshold m0 from which the strict relation holds at every integer m >= m0.

#include <cctype>
#include <stdexcept>
#include <string>

#include "waldcert/core.hpp"

namespace waldcert {

struct LinExpr {
  Int slope;
  Int intercept;

  LinExpr() : slope(0), intercept(0) {}
  LinExpr(Int s, Int i) : slope(std::move(s)), intercept(std::move(i)) {}
  static LinExpr constant(const Int& c) { return LinExpr(0, c); }

  Int eval(const Int& m) const { return slope * m + intercept; }

  LinExpr operator+(const LinExpr& o) const { return LinExpr(slope + o.slope, intercept + o.intercept); }
  LinExpr operator-(const LinExpr& o) const { return LinExpr(slope - o.slope, intercept - o.intercept); }
  bool operator==(const LinExpr& o) const { return slope == o.slope && intercept == o.intercept; }
  bool operator!=(const LinExpr& o) const { return !(*this == o); }

  std::string str() const {
    if (slope == 0) return intercept.get_str();
    std::string s;
    if (slope == 1) {
      s = "m";
    } else if (slope == -1) {
      s = "-m";
    } else {
      s = slope.get_str() + "m";
    }
    if (intercept > 0) s += "+" + intercept.get_str();
    if (intercept < 0) s += intercept.get_str();
    return s;
  }

  // Accepts "36m-1", "20m", "-2m-3", "m+4", "-m", and bare integers ("7").
  static LinExpr parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (!std::isspace((unsigned char)c)) s += c;
    if (s.empty()) throw std::invalid_argument("LinExpr: empty string");
    auto mpos = s.find('m');
    if (mpos == std::string::npos) return LinExpr(0, Int(s));
    std::string co = s.substr(0, mpos);
    std::string rest = s.substr(mpos + 1);
    Int slope;
    if (co.empty() || co == "+")
      slope = 1;
    else if (co == "-")
      slope = -1;
    else
      slope = Int(co);
    Int intercept = 0;
    if (!rest.empty()) {
      if (rest[0] != '+' && rest[0] != '-')
        throw std::invalid_argument("LinExpr: bad intercept in '" + text + "'");
      intercept = Int(rest);
    }
    return LinExpr(slope, intercept);
  }
};

struct Comparison {
  enum class Kind { EventuallyLess, EventuallyGreater, AlwaysEqual };
  Kind kind;
  Int m0;  // 1 for AlwaysEqual

  bool eventually_less() const { return kind == Kind::EventuallyLess; }
  bool eventually_greater() const { return kind == Kind::EventuallyGreater; }
  bool always_equal() const { return kind == Kind::AlwaysEqual; }
};

// Verdict on a(m) vs b(m) for all integer m >= m0. Strict verdicts exclude
// equality at every m >= m0.
inline Comparison compare(const LinExpr& a, const LinExpr& b) {
  Int ds = a.slope - b.slope;
  Int di = a.intercept - b.intercept;
  if (ds == 0) {
    if (di == 0) return {Comparison::Kind::AlwaysEqual, 1};
    return {di < 0 ? Comparison::Kind::EventuallyLess : Comparison::Kind::EventuallyGreater, 1};
  }
  if (ds < 0) {
    // a < b  <=>  m > di / (-ds)
    Int m0 = floor_div(di, -ds) + 1;
    if (m0 < 1) m0 = 1;
    return {Comparison::Kind::EventuallyLess, m0};
  }
  Int m0 = floor_div(-di, ds) + 1;
  if (m0 < 1) m0 = 1;
  return {Comparison::Kind::EventuallyGreater, m0};
}

// e(m) <= 0 for all m >= m0 for some m0 (integer-valued, so e <= 0 <=> e < 1).
inline bool eventually_nonpositive(const LinExpr& e, Int* m0 = nullptr) {
  Comparison c = compare(e, LinExpr::constant(1));
  if (!c.eventually_less()) return false;
  if (m0) *m0 = c.m0;
  return true;
}

inline bool eventually_negative(const LinExpr& e, Int* m0 = nullptr) {
  Comparison c = compare(e, LinExpr::constant(0));
  if (!c.eventually_less()) return false;
  if (m0) *m0 = c.m0;
  return true;
}

// Ordering by eventual size: slope first, then intercept.
inline bool eventually_greater_order(const LinExpr& a, const LinExpr& b) {
  if (a.slope != b.slope) return a.slope > b.slope;
  return a.intercept > b.intercept;
}

}  // namespace waldcert
