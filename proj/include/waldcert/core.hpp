#pragma once

// Exact integer/rational arithmetic used throughout. All certification math
// runs on arbitrary-precision values; no floating point enters any verdict.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace waldcert {

using Int = mpz_class;

// C(n, k) with out-of-range arguments mapped to 0.
inline Int binomial(const Int& n, const Int& k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (!k.fits_ulong_p()) throw std::overflow_error("binomial: k too large");
  Int r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k.get_ui());
  return r;
}

inline Int binomial(long long n, long long k) { return binomial(Int(n), Int(k)); }

// Largest k with k^n <= s (s >= 1), i.e. floor of the n-th root.
inline Int iroot(const Int& s, unsigned long n) {
  if (s <= 0) return 0;
  Int r;
  mpz_root(r.get_mpz_t(), s.get_mpz_t(), n);
  return r;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Reduced rational with positive denominator.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long l) : v_(l) {}  // NOLINT: implicit by design
  Rat(const Int& n) : v_(n) {}
  Rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  Rat(long long num, long long den) : Rat(Int(num), Int(den)) {}

  Int num() const { return Int(v_.get_num()); }
  Int den() const { return Int(v_.get_den()); }

  Rat operator+(const Rat& o) const { return Rat(v_ + o.v_); }
  Rat operator-(const Rat& o) const { return Rat(v_ - o.v_); }
  Rat operator*(const Rat& o) const { return Rat(v_ * o.v_); }
  Rat operator/(const Rat& o) const {
    if (o.v_ == 0) throw std::domain_error("Rat: division by zero");
    return Rat(v_ / o.v_);
  }
  Rat operator-() const { return Rat(mpq_class(-v_)); }

  bool operator==(const Rat& o) const { return v_ == o.v_; }
  bool operator!=(const Rat& o) const { return v_ != o.v_; }
  bool operator<(const Rat& o) const { return v_ < o.v_; }
  bool operator<=(const Rat& o) const { return v_ <= o.v_; }
  bool operator>(const Rat& o) const { return v_ > o.v_; }
  bool operator>=(const Rat& o) const { return v_ >= o.v_; }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  // Deterministic decimal approximation, truncated toward zero.
  std::string decimal(int digits = 4) const {
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Int scaled = num() * scale / den();
    bool neg = scaled < 0;
    Int a = abs(scaled);
    std::string frac = (a % scale).get_str();
    while ((int)frac.size() < digits) frac = "0" + frac;
    return (neg ? "-" : "") + Int(a / scale).get_str() + "." + frac;
  }

  static Rat parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  }

 private:
  explicit Rat(const mpq_class& v) : v_(v) {}
  mpq_class v_;  // canonical: gcd(|num|, den) = 1, den > 0
};

// splitmix64, used to derive per-task oracle seeds reproducibly.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace waldcert
