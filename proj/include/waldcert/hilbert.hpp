#pragma once

// Hilbert functions of double-point schemes via the Alexander-Hirschowitz
// classification, and the derived bounds on alpha(I^(2)) and reg(I^(2)).

#include <stdexcept>

#include "waldcert/core.hpp"

namespace waldcert {

enum class PointMode { VeryGeneral, General };

// The full list of defective double-point systems: (i) d=2, 2<=s<=N;
// (ii) d=3, N=4, s=7; (iii) d=4, 2<=N<=4, s=C(N+2,2)-1.
inline bool ah_exceptional(int N, long long s, long long d) {
  if (d == 2 && s >= 2 && s <= N) return true;
  if (d == 3 && N == 4 && s == 7) return true;
  if (d == 4 && N >= 2 && N <= 4 && Int(s) == binomial(N + 2, 2) - 1) return true;
  return false;
}

struct HilbertValue {
  int N;
  long long s;
  long long d;
  bool exceptional;  // true value strictly below the min formula; see oracle
  Int value;         // min(C(d+N,N), s(N+1)) when not exceptional
};

inline HilbertValue hf_double(int N, long long s, long long d) {
  if (N < 1 || s < 1 || d < 0) throw std::invalid_argument("hf_double: bad arguments");
  HilbertValue h{N, s, d, ah_exceptional(N, s, d), 0};
  if (!h.exceptional) {
    Int cols = binomial(d + N, N);
    Int hp = Int(s) * (N + 1);
    h.value = cols < hp ? cols : hp;
  }
  return h;
}

struct Alpha2Bound {
  long long bound;
  bool sharp;  // false when a defective degree <= bound could lower alpha
};

// min{d : s(N+1) < C(d+N,N)}, an upper bound for alpha(I^(2)). Defective
// systems only gain sections, so the bound stays valid; the flag records
// whether a defect could make it non-sharp.
inline Alpha2Bound alpha2_upper(int N, long long s) {
  if (N < 1 || s < 1) throw std::invalid_argument("alpha2_upper: bad arguments");
  Int hp = Int(s) * (N + 1);
  long long d = 0;
  while (binomial(d + N, N) <= hp) ++d;
  bool sharp = true;
  for (long long dd = 0; dd <= d; ++dd)
    if (ah_exceptional(N, s, dd)) sharp = false;
  return {d, sharp};
}

struct Reg2Bound {
  long long bound;
  bool adjusted;  // the naive degree was defective and the bound moved up
};

// d*+1 where d* is the least non-defective d with C(d+N,N) >= s(N+1). A
// defective degree has Hilbert function strictly below s(N+1), so it cannot
// witness regularity and the scan skips it upward.
inline Reg2Bound reg2_upper(int N, long long s) {
  if (N < 1 || s < 1) throw std::invalid_argument("reg2_upper: bad arguments");
  Int hp = Int(s) * (N + 1);
  bool adjusted = false;
  for (long long d = 0;; ++d) {
    if (binomial(d + N, N) < hp) continue;
    if (ah_exceptional(N, s, d)) {
      adjusted = true;
      continue;
    }
    return {d + 1, adjusted};
  }
}

struct EllBracket {
  int N;
  long long s;
  long long ell;
  PointMode mode;
};

// VeryGeneral: C(N+l,N) <= (N+1)s < C(N+l+1,N).
// General:     C(N+l,N) <  (N+1)s <= C(N+l+1,N).
inline EllBracket ell_bracket(int N, long long s, PointMode mode) {
  if (N < 1 || s < 1) throw std::invalid_argument("ell_bracket: bad arguments");
  Int t = Int(s) * (N + 1);
  for (long long ell = 0;; ++ell) {
    Int lo = binomial(N + ell, N);
    Int hi = binomial(N + ell + 1, N);
    bool ok = mode == PointMode::VeryGeneral ? (lo <= t && t < hi) : (lo < t && t <= hi);
    if (ok) return {N, s, ell, mode};
    if (lo > t) throw std::logic_error("ell_bracket: no bracket found");
  }
}

}  // namespace waldcert
