#pragma once

// Oracle validation of emptiness-certificate instances. Two instance
// families per certificate:
//   - direct instantiations at m = m0 .. m0+3;
//   - the reduced family w_i q' t at degree p' t - 1 (p/q in lowest terms),
//     valid for every t >= 1: the certificate yields ahat >= p/q for its
//     multiplicity pattern, and a nonzero form in the reduced family would
//     force ahat < p'/q'.
// Instances above the column cap are reported as out of oracle reach.

#include "waldcert/oracle.hpp"

namespace waldcert {
namespace oracle {

struct InstanceCheck {
  std::string desc;
  int N = 0;
  long long d = 0;
  std::vector<long long> mults;
  Int columns;
  bool in_reach = false;
  bool certified = false;
  std::string detail;
};

namespace detail2 {
inline InstanceCheck make_instance(const std::string& desc, int N, const Int& d,
                                   std::vector<long long> mults) {
  InstanceCheck ic;
  ic.desc = desc;
  ic.N = N;
  ic.d = d.get_si();
  ic.mults = std::move(mults);
  ic.columns = binomial(d + N, N);
  return ic;
}
}  // namespace detail2

inline std::vector<InstanceCheck> certificate_instances(const CertPtr& cert,
                                                        long long column_cap = kDefaultColumnCap) {
  std::vector<InstanceCheck> out;
  const SystemSpec& claim = cert->claim;
  for (Int m = cert->m0; m < cert->m0 + 4; ++m) {
    Int d = claim.degree.eval(m);
    if (d < 0) continue;
    std::vector<long long> mults;
    for (const auto& e : claim.expanded()) {
      Int v = e.eval(m);
      if (v > 0) mults.push_back(v.get_si());
    }
    out.push_back(detail2::make_instance("m=" + m.get_str(), claim.N, d, std::move(mults)));
  }
  if (auto sp = cremona::detail::scaled_pattern(claim)) {
    Int g;
    mpz_gcd(g.get_mpz_t(), sp->p.get_mpz_t(), sp->q.get_mpz_t());
    Int p = sp->p / g, q = sp->q / g;
    for (Int t = 1; t <= 3; ++t) {
      Int d = p * t - 1;
      if (d < 0) continue;
      std::vector<long long> mults;
      for (auto& [w, c] : sp->weights)
        for (long long i = 0; i < c; ++i) mults.push_back((Int(w) * q * t).get_si());
      out.push_back(
          detail2::make_instance("reduced t=" + t.get_str(), claim.N, d, std::move(mults)));
    }
  }
  for (auto& ic : out) ic.in_reach = ic.columns <= column_cap;
  return out;
}

// Runs every in-reach instance; returns false if any fails certification.
inline bool validate_certificate_instances(const CertPtr& cert, std::vector<InstanceCheck>& checks,
                                           std::uint64_t prime = kDefaultPrime,
                                           std::uint64_t seed = kDefaultSeed,
                                           long long column_cap = kDefaultColumnCap) {
  checks = certificate_instances(cert, column_cap);
  bool ok = true;
  std::uint64_t i = 0;
  for (auto& ic : checks) {
    ++i;
    if (!ic.in_reach) {
      ic.detail = "out of oracle reach (" + ic.columns.get_str() + " columns)";
      continue;
    }
    auto r = system_dim(ic.N, ic.d, ic.mults, prime, mix64(seed ^ mix64(i)), column_cap);
    ic.certified = r.certified_empty;
    ic.detail = r.str();
    ok = ok && ic.certified;
  }
  return ok;
}

}  // namespace oracle
}  // namespace waldcert
