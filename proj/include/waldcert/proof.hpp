#pragma once

// In-memory derivation objects. A BoundFact states ahat(P^N, s) >= bound for
// generic points and carries its full derivation tree; an EmptinessCert
// proves a parameterized system has no nonzero forms for every m >= m0.
// Both are immutable once built and shared by pointer.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "waldcert/core.hpp"
#include "waldcert/system.hpp"

namespace waldcert {

struct BoundFact;
struct EmptinessCert;
using FactPtr = std::shared_ptr<const BoundFact>;
using CertPtr = std::shared_ptr<const EmptinessCert>;

enum class FactRule {
  Axiom,       // imported value with a citation tag
  Lift,        // monotonicity in the point count
  Weaken,      // lower the stated bound
  Split,       // s -> 2^N s, bound doubled
  Chudnovsky,  // s >= C(N+c,N), c >= 2  =>  bound (N+c+1)/N
  Decompose,   // Waldschmidt decomposition from P^{N-1} facts
  Clump,       // simple points bounded through a multiplicity-2 pattern
  FromEmpty,   // bound read off an emptiness certificate
};

inline const char* fact_rule_name(FactRule r) {
  switch (r) {
    case FactRule::Axiom: return "axiom";
    case FactRule::Lift: return "lift";
    case FactRule::Weaken: return "weaken";
    case FactRule::Split: return "split";
    case FactRule::Chudnovsky: return "chudnovsky";
    case FactRule::Decompose: return "decompose";
    case FactRule::Clump: return "clump";
    case FactRule::FromEmpty: return "bound_from_empty";
  }
  return "?";
}

struct BoundFact {
  int N = 0;
  long long s = 0;  // point count (total pattern points for mixed facts)
  Rat bound;

  // Mixed fat-point pattern (weight, count); empty for plain simple points.
  std::vector<std::pair<long long, long long>> pattern;

  FactRule rule = FactRule::Axiom;
  std::string tag;              // Axiom citation slug
  std::vector<FactPtr> inputs;  // Lift/Weaken/Split: 1; Decompose: k+1; Clump: 1
  CertPtr cert;                 // FromEmpty
  long long k = 0;              // Decompose
  long long chud_c = 0;         // Chudnovsky
  long long clump_doubles = 0, clump_simples = 0;

  bool mixed() const { return !pattern.empty(); }
};

struct EmptinessCert {
  enum class Kind { Reduction, Glue, FromBound };

  SystemSpec claim;
  Int m0 = 1;
  Kind kind = Kind::Reduction;

  // Reduction: a chain of steps from the claimed system to a contradiction.
  struct RStep {
    enum class T { Cremona, Clamp } t = T::Cremona;
    std::vector<long long> selection;  // Cremona: N+1 indices into the expanded list
    LinExpr k;                         // Cremona
    std::vector<long long> dropped;    // Clamp: indices before removal
    Int threshold = 1;                 // Clamp: max clamp threshold
    SystemSpec after;                  // recorded state; checker re-derives it
  };
  std::vector<RStep> steps;
  bool negative_degree = false;  // contradiction kind
  long long witness = -1;        // index of the multiplicity exceeding the degree
  Int contradiction_m0 = 1;

  // Glue
  CertPtr left, right;
  long long glue_index = -1;  // index (expanded) of the degree+1 point in right

  // FromBound
  FactPtr source;
  Int p = 0, q = 0;  // claim is I((q m)^s)_{p m - 1}
};

}  // namespace waldcert
