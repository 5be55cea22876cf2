#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strata/rational.hpp"

namespace strata {

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegreeMismatch : EngineError {
  using EngineError::EngineError;
};
struct Unstable : EngineError {
  using EngineError::EngineError;
};
struct EmptyStratum : EngineError {
  using EngineError::EngineError;
};
struct BoundExceeded : EngineError {
  using EngineError::EngineError;
};
struct HorizontalEdge : EngineError {
  using EngineError::EngineError;
};
struct ParseError : EngineError {
  using EngineError::EngineError;
};

// A point of the canonical cover: sheet j of the fiber over a leg,
// j in [0, gcd(|order|, k)).
struct CoverPoint {
  int leg = 0;
  int sheet = 0;
  auto operator<=>(const CoverPoint&) const = default;
};

// A generalized genus-zero stratum of k-differentials: a disjoint union of
// rational components, each carrying legs with prescribed k-differential
// orders, plus an optional residue condition given as a tau-invariant
// partition of cover points over poles of cover order < -1.
struct Stratum {
  long k = 1;
  std::vector<long> leg_order;              // by leg id 0..n-1
  std::vector<int> leg_offset;              // sheet offset of the leg fiber
  std::vector<std::vector<int>> components; // leg ids per component
  std::vector<std::vector<CoverPoint>> residue_parts;

  int num_legs() const { return static_cast<int>(leg_order.size()); }
  int num_components() const { return static_cast<int>(components.size()); }
  int component_of(int leg) const;

  // gcd(k, order) fiber size of a leg; gcd(k, all orders) for a component.
  long leg_fiber(int leg) const { return order_gcd(k, leg_order[leg]); }
  long component_fiber(int comp) const;
  // Cover order at a point of the fiber over the leg.
  long cover_order(int leg) const {
    return (leg_order[leg] + k) / leg_fiber(leg) - 1;
  }
  bool is_cover_pole(int leg) const { return cover_order(leg) < -1; }
  bool is_cover_simple_pole(int leg) const { return cover_order(leg) == -1; }

  // gcd(k, m_1, ..., m_n) of a connected single-component stratum: the
  // k-differential is the g0-th power of a primitive (k/g0)-differential.
  long power_datum() const;

  // Rank of the residue condition inside the residue-theorem space:
  // dim(R cap ambient) - dim(R cap S), computed exactly over Q(zeta_k).
  long residue_rank_drop() const;

  // Projectivized dimension; throws EmptyStratum if negative.
  long dimension() const;

  // True iff the stratum has no points (negative dimension, or the residue
  // constraints force a vanishing residue at a simple pole of the cover).
  bool empty() const;

  // Whether dropping the parts with the given indices (a tau-orbit of parts)
  // leaves R cap S unchanged.
  bool parts_redundant(const std::vector<int>& part_indices) const;

  // Canonical text form `k;(m,...);(m,...);R:{{...}}`, stable under
  // component reordering; used as cache key and CLI round-trip format.
  std::string encode() const;

  static Stratum parse(const std::string& text);
  // Validation used by parse and by the public constructor path.
  void validate() const;
};

// validate(k, components) -> Stratum with deterministic normalization.
Stratum make_stratum(long k, const std::vector<std::vector<long>>& component_orders);

}  // namespace strata
