#pragma once

#include <functional>
#include <string>
#include <vector>

#include "strata/stratum.hpp"

namespace strata {

struct GraphVertex {
  int level = 0;      // 0, -1, ..., -(num_levels-1)
  int component = 0;  // component of the ambient stratum
  std::vector<int> legs;
};

struct GraphEdge {
  int upper = 0;
  int lower = 0;
  long top_order = 0;  // order at the upper end; the lower end has -2k - top_order
};

// Enhanced level graph of a generalized genus-zero stratum: a leveled forest
// (one tree per stratum component) whose vertices satisfy the degree
// condition sum(orders) = -2k.
struct LevelGraph {
  long k = 1;
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  int num_levels = 1;

  long kappa(int e) const { return edges[e].top_order + k; }
  long lower_order(int e) const { return -2 * k - edges[e].top_order; }
  bool horizontal(int e) const {
    return vertices[edges[e].upper].level == vertices[edges[e].lower].level;
  }
  bool has_horizontal() const;
  int num_passages() const { return num_levels - 1; }
  // Does edge e cross the passage between levels -(i-1) and -i? (i in 1..L)
  bool crosses(int e, int passage) const {
    return vertices[edges[e].upper].level >= -(passage - 1) &&
           vertices[edges[e].lower].level <= -passage;
  }

  int vertex_of_leg(int leg) const;
  void check() const;  // degree condition, forest, stability, normalization

  // Deterministic text encoding, canonical up to isomorphism fixing legs.
  std::string encode() const;
};

// All enhanced (L+1)-level graphs of the stratum, duplicate-free up to
// isomorphism. With include_horizontal (only meaningful at L=1), the
// one-level graphs with a single kappa=0 edge are appended.
std::vector<LevelGraph> enumerate_level_graphs(const Stratum& st, int L,
                                               bool include_horizontal = false,
                                               int max_legs = 8);

std::vector<LevelGraph> enumerate_horizontal_divisors(const Stratum& st);

// delta_I: keeps the listed level passages (1-based) and contracts the rest.
LevelGraph undegenerate(const LevelGraph& g, const std::vector<int>& keep);

struct GraphAut {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
};

// Automorphisms fixing all legs pointwise (vertex and half-edge bijections
// preserving levels, attachment and enhancements). Identity included.
std::vector<GraphAut> automorphisms(const LevelGraph& g);
long automorphism_count(const LevelGraph& g);

// Per-passage lcm of the supplied per-edge enhancement, and their product.
// Throws HorizontalEdge if the graph has a horizontal edge.
std::pair<std::vector<long>, long> ell_factors(
    const LevelGraph& g, const std::function<long(int)>& enhancement);

}  // namespace strata
