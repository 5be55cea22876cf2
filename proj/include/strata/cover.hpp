#pragma once

#include <map>
#include <string>
#include <vector>

#include "strata/level_graph.hpp"

namespace strata {

// A cyclic k-cover of an enhanced level graph: over each vertex v a fiber of
// p_v sheets, over each edge e a fiber of gcd(kappa_e, k) copies, with the
// deck transformation acting by +1 on every fiber index. Edge copy (e, j)
// attaches to sheet (j + off) of the corresponding vertex fiber.
struct Cover {
  Stratum st;  // ambient stratum (leg orders and residue data)
  LevelGraph base;
  std::vector<long> fiber_v;
  std::vector<long> fiber_e;  // gcd(kappa_e, k)
  std::vector<long> off_u, off_l;
  std::vector<long> leg_off;  // leg fiber attachment offsets, mod fiber_v

  long k() const { return base.k; }
  bool trivial() const { return base.edges.empty() && base.num_levels == 1; }

  // Number of reachable prong-matchings: prod kappa_e / gcd(kappa_e, k).
  long prong_count() const;
  // Per-passage lcm of the abelian enhancements kappa_e/gcd(kappa_e,k).
  std::pair<std::vector<long>, long> ell_hat() const;
  // |Aut(Gamma)| of the base graph (legs fixed pointwise).
  long aut_base() const;
  // Automorphisms of the cover graph commuting with the deck transformation,
  // legs fixed pointwise.
  long aut_commuting() const;
  // Stabilizer counts in the group of level-wise fiber rotations.
  long stab_bbG() const;        // |Stab_G(hat Gamma)| over legs and edge ends
  long stab_adjacency() const;  // |Stab_G(H(pi))|, closed form
  long bbG_order() const;
  // Normalized stabilizer size S(pi) = |Stab_{G/G}(hat Gamma)| / prod g_e^2.
  Rat s_pi() const;
  Rat s_pi_brute() const;

  int cover_components() const;

  std::string encode() const;

  // The generalized stratum of k-differentials at a level, with induced
  // residue conditions. leg_map: ambient leg -> new leg; edge_map: base edge
  // with an end at this level -> new leg.
  Stratum level_stratum(int level, std::map<int, int>* leg_map = nullptr,
                        std::map<int, int>* edge_map = nullptr) const;

  // All level strata nonempty (and the cover has the right component count).
  bool boundary_nonempty() const;
};

// All covers of the graph up to isomorphism commuting with the deck action,
// filtered to the component count of limits from the stratum interior.
std::vector<Cover> enumerate_covers(const Stratum& st, const LevelGraph& g);

// Fixture mode: per-vertex fiber sizes supplied by the caller (used for
// regression graphs with positive-genus vertices); no component filter.
std::vector<Cover> enumerate_covers_with_fibers(const Stratum& st,
                                                const LevelGraph& g,
                                                const std::vector<long>& fibers);

// Isomorphism of covers over base isomorphisms fixing legs of the stratum
// (cover legs matched only up to fiber rotations).
bool cover_isomorphic(const Cover& a, const Cover& b);

// delta_I on the cover: contract the level passages not listed in `keep`.
Cover undegenerate_cover(const Cover& c, const std::vector<int>& keep);

// Base-graph isomorphisms g -> h fixing all legs pointwise.
std::vector<GraphAut> base_isomorphisms(const LevelGraph& g, const LevelGraph& h);

}  // namespace strata
