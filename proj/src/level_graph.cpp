#include "strata/level_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace strata {

bool LevelGraph::has_horizontal() const {
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    if (horizontal(e)) return true;
  return false;
}

int LevelGraph::vertex_of_leg(int leg) const {
  for (int v = 0; v < static_cast<int>(vertices.size()); ++v)
    for (int l : vertices[v].legs)
      if (l == leg) return v;
  throw EngineError("leg not in graph");
}

void LevelGraph::check() const {
  std::vector<int> valence(vertices.size(), 0);
  for (const auto& e : edges) {
    valence[e.upper]++;
    valence[e.lower]++;
    if (vertices[e.upper].level < vertices[e.lower].level)
      throw EngineError("edge orientation violates levels");
    if (vertices[e.upper].level == vertices[e.lower].level && e.top_order != -k)
      throw EngineError("horizontal edge must have kappa 0");
    if (vertices[e.upper].level > vertices[e.lower].level && e.top_order + k <= 0)
      throw EngineError("vertical edge needs kappa >= 1");
  }
  std::vector<bool> seen_level(num_levels, false);
  for (size_t v = 0; v < vertices.size(); ++v) {
    if (vertices[v].level > 0 || vertices[v].level <= -num_levels)
      throw EngineError("vertex level out of range");
    seen_level[-vertices[v].level] = true;
    if (static_cast<int>(vertices[v].legs.size()) + valence[v] < 3)
      throw Unstable("unstable vertex in level graph");
  }
  for (int l = 0; l < num_levels; ++l)
    if (!seen_level[l]) throw EngineError("empty level");
  // forest: one tree per stratum component
  std::vector<int> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) {
    int a = find(e.upper), b = find(e.lower);
    if (a == b) throw EngineError("graph has a cycle (genus > 0)");
    parent[a] = b;
  }
  std::set<int> roots;
  for (size_t v = 0; v < vertices.size(); ++v) roots.insert(find(static_cast<int>(v)));
  std::set<int> comps;
  for (const auto& vx : vertices) comps.insert(vx.component);
  if (roots.size() != comps.size())
    throw EngineError("component of the graph is disconnected");
}

namespace {

std::string encode_with_order(const LevelGraph& g, const std::vector<int>& perm) {
  std::vector<int> pos(g.vertices.size());
  for (size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = static_cast<int>(i);
  std::ostringstream os;
  os << "L" << g.num_levels << "|";
  for (size_t i = 0; i < perm.size(); ++i) {
    const auto& v = g.vertices[perm[i]];
    os << v.level << ":c" << v.component << ":";
    std::vector<int> legs = v.legs;
    std::sort(legs.begin(), legs.end());
    for (size_t j = 0; j < legs.size(); ++j)
      os << legs[j] + 1 << (j + 1 < legs.size() ? "," : "");
    os << "|";
  }
  std::vector<std::string> es;
  for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
    const auto& e = g.edges[ei];
    std::ostringstream eo;
    if (g.horizontal(ei))
      eo << "h(" << std::min(pos[e.upper], pos[e.lower]) << ","
         << std::max(pos[e.upper], pos[e.lower]) << ")";
    else
      eo << "e(" << pos[e.upper] << "," << pos[e.lower] << "," << e.top_order << ")";
    es.push_back(eo.str());
  }
  std::sort(es.begin(), es.end());
  for (const auto& s : es) os << s;
  return os.str();
}

}  // namespace

std::string LevelGraph::encode() const {
  // Legs are labeled, so only legless vertices with equal (level, component)
  // can permute; minimize the encoding over those.
  int n = static_cast<int>(vertices.size());
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  auto key = [&](int v) {
    std::vector<int> legs = vertices[v].legs;
    std::sort(legs.begin(), legs.end());
    return std::make_tuple(-vertices[v].level, vertices[v].component, legs);
  };
  std::stable_sort(base.begin(), base.end(),
                   [&](int a, int b) { return key(a) < key(b); });
  std::vector<std::pair<int, int>> groups;
  for (int i = 0; i < n;) {
    int j = i + 1;
    while (j < n && key(base[i]) == key(base[j])) ++j;
    if (j - i > 1) groups.emplace_back(i, j);
    i = j;
  }
  std::string best = encode_with_order(*this, base);
  std::function<void(size_t)> rec = [&](size_t gi) {
    if (gi == groups.size()) {
      std::string s = encode_with_order(*this, base);
      if (s < best) best = s;
      return;
    }
    auto [a, b] = groups[gi];
    std::sort(base.begin() + a, base.begin() + b);
    do {
      rec(gi + 1);
    } while (std::next_permutation(base.begin() + a, base.begin() + b));
  };
  if (!groups.empty()) rec(0);
  return best;
}

namespace {

void set_partitions(const std::vector<int>& items,
                    std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<std::vector<int>> current;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == items.size()) {
      out.push_back(current);
      return;
    }
    for (size_t b = 0; b < current.size(); ++b) {
      current[b].push_back(items[i]);
      rec(i + 1);
      current[b].pop_back();
    }
    current.push_back({items[i]});
    rec(i + 1);
    current.pop_back();
  };
  rec(0);
}

std::vector<std::vector<std::pair<int, int>>> labeled_trees(int m) {
  std::vector<std::vector<std::pair<int, int>>> trees;
  if (m == 1) {
    trees.push_back({});
    return trees;
  }
  if (m == 2) {
    trees.push_back({{0, 1}});
    return trees;
  }
  std::vector<int> seq(m - 2, 0);
  while (true) {
    std::vector<int> deg(m, 1);
    for (int s : seq) deg[s]++;
    std::vector<std::pair<int, int>> edges;
    std::set<int> leaves;
    for (int v = 0; v < m; ++v)
      if (deg[v] == 1) leaves.insert(v);
    for (int s : seq) {
      int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      edges.emplace_back(leaf, s);
      if (--deg[s] == 1) leaves.insert(s);
    }
    edges.emplace_back(*leaves.begin(), *std::next(leaves.begin()));
    trees.push_back(edges);
    int i = m - 3;
    while (i >= 0 && seq[i] == m - 1) seq[i--] = 0;
    if (i < 0) break;
    seq[i]++;
  }
  return trees;
}

struct ComponentShape {
  std::vector<std::vector<int>> blocks;
  std::vector<std::pair<int, int>> tree;
  std::vector<long> order_first;  // order seen from the .first side
  std::vector<int> orient;        // -1 first side upper, +1 second side upper, 0 horizontal
};

std::vector<ComponentShape> component_shapes(const Stratum& st, int c) {
  std::vector<ComponentShape> shapes;
  const auto& legs = st.components[c];
  int n_c = static_cast<int>(legs.size());
  int vmax = std::max(1, n_c - 2);
  std::vector<std::vector<std::vector<int>>> partitions;
  set_partitions(legs, partitions);
  for (const auto& part : partitions) {
    int b = static_cast<int>(part.size());
    for (int extra = 0; b + extra <= vmax; ++extra) {
      int m = b + extra;
      std::vector<std::vector<int>> blocks = part;
      for (int i = 0; i < extra; ++i) blocks.push_back({});
      for (const auto& tree : labeled_trees(m)) {
        std::vector<int> val(m, 0);
        for (auto [a, bb] : tree) val[a]++, val[bb]++;
        bool ok = true;
        for (int v = 0; v < m && ok; ++v)
          if (static_cast<int>(blocks[v].size()) + val[v] < 3) ok = false;
        if (!ok) continue;

        ComponentShape shape;
        shape.blocks = blocks;
        shape.tree = tree;
        std::vector<std::vector<std::pair<int, int>>> adj(m);
        for (int e = 0; e < static_cast<int>(tree.size()); ++e) {
          adj[tree[e].first].push_back({tree[e].second, e});
          adj[tree[e].second].push_back({tree[e].first, e});
        }
        std::vector<long> subtree_sum(m, 0);
        std::vector<int> order_v, par(m, -1), par_edge(m, -1);
        std::vector<int> stack{0};
        std::vector<bool> vis(m, false);
        vis[0] = true;
        while (!stack.empty()) {
          int v = stack.back();
          stack.pop_back();
          order_v.push_back(v);
          for (auto [w, e] : adj[v])
            if (!vis[w]) {
              vis[w] = true;
              par[w] = v;
              par_edge[w] = e;
              stack.push_back(w);
            }
        }
        for (auto it = order_v.rbegin(); it != order_v.rend(); ++it) {
          long s = 0;
          for (int l : blocks[*it]) s += st.leg_order[l];
          subtree_sum[*it] += s;
          if (par[*it] >= 0) subtree_sum[par[*it]] += subtree_sum[*it];
        }
        shape.order_first.assign(tree.size(), 0);
        shape.orient.assign(tree.size(), 0);
        for (int v = 1; v < m; ++v) {
          int e = par_edge[v];
          long child_side = -2 * st.k - subtree_sum[v];
          long on_first =
              (tree[e].first == v) ? child_side : -2 * st.k - child_side;
          shape.order_first[e] = on_first;
          long kappa_first = on_first + st.k;
          shape.orient[e] = kappa_first > 0 ? -1 : (kappa_first < 0 ? +1 : 0);
        }
        shapes.push_back(std::move(shape));
      }
    }
  }
  return shapes;
}

}  // namespace

std::vector<LevelGraph> enumerate_level_graphs(const Stratum& st, int L,
                                               bool include_horizontal,
                                               int max_legs) {
  if (st.num_legs() > max_legs)
    throw BoundExceeded("stratum has more legs than the configured bound");
  if (L < 0) throw EngineError("negative level count");

  std::vector<LevelGraph> result;
  std::set<std::string> seen;

  std::vector<std::vector<ComponentShape>> shapes(st.num_components());
  for (int c = 0; c < st.num_components(); ++c) shapes[c] = component_shapes(st, c);

  std::vector<const ComponentShape*> picked(st.num_components(), nullptr);
  std::function<void(int)> combine = [&](int c) {
    if (c < st.num_components()) {
      for (const auto& sh : shapes[c]) {
        picked[c] = &sh;
        combine(c + 1);
      }
      return;
    }
    int total = 0;
    std::vector<int> offset(picked.size(), 0);
    for (size_t i = 0; i < picked.size(); ++i) {
      offset[i] = total;
      total += static_cast<int>(picked[i]->blocks.size());
    }
    std::vector<int> level(total, 0);
    std::function<void(int)> assign = [&](int v) {
      if (v < total) {
        for (int l = 0; l >= -L; --l) {
          level[v] = l;
          // fail fast on edges with both ends placed
          bool ok = true;
          for (size_t i = 0; i < picked.size() && ok; ++i) {
            const auto& sh = *picked[i];
            for (int e = 0; e < static_cast<int>(sh.tree.size()) && ok; ++e) {
              int a = sh.tree[e].first + offset[i];
              int b = sh.tree[e].second + offset[i];
              if (a > v || b > v) continue;
              if (level[a] == level[b]) {
                ok = false;
              } else {
                bool first_upper = level[a] > level[b];
                if (sh.orient[e] == 0 || first_upper != (sh.orient[e] == -1))
                  ok = false;
              }
            }
          }
          if (ok) assign(v + 1);
        }
        return;
      }
      std::vector<bool> used(L + 1, false);
      for (int x : level) used[-x] = true;
      for (int l = 0; l <= L; ++l)
        if (!used[l]) return;
      LevelGraph g;
      g.k = st.k;
      g.num_levels = L + 1;
      for (size_t i = 0; i < picked.size(); ++i)
        for (const auto& blk : picked[i]->blocks) {
          GraphVertex vx;
          vx.component = static_cast<int>(i);
          vx.legs = blk;
          g.vertices.push_back(vx);
        }
      for (int x = 0; x < total; ++x) g.vertices[x].level = level[x];
      for (size_t i = 0; i < picked.size(); ++i) {
        const auto& sh = *picked[i];
        for (int e = 0; e < static_cast<int>(sh.tree.size()); ++e) {
          int a = sh.tree[e].first + offset[i];
          int b = sh.tree[e].second + offset[i];
          bool first_upper = level[a] > level[b];
          GraphEdge ge;
          ge.upper = first_upper ? a : b;
          ge.lower = first_upper ? b : a;
          ge.top_order =
              first_upper ? sh.order_first[e] : -2 * st.k - sh.order_first[e];
          g.edges.push_back(ge);
        }
      }
      std::string code = g.encode();
      if (seen.insert(code).second) result.push_back(std::move(g));
    };
    assign(0);
  };
  combine(0);

  std::sort(result.begin(), result.end(),
            [](const LevelGraph& a, const LevelGraph& b) {
              return a.encode() < b.encode();
            });
  if (include_horizontal && L == 1) {
    auto hor = enumerate_horizontal_divisors(st);
    for (auto& h : hor) result.push_back(std::move(h));
  }
  return result;
}

std::vector<LevelGraph> enumerate_horizontal_divisors(const Stratum& st) {
  // One-level graphs with a single kappa = 0 edge.
  std::vector<LevelGraph> result;
  std::set<std::string> seen;
  for (int c = 0; c < st.num_components(); ++c) {
    const auto& legs = st.components[c];
    int n_c = static_cast<int>(legs.size());
    for (int mask = 1; mask + 1 < (1 << n_c); ++mask) {
      std::vector<int> side_a, side_b;
      long sum_a = 0;
      for (int i = 0; i < n_c; ++i) {
        if (mask & (1 << i)) {
          side_a.push_back(legs[i]);
          sum_a += st.leg_order[legs[i]];
        } else {
          side_b.push_back(legs[i]);
        }
      }
      if (sum_a != -st.k) continue;
      if (side_a.size() < 2 || side_b.size() < 2) continue;
      LevelGraph g;
      g.k = st.k;
      g.num_levels = 1;
      for (int cc = 0; cc < st.num_components(); ++cc) {
        if (cc == c) continue;
        GraphVertex v;
        v.component = cc;
        v.legs = st.components[cc];
        g.vertices.push_back(v);
      }
      GraphVertex va, vb;
      va.component = c;
      va.legs = side_a;
      vb.component = c;
      vb.legs = side_b;
      g.vertices.push_back(va);
      g.vertices.push_back(vb);
      GraphEdge e;
      e.upper = static_cast<int>(g.vertices.size()) - 2;
      e.lower = static_cast<int>(g.vertices.size()) - 1;
      e.top_order = -st.k;
      g.edges.push_back(e);
      std::string code = g.encode();
      if (seen.insert(code).second) result.push_back(std::move(g));
    }
  }
  std::sort(result.begin(), result.end(),
            [](const LevelGraph& a, const LevelGraph& b) {
              return a.encode() < b.encode();
            });
  return result;
}

LevelGraph undegenerate(const LevelGraph& g, const std::vector<int>& keep) {
  std::set<int> kept(keep.begin(), keep.end());
  for (int i : kept)
    if (i < 1 || i > g.num_passages()) throw EngineError("bad passage index");
  auto new_level = [&](int old_level) {
    int cnt = 0;
    for (int i : kept)
      if (i <= -old_level) ++cnt;
    return -cnt;
  };
  std::vector<int> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges)
    if (new_level(g.vertices[e.upper].level) ==
        new_level(g.vertices[e.lower].level))
      parent[find(e.upper)] = find(e.lower);
  std::map<int, int> index;
  LevelGraph out;
  out.k = g.k;
  out.num_levels = static_cast<int>(kept.size()) + 1;
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    int r = find(static_cast<int>(v));
    if (!index.count(r)) {
      index[r] = static_cast<int>(out.vertices.size());
      GraphVertex nv;
      nv.level = new_level(g.vertices[v].level);
      nv.component = g.vertices[v].component;
      out.vertices.push_back(nv);
    }
  }
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    auto& nv = out.vertices[index[find(static_cast<int>(v))]];
    for (int l : g.vertices[v].legs) nv.legs.push_back(l);
  }
  for (const auto& e : g.edges) {
    int a = index[find(e.upper)], b = index[find(e.lower)];
    if (a == b) continue;
    GraphEdge ne;
    ne.upper = a;
    ne.lower = b;
    ne.top_order = e.top_order;
    out.edges.push_back(ne);
  }
  for (auto& v : out.vertices) std::sort(v.legs.begin(), v.legs.end());
  return out;
}

std::vector<GraphAut> automorphisms(const LevelGraph& g) {
  int n = static_cast<int>(g.vertices.size());
  std::vector<int> movable;
  for (int v = 0; v < n; ++v)
    if (g.vertices[v].legs.empty()) movable.push_back(v);

  std::vector<GraphAut> result;
  auto try_edges = [&](const std::vector<int>& vm) {
    std::map<std::tuple<int, int, long>, std::vector<int>> src, dst;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      src[{vm[g.edges[e].upper], vm[g.edges[e].lower], g.edges[e].top_order}]
          .push_back(e);
      dst[{g.edges[e].upper, g.edges[e].lower, g.edges[e].top_order}].push_back(e);
    }
    if (src.size() != dst.size()) return;
    for (auto& [key, es] : src) {
      auto it = dst.find(key);
      if (it == dst.end() || it->second.size() != es.size()) return;
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> classes;
    for (auto& [key, es] : src) classes.push_back({es, dst[key]});
    std::vector<int> emap(g.edges.size());
    std::function<void(size_t)> rec = [&](size_t ci) {
      if (ci == classes.size()) {
        result.push_back({vm, emap});
        return;
      }
      auto& [from, to] = classes[ci];
      std::vector<int> perm = to;
      std::sort(perm.begin(), perm.end());
      do {
        for (size_t i = 0; i < from.size(); ++i) emap[from[i]] = perm[i];
        rec(ci + 1);
      } while (std::next_permutation(perm.begin(), perm.end()));
    };
    rec(0);
  };

  std::sort(movable.begin(), movable.end());
  std::vector<int> perm = movable;
  std::vector<int> vmap(n);
  do {
    bool ok = true;
    for (size_t i = 0; i < movable.size() && ok; ++i) {
      int a = movable[i], b = perm[i];
      if (g.vertices[a].level != g.vertices[b].level ||
          g.vertices[a].component != g.vertices[b].component)
        ok = false;
    }
    if (ok) {
      std::iota(vmap.begin(), vmap.end(), 0);
      for (size_t i = 0; i < movable.size(); ++i) vmap[movable[i]] = perm[i];
      try_edges(vmap);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

long automorphism_count(const LevelGraph& g) {
  return static_cast<long>(automorphisms(g).size());
}

std::pair<std::vector<long>, long> ell_factors(
    const LevelGraph& g, const std::function<long(int)>& enhancement) {
  if (g.has_horizontal())
    throw HorizontalEdge("ell factors need a vertical graph");
  std::vector<long> per_passage;
  long prod = 1;
  for (int p = 1; p <= g.num_passages(); ++p) {
    long l = 1;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
      if (g.crosses(e, p)) l = std::lcm(l, enhancement(e));
    per_passage.push_back(l);
    prod *= l;
  }
  return {per_passage, prod};
}

}  // namespace strata
