// Rank-2 chamber systems: the complete-bipartite digon D(q1,q2) as a grid of
// chambers, the generalized triangle T(D) built from a difference set, the
// polygon axioms on the panel incidence graph, and cyclic panel-regular
// actions.

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "singer/diffsets.hpp"
#include "singer/error.hpp"

namespace singer {

// Two labels throughout: index 0 = s, index 1 = t.
struct ChamberSystem {
  enum class Kind { digon, triangle };

  Kind kind = Kind::digon;
  int mod_first = 0;   // x coordinates live in Z/mod_first
  int mod_second = 0;  // y coordinates live in Z/mod_second
  std::vector<std::pair<int, int>> coords;         // chamber -> (x, y)
  std::map<std::pair<int, int>, int> index_of;     // realization dictionary
  std::array<std::vector<std::vector<int>>, 2> panels;  // per label: panel -> chambers
  std::array<std::vector<int>, 2> panel_of;             // per label: chamber -> panel

  int size() const { return static_cast<int>(coords.size()); }
};

namespace detail {

inline void index_panels(ChamberSystem& c) {
  for (int label = 0; label < 2; ++label) {
    std::map<int, int> panel_id;
    c.panel_of[label].assign(c.coords.size(), -1);
    for (int i = 0; i < c.size(); ++i) {
      int key = label == 0 ? c.coords[i].first : c.coords[i].second;
      auto [it, fresh] = panel_id.emplace(key, static_cast<int>(c.panels[label].size()));
      if (fresh) c.panels[label].emplace_back();
      c.panels[label][it->second].push_back(i);
      c.panel_of[label][i] = it->second;
    }
  }
}

}  // namespace detail

// Chambers Z/k1 x Z/k2; s-panels are columns (equal x), t-panels rows.
inline ChamberSystem build_digon(int q1, int q2) {
  if (q1 < 1 || q2 < 1) throw Error("OutOfRange", "digon orders must be >= 1");
  ChamberSystem c;
  c.kind = ChamberSystem::Kind::digon;
  c.mod_first = q1 + 1;
  c.mod_second = q2 + 1;
  for (int x = 0; x < c.mod_first; ++x)
    for (int y = 0; y < c.mod_second; ++y) {
      c.index_of[{x, y}] = c.size();
      c.coords.emplace_back(x, y);
    }
  detail::index_panels(c);
  return c;
}

// Chambers {(x, x+d) : x in Z/deltaZ, d in D}; s-panels on the first
// coordinate, t-panels on the second.
inline ChamberSystem build_triangle(BasedDifferenceSet const& d) {
  ChamberSystem c;
  c.kind = ChamberSystem::Kind::triangle;
  c.mod_first = c.mod_second = d.set.delta;
  for (int x = 0; x < d.set.delta; ++x)
    for (int e : d.set.elements) {
      int y = (x + e) % d.set.delta;
      c.index_of[{x, y}] = c.size();
      c.coords.emplace_back(x, y);
    }
  detail::index_panels(c);
  return c;
}

// Panel indices from realization coordinates.
inline int s_panel_index(ChamberSystem const& c, int x) {
  for (int i = 0; i < c.size(); ++i)
    if (c.coords[i].first == x) return c.panel_of[0][i];
  throw Error("ChamberNotFound", "no chamber with x = " + std::to_string(x));
}

inline int t_panel_index(ChamberSystem const& c, int y) {
  for (int i = 0; i < c.size(); ++i)
    if (c.coords[i].second == y) return c.panel_of[1][i];
  throw Error("ChamberNotFound", "no chamber with y = " + std::to_string(y));
}

struct PolygonReport {
  bool pass = false;
  int diameter = -1;  // -1 when the incidence graph is disconnected
  int girth = -1;     // -1 when acyclic
  int thickness = 0;  // smallest panel size
  std::string failure;  // empty when pass
};

// Checks whether the panel incidence graph (vertices = panels, one edge per
// chamber) is that of a generalized m-gon: connected, diameter m, girth 2m,
// all panels of size >= 2. Parallel edges count as girth-2 cycles.
inline PolygonReport verify_generalized_polygon(ChamberSystem const& c, int m) {
  PolygonReport rep;
  int ns = static_cast<int>(c.panels[0].size());
  int nt = static_cast<int>(c.panels[1].size());
  int nv = ns + nt;
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (vertex, edge id)
  std::map<std::pair<int, int>, int> seen;
  int parallel = 0;
  for (int i = 0; i < c.size(); ++i) {
    int u = c.panel_of[0][i];
    int v = ns + c.panel_of[1][i];
    if (++seen[{u, v}] > 1) ++parallel;
    adj[u].push_back({v, i});
    adj[v].push_back({u, i});
  }
  rep.thickness = c.size();
  for (int label = 0; label < 2; ++label)
    for (auto const& panel : c.panels[label])
      rep.thickness = std::min(rep.thickness, static_cast<int>(panel.size()));

  // Diameter via BFS from every vertex.
  int diameter = 0;
  bool connected = true;
  std::vector<int> dist(nv);
  for (int start = 0; start < nv; ++start) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[start] = 0;
    std::queue<int> bfs;
    bfs.push(start);
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop();
      for (auto [v, e] : adj[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          bfs.push(v);
        }
    }
    for (int v = 0; v < nv; ++v) {
      if (dist[v] < 0) connected = false;
      diameter = std::max(diameter, dist[v]);
    }
  }
  rep.diameter = connected ? diameter : -1;

  // Girth: shortest cycle through each vertex by BFS with parent edges.
  int girth = -1;
  if (parallel > 0) {
    girth = 2;
  } else {
    std::vector<int> parent_edge(nv);
    for (int start = 0; start < nv; ++start) {
      std::fill(dist.begin(), dist.end(), -1);
      std::fill(parent_edge.begin(), parent_edge.end(), -1);
      dist[start] = 0;
      std::queue<int> bfs;
      bfs.push(start);
      while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (auto [v, e] : adj[u]) {
          if (e == parent_edge[u]) continue;
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            parent_edge[v] = e;
            bfs.push(v);
          } else {
            int len = dist[u] + dist[v] + 1;
            if (girth < 0 || len < girth) girth = len;
          }
        }
      }
    }
  }
  rep.girth = girth;

  if (!connected)
    rep.failure = "incidence graph disconnected";
  else if (rep.thickness < 2)
    rep.failure = "panel of size < 2";
  else if (rep.diameter != m)
    rep.failure = "diameter " + std::to_string(rep.diameter) + " != " + std::to_string(m);
  else if (rep.girth != 2 * m)
    rep.failure = "girth " + std::to_string(rep.girth) + " != " + std::to_string(2 * m);
  rep.pass = rep.failure.empty();
  return rep;
}

// A chamber-system automorphism of finite order, given by its generator.
struct CyclicAction {
  int order = 1;
  std::vector<int> generator;  // permutation of chamber indices
};

// Validates that perm is an automorphism (permutation preserving both panel
// partitions), computes its order, and wraps it.
inline CyclicAction cyclic_action(ChamberSystem const& c, std::vector<int> perm) {
  if (static_cast<int>(perm.size()) != c.size())
    throw Error("NotAnAutomorphism", "permutation size mismatch");
  std::vector<char> hit(c.size(), 0);
  for (int v : perm) {
    if (v < 0 || v >= c.size() || hit[v])
      throw Error("NotAnAutomorphism", "not a permutation");
    hit[v] = 1;
  }
  for (int label = 0; label < 2; ++label)
    for (auto const& panel : c.panels[label])
      for (int i : panel)
        if (c.panel_of[label][perm[i]] != c.panel_of[label][perm[panel[0]]])
          throw Error("NotAnAutomorphism", "panel partition not preserved");
  CyclicAction a;
  a.generator = std::move(perm);
  std::vector<int> power = a.generator;
  a.order = 1;
  auto is_identity = [&](std::vector<int> const& p) {
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
      if (p[i] != i) return false;
    return true;
  };
  while (!is_identity(power)) {
    std::vector<int> next(power.size());
    for (std::size_t i = 0; i < power.size(); ++i) next[i] = a.generator[power[i]];
    power = std::move(next);
    ++a.order;
  }
  return a;
}

// The shift (x, y) -> (x+1, y+1). Panel-regular of order k on D(q,q) and of
// order delta on T(D); undefined for D(q1,q2) with q1 != q2.
inline CyclicAction standard_action(ChamberSystem const& c) {
  if (c.mod_first != c.mod_second)
    throw Error("UnsupportedChamberSystem",
                "no cyclic panel-regular action when q1 != q2");
  std::vector<int> perm(c.size());
  for (int i = 0; i < c.size(); ++i) {
    auto [x, y] = c.coords[i];
    perm[i] = c.index_of.at({(x + 1) % c.mod_first, (y + 1) % c.mod_second});
  }
  CyclicAction a = cyclic_action(c, std::move(perm));
  return a;
}

// True iff the induced action on the panels of each label is free and
// transitive; for a cyclic group this means the generator induces a single
// cycle through all panels, and there are exactly `order` of them.
inline bool verify_panel_regular(ChamberSystem const& c, CyclicAction const& a) {
  for (int label = 0; label < 2; ++label) {
    int np = static_cast<int>(c.panels[label].size());
    if (np != a.order) return false;
    std::vector<int> panel_image(np);
    for (int p = 0; p < np; ++p)
      panel_image[p] = c.panel_of[label][a.generator[c.panels[label][p][0]]];
    int p = 0;
    for (int step = 0; step < np; ++step) {
      p = panel_image[p];
      if (step < np - 1 && p == 0) return false;  // cycle closed too early
    }
    if (p != 0) return false;
  }
  return true;
}

// The difference set {d : P meets g^d L} obtained from a panel-regular
// action on a generalized triangle; s_panel and t_panel are panel indices.
inline DifferenceSet difference_set_from_action(ChamberSystem const& c,
                                                CyclicAction const& a,
                                                int s_panel, int t_panel) {
  if (!verify_panel_regular(c, a) || !verify_generalized_polygon(c, 3).pass)
    throw Error("PreconditionViolated",
                "need a panel-regular action on a generalized triangle");
  std::vector<char> in_p(c.size(), 0);
  for (int i : c.panels[0].at(s_panel)) in_p[i] = 1;
  std::vector<int> image = c.panels[1].at(t_panel);
  std::vector<int> elements;
  for (int d = 0; d < a.order; ++d) {
    if (std::any_of(image.begin(), image.end(), [&](int i) { return in_p[i]; }))
      elements.push_back(d);
    for (int& i : image) i = a.generator[i];
  }
  return difference_set(std::move(elements), a.order);
}

}  // namespace singer
