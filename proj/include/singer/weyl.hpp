// Gluing matrices and the Singer graph they assemble. A gluing matrix over
// a connected defining graph L (edges labelled m_st in {2,3}; absent pairs
// are infinite) assigns each oriented edge a column: a permutation of
// {1..q} when m_st = 2, and a permutation of D* for some based difference
// set D of order q when m_st = 3. The associated Singer graph W has
// chambers Z/kZ, one panel per label, and per-edge defining suites pulled
// back through Omega_st (0 -> 0, x -> x(st)). Extraction recovers a gluing
// matrix from Weyl data by normalizing each 2-residue at chamber 0.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "singer/diffsets.hpp"
#include "singer/error.hpp"
#include "singer/polygons.hpp"

namespace singer {

struct CoxeterEdge {
  std::string a, b;
  int m = 3;  // 2 or 3
};

struct GluingColumn {
  std::string from, to;        // orientation of the edge {from, to}
  std::vector<int> entries;    // entries[n-1] = n(st), n in 1..q
};

struct GluingMatrix {
  std::vector<std::string> vertices;
  std::vector<CoxeterEdge> edges;  // file order
  int q = 0;
  std::vector<GluingColumn> columns;  // file order; one per edge

  std::optional<int> edge_label(std::string const& a, std::string const& b) const {
    for (auto const& e : edges)
      if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return e.m;
    return std::nullopt;
  }
};

// The defining graph L of the Coxeter matrix: vertices S, one edge per
// finite m_st.
struct DefiningGraph {
  std::vector<std::string> vertices;
  std::vector<CoxeterEdge> edges;
};

inline DefiningGraph defining_graph(GluingMatrix const& g) {
  return {g.vertices, g.edges};
}

struct GluingReport {
  bool valid = false;
  std::string message;  // first failure
};

inline GluingReport validate_gluing(GluingMatrix const& g) {
  auto fail = [](std::string msg) { return GluingReport{false, std::move(msg)}; };
  if (g.vertices.empty()) return fail("no vertices");
  {
    std::set<std::string> seen(g.vertices.begin(), g.vertices.end());
    if (seen.size() != g.vertices.size()) return fail("repeated vertex");
  }
  if (g.q < 2) return fail("order must be >= 2");
  int k = g.q + 1;
  int delta = g.q * g.q + g.q + 1;
  auto declared = [&](std::string const& v) {
    return std::find(g.vertices.begin(), g.vertices.end(), v) != g.vertices.end();
  };
  std::set<std::pair<std::string, std::string>> edge_keys;
  for (auto const& e : g.edges) {
    if (!declared(e.a) || !declared(e.b)) return fail("edge uses undeclared vertex");
    if (e.a == e.b) return fail("self-loop at " + e.a);
    if (e.m != 2 && e.m != 3) return fail("edge label must be 2 or 3");
    auto key = std::minmax(e.a, e.b);
    if (!edge_keys.insert({key.first, key.second}).second)
      return fail("duplicate edge {" + e.a + "," + e.b + "}");
  }
  // Connectivity of L.
  if (!g.vertices.empty()) {
    std::set<std::string> reached{g.vertices.front()};
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto const& e : g.edges) {
        bool ha = reached.count(e.a) > 0, hb = reached.count(e.b) > 0;
        if (ha != hb) {
          reached.insert(ha ? e.b : e.a);
          grew = true;
        }
      }
    }
    if (reached.size() != g.vertices.size()) return fail("defining graph is not connected");
  }
  // Exactly one column per edge, orienting it.
  std::set<std::pair<std::string, std::string>> column_keys;
  for (auto const& c : g.columns) {
    if (!g.edge_label(c.from, c.to))
      return fail("column " + c.from + " " + c.to + " has no matching edge");
    auto key = std::minmax(c.from, c.to);
    if (!column_keys.insert({key.first, key.second}).second)
      return fail("two columns for edge {" + c.from + "," + c.to + "}");
  }
  if (column_keys.size() != g.edges.size())
    return fail("every edge needs exactly one column");
  // Column conditions.
  for (auto const& c : g.columns) {
    int m = *g.edge_label(c.from, c.to);
    std::string where = "column " + c.from + " " + c.to;
    if (static_cast<int>(c.entries.size()) != g.q)
      return fail(where + ": expected " + std::to_string(g.q) + " entries");
    if (m == 2) {
      std::vector<int> sorted = c.entries;
      std::sort(sorted.begin(), sorted.end());
      for (int n = 1; n <= g.q; ++n)
        if (sorted[n - 1] != n)
          return fail(where + ": not a permutation of 1.." + std::to_string(g.q) +
                      " (mod " + std::to_string(k) + ")");
    } else {
      std::vector<int> with_zero = c.entries;
      for (int v : c.entries)
        if (v <= 0 || v >= delta)
          return fail(where + ": entry " + std::to_string(v) + " out of range mod " +
                      std::to_string(delta));
      with_zero.push_back(0);
      std::sort(with_zero.begin(), with_zero.end());
      if (std::adjacent_find(with_zero.begin(), with_zero.end()) != with_zero.end())
        return fail(where + ": repeated entry");
      auto rep = verify_difference_set(with_zero, delta);
      if (!rep.valid) {
        std::ostringstream msg;
        msg << where << ": entries with 0 are not a based difference set mod " << delta;
        if (rep.first_duplicated) msg << " (difference " << *rep.first_duplicated << " duplicated)";
        else if (rep.first_missing) msg << " (difference " << *rep.first_missing << " missing)";
        return fail(msg.str());
      }
    }
  }
  return {true, ""};
}

// One spherical 2-residue of the Singer graph: the {from,to}-residue with
// its pulled-back defining suites over chambers 0..k-1.
struct WeylResidue {
  std::string from, to;
  int m = 3;
  std::vector<int> omega;  // omega[0] = 0, omega[x] = x(st)
  SingerPolygon polygon;   // labels {from, to}
};

struct WeylGraphData {
  std::vector<std::string> vertices;
  int q = 0;
  std::vector<WeylResidue> residues;

  WeylResidue const& residue(std::string const& a, std::string const& b) const {
    for (auto const& r : residues)
      if ((r.from == a && r.to == b) || (r.from == b && r.to == a)) return r;
    throw Error("NoSuchEdge", "{" + a + "," + b + "} is not an edge of L");
  }
};

inline WeylGraphData build_weyl_graph(GluingMatrix const& g) {
  auto report = validate_gluing(g);
  if (!report.valid) throw Error("InvalidGluing", report.message);
  int k = g.q + 1;
  int delta = g.q * g.q + g.q + 1;
  WeylGraphData w;
  w.vertices = g.vertices;
  w.q = g.q;
  for (auto const& c : g.columns) {
    WeylResidue res;
    res.from = c.from;
    res.to = c.to;
    res.m = *g.edge_label(c.from, c.to);
    res.omega.assign(k, 0);
    for (int n = 1; n <= g.q; ++n) res.omega[n] = c.entries[n - 1];

    SingerPolygon& poly = res.polygon;
    poly.gonality = res.m;
    poly.q = g.q;
    poly.labels = {c.from, c.to};
    for (int x = 0; x < k; ++x) poly.chambers.push_back(x);

    if (res.m == 2) {
      poly.modulus = k;
      std::vector<int> inverse(k, -1);
      for (int x = 0; x < k; ++x) inverse[res.omega[x]] = x;
      for (int y = 1; y < k; ++y)
        for (int z = 0; z < k; ++z) {
          if (z == y) continue;
          int target = ((res.omega[z] - res.omega[y]) % k + k) % k;
          poly.suites.push_back({0, y, z, inverse[target], 0});
        }
    } else {
      poly.modulus = delta;
      std::vector<int> with_zero = c.entries;
      with_zero.push_back(0);
      auto d = difference_set(std::move(with_zero), delta);
      auto pairs = detail::difference_pairs(d);
      std::map<int, int> inverse;
      for (int x = 0; x < k; ++x) inverse[res.omega[x]] = x;
      for (int x = 1; x < k; ++x)
        for (int y = 0; y < k; ++y) {
          if (y == x) continue;
          for (int z = 0; z < k; ++z) {
            if (z == y) continue;
            long long n = res.omega[x] - res.omega[y] + res.omega[z];
            int nn = static_cast<int>(((n % delta) + delta) % delta);
            auto [yp, xp] = pairs[nn];  // yp - xp = n
            poly.suites.push_back({0, x, y, z, inverse.at(yp), inverse.at(xp), 0});
          }
        }
    }
    w.residues.push_back(std::move(res));
  }
  return w;
}

// The residue polygon with its suites traversed backwards, so that the
// opposite orientation's label comes first.
inline SingerPolygon reverse_polygon(SingerPolygon const& p) {
  SingerPolygon r = p;
  r.labels = {p.labels[1], p.labels[0]};
  r.suites.clear();
  for (auto suite : p.suites) {
    std::reverse(suite.begin(), suite.end());
    r.suites.push_back(std::move(suite));
  }
  return r;
}

// Recovers a gluing matrix from Weyl data: for each oriented edge of the
// requested orientation, normalizes the 2-residue at chamber 0 and records
// the bijection on {1..q} as the column. With the default (empty)
// orientation the stored one is kept.
inline GluingMatrix extract_gluing_matrix(
    WeylGraphData const& w,
    std::vector<std::pair<std::string, std::string>> orientation = {}) {
  if (orientation.empty())
    for (auto const& r : w.residues) orientation.push_back({r.from, r.to});
  GluingMatrix g;
  g.vertices = w.vertices;
  g.q = w.q;
  for (auto const& [from, to] : orientation) {
    auto const& res = w.residue(from, to);
    g.edges.push_back({from, to, res.m});
    SingerPolygon poly = (res.from == from) ? res.polygon : reverse_polygon(res.polygon);
    std::size_t expected = res.m == 2 ? static_cast<std::size_t>(w.q) * w.q
                                      : static_cast<std::size_t>(w.q) * w.q * w.q;
    if (poly.suites.size() != expected)
      throw Error("NotSingerCyclic", "residue {" + res.from + "," + res.to + "} has " +
                                         std::to_string(poly.suites.size()) +
                                         " suites, expected " + std::to_string(expected));
    auto normal = normalize_polygon(poly, 0);
    GluingColumn col;
    col.from = from;
    col.to = to;
    for (int n = 1; n <= w.q; ++n) col.entries.push_back(normal.bijection.at(n));
    g.columns.push_back(std::move(col));
  }
  return g;
}

// Fundamental cycles of a breadth-first spanning tree rooted at the
// lexicographically smallest vertex, one per non-tree edge, in discovery
// order. Each cycle is emitted closed (first = last vertex), rotated to
// start at its smallest vertex and traversed in the direction that makes
// the second vertex smallest.
inline std::vector<std::vector<std::string>> cycle_basis(DefiningGraph const& l) {
  std::map<std::string, std::vector<std::string>> adj;
  for (auto const& v : l.vertices) adj[v];
  for (auto const& e : l.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());

  std::string root = *std::min_element(l.vertices.begin(), l.vertices.end());
  std::map<std::string, std::string> parent;
  std::vector<std::string> order{root};
  parent[root] = root;
  std::vector<std::pair<std::string, std::string>> non_tree;
  std::set<std::pair<std::string, std::string>> non_tree_seen;
  for (std::size_t head = 0; head < order.size(); ++head) {
    std::string u = order[head];
    for (auto const& v : adj[u]) {
      if (!parent.count(v)) {
        parent[v] = u;
        order.push_back(v);
      } else if (parent[u] != v && parent[v] != u) {
        auto key = std::minmax(u, v);
        if (non_tree_seen.insert({key.first, key.second}).second)
          non_tree.push_back({u, v});
      }
    }
  }

  auto path_to_root = [&](std::string v) {
    std::vector<std::string> path{v};
    while (parent[v] != v) {
      v = parent[v];
      path.push_back(v);
    }
    return path;
  };

  std::vector<std::vector<std::string>> basis;
  for (auto const& [u, v] : non_tree) {
    auto pu = path_to_root(u);
    auto pv = path_to_root(v);
    // Strip the common tail above the junction.
    while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
      pu.pop_back();
      pv.pop_back();
    }
    // Junction, ..., u, v, ..., junction.
    std::vector<std::string> cycle(pu.rbegin(), pu.rend());
    cycle.insert(cycle.end(), pv.begin(), pv.end() - 1);
    // Normal form: start at smallest vertex, direction by smaller second.
    std::size_t n = cycle.size();
    std::size_t at = std::min_element(cycle.begin(), cycle.end()) - cycle.begin();
    std::vector<std::string> forward, backward;
    for (std::size_t i = 0; i <= n; ++i) forward.push_back(cycle[(at + i) % n]);
    for (std::size_t i = 0; i <= n; ++i)
      backward.push_back(cycle[(at + n - (i % n)) % n]);
    basis.push_back(forward[1] <= backward[1] ? forward : backward);
  }
  return basis;
}

// --- gluing-matrix file format ------------------------------------------
//
//   vertices s t u
//   edge s t 3
//   order 2
//   column s t : 1 3
//
// `#` starts a comment; `edge a b m` declares m_ab (absent pairs are
// infinite); `column a b : v1 ... vq` orients the edge and lists its
// entries.

inline GluingMatrix parse_gluing(std::istream& in) {
  GluingMatrix g;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::string word;
    if (!(is >> word)) continue;
    auto bad = [&](std::string const& why) {
      return Error("ParseError", "line " + std::to_string(lineno) + ": " + why);
    };
    if (word == "vertices") {
      std::string v;
      while (is >> v) g.vertices.push_back(v);
      if (g.vertices.empty()) throw bad("vertices line is empty");
    } else if (word == "edge") {
      CoxeterEdge e;
      if (!(is >> e.a >> e.b >> e.m)) throw bad("expected: edge a b m");
      g.edges.push_back(e);
    } else if (word == "order") {
      if (!(is >> g.q)) throw bad("expected: order q");
    } else if (word == "column") {
      GluingColumn c;
      std::string colon;
      if (!(is >> c.from >> c.to >> colon) || colon != ":")
        throw bad("expected: column a b : v1 ... vq");
      int v;
      while (is >> v) c.entries.push_back(v);
      if (c.entries.empty()) throw bad("column has no entries");
      g.columns.push_back(std::move(c));
    } else {
      throw bad("unknown directive '" + word + "'");
    }
    if (is.fail() && !is.eof()) throw bad("malformed line");
  }
  return g;
}

inline std::string write_gluing(GluingMatrix const& g) {
  std::ostringstream os;
  os << "vertices";
  for (auto const& v : g.vertices) os << ' ' << v;
  os << "\n";
  for (auto const& e : g.edges) os << "edge " << e.a << ' ' << e.b << ' ' << e.m << "\n";
  os << "order " << g.q << "\n";
  for (auto const& c : g.columns) {
    os << "column " << c.from << ' ' << c.to << " :";
    for (int v : c.entries) os << ' ' << v;
    os << "\n";
  }
  return os.str();
}

// --- Weyl data file format ------------------------------------------------
//
//   weyl q=2
//   vertices s t u
//   residue s t m=3
//   suite: 0 s 1 t 0 s 1 t 2 s 1 t 0
//
// Chamber values are 0..k-1; suite labels must alternate between the
// residue's two vertex names.

inline std::string write_weyl(WeylGraphData const& w) {
  std::ostringstream os;
  os << "weyl q=" << w.q << "\n";
  os << "vertices";
  for (auto const& v : w.vertices) os << ' ' << v;
  os << "\n";
  for (auto const& r : w.residues) {
    os << "residue " << r.from << ' ' << r.to << " m=" << r.m << "\n";
    for (auto const& suite : r.polygon.suites) {
      os << "suite: " << suite[0];
      for (std::size_t i = 1; i < suite.size(); ++i)
        os << ' ' << r.polygon.labels[(i - 1) % 2] << ' ' << suite[i];
      os << "\n";
    }
  }
  return os.str();
}

inline WeylGraphData parse_weyl(std::istream& in) {
  WeylGraphData w;
  std::string line;
  int lineno = 0;
  WeylResidue* current = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::string word;
    if (!(is >> word)) continue;
    auto bad = [&](std::string const& why) {
      return Error("ParseError", "line " + std::to_string(lineno) + ": " + why);
    };
    if (word == "weyl") {
      std::string spec;
      if (!(is >> spec) || spec.rfind("q=", 0) != 0) throw bad("expected: weyl q=<q>");
      w.q = std::stoi(spec.substr(2));
    } else if (word == "vertices") {
      std::string v;
      while (is >> v) w.vertices.push_back(v);
    } else if (word == "residue") {
      WeylResidue r;
      std::string spec;
      if (!(is >> r.from >> r.to >> spec) || spec.rfind("m=", 0) != 0)
        throw bad("expected: residue a b m=<m>");
      r.m = std::stoi(spec.substr(2));
      if (r.m != 2 && r.m != 3) throw bad("m must be 2 or 3");
      r.polygon.gonality = r.m;
      r.polygon.q = w.q;
      r.polygon.labels = {r.from, r.to};
      int k = w.q + 1;
      r.polygon.modulus = r.m == 2 ? k : w.q * w.q + w.q + 1;
      for (int x = 0; x < k; ++x) r.polygon.chambers.push_back(x);
      w.residues.push_back(std::move(r));
      current = &w.residues.back();
    } else if (word == "suite:") {
      if (!current) throw bad("suite before any residue");
      std::vector<int> suite;
      int chamber;
      if (!(is >> chamber)) throw bad("suite needs a starting chamber");
      suite.push_back(chamber);
      std::string label;
      while (is >> label >> chamber) {
        auto const& expect = current->polygon.labels[(suite.size() - 1) % 2];
        if (label != expect) throw bad("expected label '" + expect + "', got '" + label + "'");
        suite.push_back(chamber);
      }
      if (static_cast<int>(suite.size()) != 2 * current->m + 1)
        throw bad("suite has wrong length for m=" + std::to_string(current->m));
      current->polygon.suites.push_back(std::move(suite));
    } else {
      throw bad("unknown directive '" + word + "'");
    }
  }
  return w;
}

}  // namespace singer
