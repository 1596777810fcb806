#include "statelift/sparsity.hpp"

#include <algorithm>
#include <sstream>

namespace statelift {

void CSPGraph::add_edge(int u, int v) {
  if (u == v) return;
  adj[u].insert(v);
  adj[v].insert(u);
}

int CSPGraph::num_edges() const {
  int total = 0;
  for (auto& a : adj) total += static_cast<int>(a.size());
  return total / 2;
}

int CliqueDecomposition::max_clique_size() const {
  int m = 0;
  for (auto& c : cliques) m = std::max(m, static_cast<int>(c.size()));
  return m;
}

bool CliqueDecomposition::verify_rip() const {
  // For every vertex, the cliques containing it must induce a connected
  // subtree of the clique tree.
  std::set<int> verts;
  for (auto& c : cliques) verts.insert(c.begin(), c.end());
  std::vector<std::vector<int>> tree(cliques.size());
  for (auto& [a, b] : tree_edges) {
    tree[a].push_back(b);
    tree[b].push_back(a);
  }
  for (int v : verts) {
    std::vector<int> holding;
    for (size_t i = 0; i < cliques.size(); ++i)
      if (std::binary_search(cliques[i].begin(), cliques[i].end(), v))
        holding.push_back(static_cast<int>(i));
    if (holding.empty()) return false;
    std::set<int> hold_set(holding.begin(), holding.end());
    std::vector<int> stack{holding[0]};
    std::set<int> seen{holding[0]};
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (int nb : tree[c])
        if (hold_set.count(nb) && !seen.count(nb)) {
          seen.insert(nb);
          stack.push_back(nb);
        }
    }
    if (seen.size() != hold_set.size()) return false;
  }
  return true;
}

CSPGraph build_graph(const LiftedPOP& pop) {
  CSPGraph g;
  g.num_vertices = pop.space->size();
  g.adj.resize(g.num_vertices);
  for (auto& [mi, c] : pop.objective.terms()) {
    auto& t = mi.terms();
    for (size_t a = 0; a < t.size(); ++a)
      for (size_t b = a + 1; b < t.size(); ++b) g.add_edge(t[a].first, t[b].first);
  }
  auto couple_support = [&](const Polynomial& p) {
    std::vector<int> sup = p.support();
    for (size_t a = 0; a < sup.size(); ++a)
      for (size_t b = a + 1; b < sup.size(); ++b) g.add_edge(sup[a], sup[b]);
  };
  for (auto& e : pop.equalities) couple_support(e);
  for (auto& e : pop.inequalities) couple_support(e);
  return g;
}

namespace {

// Eliminate vertices in `order`; returns fill edges needed to make the
// order perfect.
std::vector<std::pair<int, int>> fill_for_order(const CSPGraph& g, const std::vector<int>& order) {
  std::vector<std::set<int>> adj = g.adj;
  std::vector<int> pos(g.num_vertices);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> fill;
  for (int v : order) {
    std::vector<int> later;
    for (int nb : adj[v])
      if (pos[nb] > pos[v]) later.push_back(nb);
    for (size_t a = 0; a < later.size(); ++a)
      for (size_t b = a + 1; b < later.size(); ++b)
        if (!adj[later[a]].count(later[b])) {
          adj[later[a]].insert(later[b]);
          adj[later[b]].insert(later[a]);
          fill.emplace_back(later[a], later[b]);
        }
  }
  return fill;
}

// Minimum-degree elimination order with fill-in.
std::vector<int> min_degree_order(CSPGraph g) {
  std::vector<int> order;
  std::vector<bool> gone(g.num_vertices, false);
  for (int step = 0; step < g.num_vertices; ++step) {
    int best = -1, best_deg = g.num_vertices + 1;
    for (int v = 0; v < g.num_vertices; ++v)
      if (!gone[v] && static_cast<int>(g.adj[v].size()) < best_deg) {
        best = v;
        best_deg = static_cast<int>(g.adj[v].size());
      }
    order.push_back(best);
    gone[best] = true;
    std::vector<int> nbs(g.adj[best].begin(), g.adj[best].end());
    for (size_t a = 0; a < nbs.size(); ++a)
      for (size_t b = a + 1; b < nbs.size(); ++b) g.add_edge(nbs[a], nbs[b]);
    for (int nb : nbs) g.adj[nb].erase(best);
    g.adj[best].clear();
  }
  return order;
}

}  // namespace

CliqueDecomposition chordal_cliques(const CSPGraph& g, const LiftedPOP& pop) {
  // Chain elimination order: s_{n,*}, x_n, s_{n-1,*}, x_{n-1}, ..., x_1.
  std::vector<int> order(g.num_vertices);
  for (int v = 0; v < g.num_vertices; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const VarDesc& da = pop.space->var(a);
    const VarDesc& db = pop.space->var(b);
    if (da.stage != db.stage) return da.stage > db.stage;
    if (da.kind != db.kind) return da.kind == VarKind::State;  // states first
    return da.component < db.component;
  });

  CSPGraph chordal = g;
  auto fill = fill_for_order(g, order);
  if (!fill.empty()) {
    // Input is not chordal for the chain order (sparse cores); use a
    // minimum-degree fill instead.
    order = min_degree_order(g);
    fill = fill_for_order(g, order);
  }
  for (auto& [u, v] : fill) chordal.add_edge(u, v);

  // Maximal cliques from the perfect elimination order.
  std::vector<int> pos(g.num_vertices);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> candidates;
  for (int v : order) {
    std::vector<int> clique{v};
    for (int nb : chordal.adj[v])
      if (pos[nb] > pos[v]) clique.push_back(nb);
    std::sort(clique.begin(), clique.end());
    candidates.push_back(std::move(clique));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<std::vector<int>> cliques;
  for (auto& c : candidates) {
    bool strict_subset = false;
    for (auto& other : candidates)
      if (other.size() > c.size() &&
          std::includes(other.begin(), other.end(), c.begin(), c.end())) {
        strict_subset = true;
        break;
      }
    if (!strict_subset) cliques.push_back(c);
  }

  CliqueDecomposition dec;
  dec.cliques = std::move(cliques);

  // Clique tree: maximum-weight spanning tree on intersection sizes.
  int nc = static_cast<int>(dec.cliques.size());
  std::vector<bool> in_tree(nc, false);
  in_tree[0] = true;
  for (int added = 1; added < nc; ++added) {
    int best_a = -1, best_b = -1, best_w = -1;
    for (int a = 0; a < nc; ++a) {
      if (!in_tree[a]) continue;
      for (int b = 0; b < nc; ++b) {
        if (in_tree[b]) continue;
        std::vector<int> inter;
        std::set_intersection(dec.cliques[a].begin(), dec.cliques[a].end(),
                              dec.cliques[b].begin(), dec.cliques[b].end(),
                              std::back_inserter(inter));
        if (static_cast<int>(inter.size()) > best_w) {
          best_w = static_cast<int>(inter.size());
          best_a = a;
          best_b = b;
        }
      }
    }
    in_tree[best_b] = true;
    dec.tree_edges.emplace_back(std::min(best_a, best_b), std::max(best_a, best_b));
    std::vector<int> sep;
    std::set_intersection(dec.cliques[best_a].begin(), dec.cliques[best_a].end(),
                          dec.cliques[best_b].begin(), dec.cliques[best_b].end(),
                          std::back_inserter(sep));
    dec.separators.push_back(std::move(sep));
  }

  auto assign = [&](const Polynomial& p) -> int {
    std::vector<int> sup = p.support();
    for (int i = 0; i < nc; ++i)
      if (std::includes(dec.cliques[i].begin(), dec.cliques[i].end(), sup.begin(), sup.end()))
        return i;
    throw std::runtime_error("constraint support not contained in any clique");
  };
  for (auto& e : pop.equalities) dec.equality_clique.push_back(assign(e));
  for (auto& e : pop.inequalities) dec.inequality_clique.push_back(assign(e));
  return dec;
}

int treewidth_formula(const std::vector<int>& ranks) {
  int tw = 0;
  int prev = 1;  // r_0
  for (int r : ranks) {
    tw = std::max(tw, prev + r);
    prev = r;
  }
  return tw;
}

std::string dump_graph(const CSPGraph& g, const VariableSpace& space) {
  std::ostringstream os;
  for (int u = 0; u < g.num_vertices; ++u)
    for (int v : g.adj[u])
      if (u < v) os << space.var(u).name << " " << space.var(v).name << "\n";
  return os.str();
}

}  // namespace statelift
