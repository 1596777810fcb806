#pragma once

#include <set>
#include <vector>

#include "statelift/chain.hpp"

namespace statelift {

/// Correlative sparsity graph over the variable ids of a lifted POP.
struct CSPGraph {
  int num_vertices = 0;
  std::vector<std::set<int>> adj;

  bool has_edge(int u, int v) const { return adj[u].count(v) > 0; }
  void add_edge(int u, int v);
  int num_edges() const;
};

struct CliqueDecomposition {
  std::vector<std::vector<int>> cliques;          // sorted member ids, deterministic order
  std::vector<std::pair<int, int>> tree_edges;    // indices into cliques
  std::vector<std::vector<int>> separators;       // one per tree edge
  std::vector<int> equality_clique;               // pop equality index -> clique
  std::vector<int> inequality_clique;             // pop inequality index -> clique

  int max_clique_size() const;
  /// Running intersection property check by tree traversal.
  bool verify_rip() const;
};

/// Exact co-occurrence graph: monomial co-occurrence for the objective,
/// whole-support coupling for each constraint.
CSPGraph build_graph(const LiftedPOP& pop);

/// Maximal cliques, clique tree and separators. Chain graphs use the
/// right-to-left state/local elimination order; non-chordal inputs get a
/// minimum-degree fill-in first.
CliqueDecomposition chordal_cliques(const CSPGraph& g, const LiftedPOP& pop);

/// max_i {r_i + r_{i+1}} over the profile (r_1..r_n), with r_0 = 1.
/// Valid for dense chains with scalar locals.
int treewidth_formula(const std::vector<int>& ranks);

std::string dump_graph(const CSPGraph& g, const VariableSpace& space);

}  // namespace statelift
