#include "statelift/relax_chord.hpp"

#include <algorithm>

namespace statelift {

ChordAssembly assemble_chord(const LiftedPOP& pop, const CliqueDecomposition& dec, int k,
                             bool share_moments) {
  ChordAssembly out;
  out.negated = pop.negated;
  MomentPool pool;

  for (size_t i = 0; i < dec.cliques.size(); ++i) {
    out.cliques.push_back(make_moment_layout(out.program, dec.cliques[i], k,
                                             "clique " + std::to_string(i + 1),
                                             share_moments ? &pool : nullptr));
    set_moment_scales(out.program, out.cliques.back(), pop.var_bounds);
  }

  for (size_t j = 0; j < pop.inequalities.size(); ++j)
    add_localizer(out.program, out.cliques[dec.inequality_clique[j]], pop.inequalities[j],
                  "loc " + pop.inequality_labels[j]);
  for (size_t j = 0; j < pop.equalities.size(); ++j) {
    int kept = add_poly_equalities(out.program, out.cliques[dec.equality_clique[j]],
                                   pop.equalities[j], pop.equality_labels[j]);
    if (pop.equality_labels[j].rfind("h[", 0) == 0) out.lifting_rows += kept;
  }

  for (size_t e = 0; e < dec.tree_edges.size(); ++e) {
    auto [a, b] = dec.tree_edges[e];
    for (auto& m : monomials_up_to(dec.separators[e], 2 * k)) {
      int va = out.cliques[a].moment_var(m);
      int vb = out.cliques[b].moment_var(m);
      if (va == vb) continue;  // shared pool
      if (out.program.add_row({{{va, 1.0}, {vb, -1.0}}, 0.0, "separator"})) ++out.separator_rows;
    }
  }

  // Objective on the last clique that covers its support.
  std::vector<int> sup = pop.objective.support();
  for (int i = static_cast<int>(dec.cliques.size()) - 1; i >= 0; --i)
    if (std::includes(dec.cliques[i].begin(), dec.cliques[i].end(), sup.begin(), sup.end())) {
      out.objective_clique = i;
      break;
    }
  if (out.objective_clique < 0)
    throw std::invalid_argument("objective support not contained in any clique");
  out.program.set_objective(linear_functional(out.cliques[out.objective_clique], pop.objective));
  out.program.validate();
  return out;
}

ChordCounts predicted_chord_counts(int r, int k, int d, int n) {
  ChordCounts c;
  c.block_size = binomial(2 * r + 1 + k, k);
  c.overlap_eqs = (n - 1) * binomial(r + 2 * k, 2 * k);
  c.lifting_eqs = static_cast<long long>(n) * r * binomial(2 * r + 1 + 2 * k - d, 2 * k - d);
  return c;
}

}  // namespace statelift
