#include "statelift/relax_dense.hpp"

#include <set>

namespace statelift {

DenseAssembly assemble_dense(const Polynomial& objective, const std::vector<Polynomial>& ineqs,
                             const std::vector<Polynomial>& eqs, int k) {
  if (objective.degree() > 2 * k)
    throw std::invalid_argument("order too small for the objective degree");
  std::set<int> vars_set;
  auto collect = [&](const Polynomial& p) {
    for (int v : p.support()) vars_set.insert(v);
  };
  collect(objective);
  for (auto& g : ineqs) collect(g);
  for (auto& e : eqs) collect(e);
  std::vector<int> vars(vars_set.begin(), vars_set.end());

  DenseAssembly out;
  out.layout = make_moment_layout(out.program, vars, k, "moment");
  for (size_t j = 0; j < ineqs.size(); ++j)
    add_localizer(out.program, out.layout, ineqs[j], "loc g[" + std::to_string(j + 1) + "]");
  for (size_t j = 0; j < eqs.size(); ++j)
    add_poly_equalities(out.program, out.layout, eqs[j], "eq[" + std::to_string(j + 1) + "]");
  out.program.set_objective(linear_functional(out.layout, objective));
  out.program.validate();
  return out;
}

DenseAssembly assemble_dense_chain(const CompositionChain& chain, int k, long long term_cap) {
  Polynomial p = expand_dense(chain, term_cap);
  if (chain.sense == Sense::Maximize) p = -p;
  std::vector<Polynomial> ineqs;
  const auto& space = chain.space;
  for (int i = 1; i <= chain.n; ++i) {
    double M = chain.box_radii[i - 1];
    for (int id : space->local_ids(i)) {
      Polynomial x = Polynomial::variable(space, id);
      ineqs.push_back(Polynomial::constant(space, M * M) - x * x);
    }
  }
  std::vector<Polynomial> eqs;
  for (auto& c : chain.constraints) {
    // Constraints referencing lifted states cannot be expressed in the
    // expanded formulation; substitute the states away.
    std::unordered_map<int, Polynomial> bind;
    for (int i = 1; i <= chain.n; ++i) {
      auto sids = space->state_ids(i);
      for (size_t l = 0; l < sids.size(); ++l) {
        Polynomial comp = chain.stages[i - 1].components[l];
        bind[sids[l]] = comp.substitute(bind);
      }
    }
    Polynomial flat = c.poly.substitute(bind);
    if (c.sense == ConstraintSense::GeqZero)
      ineqs.push_back(flat);
    else
      eqs.push_back(flat);
  }
  DenseAssembly out = assemble_dense(p, ineqs, eqs, k);
  out.negated = chain.sense == Sense::Maximize;
  return out;
}

double reported_bound(const SolveResult& res, bool negated) {
  // The dual (certificate-side) objective never overshoots the exact
  // relaxation value, so the reported bound stays on the safe side of the
  // original problem even at finite solver accuracy.
  return negated ? -res.dual_objective : res.dual_objective;
}

}  // namespace statelift
