#pragma once

#include "statelift/chain.hpp"
#include "statelift/moments.hpp"

namespace statelift {

struct DenseAssembly {
  ConicProgram program;
  MomentLayout layout;
  bool negated = false;  // bound of the original problem is -result.objective
};

/// Moment relaxation of order k: one moment block over the union of
/// variable supports, localizing blocks per inequality, rows L(q e) = 0
/// per equality, normalization y_0 = 1, objective L(p). Throws when 2k is
/// below the degree of the objective or a constraint.
DenseAssembly assemble_dense(const Polynomial& objective, const std::vector<Polynomial>& ineqs,
                             const std::vector<Polynomial>& eqs, int k);

/// Dense baseline for a chain: expands the composition into the local
/// variables, adds per-component box constraints, handles sense by
/// negation.
DenseAssembly assemble_dense_chain(const CompositionChain& chain, int k,
                                   long long term_cap = 1000000);

/// Sign-corrected bound of the original problem.
double reported_bound(const SolveResult& res, bool negated);

}  // namespace statelift
