#pragma once

#include "statelift/chain.hpp"
#include "statelift/moments.hpp"

namespace statelift {

/// Per-stage measure layouts: stage 1 over x_1, stage i >= 2 over
/// (s_{i-1}, x_i).
using StageMeasureLayout = std::vector<MomentLayout>;

struct PushAssembly {
  ConicProgram program;
  StageMeasureLayout stages;
  bool negated = false;
  std::vector<double> state_radii;
  int push_rows = 0;  // interface equalities kept
};

/// State powers alpha != 0 transferred across an interface: all alpha
/// with sum_l alpha_l deg(F_{i,l}) <= 2 k_mu and |alpha| <= 2 k_mu
/// (exact per-component degrees).
std::vector<std::vector<int>> pushforward_alphas(const StageMap& F, int k_mu);

/// Push-forward relaxation at order k_mu: per-stage moment blocks with
/// box/ball localizers and stage constraints, interface equalities
/// L_{y^(i+1)}(s_i^alpha) = L_{y^(i)}(F_i^alpha), objective
/// L_{y^(n)}(F_n) (sense handled by negation).
PushAssembly assemble_push(const CompositionChain& chain, int k_mu);

struct PushCounts {
  long long block_size = 0;
  long long push_eqs = 0;  // (n-1) C(r+floor(2k/d), floor(2k/d)), alpha=0 included
};

/// Uniform-rank, uniform-degree formulas of the complexity analysis.
PushCounts predicted_push_counts(int r, int k_mu, int d, int n);

}  // namespace statelift
