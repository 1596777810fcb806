#pragma once

#include "statelift/conic.hpp"

namespace statelift {

struct SolveOptions {
  double tol = 1e-8;        // feasibility and relative-gap target
  int max_iters = 500;
  double time_limit_s = 300.0;
  bool verbose = false;
};

/// Primal-dual interior-point method (HKM direction, Mehrotra
/// predictor-corrector) for a ConicProgram
///   min c'y  s.t.  A y = b,  S(y) = C + sum_j y_j A_j  psd  (blockwise).
///
/// Each Newton step eliminates the block iterates against the scalar
/// variables and factors the sparse quasi-definite system
///   [ H  A' ; A  -dI ],  H_jk = sum_b tr(A_j S^-1 A_k Z),
/// which stays block-banded for chain-structured programs.
SolveResult solve_ipm(const ConicProgram& p, const SolveOptions& opts = {});

}  // namespace statelift
