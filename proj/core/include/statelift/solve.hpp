#pragma once

#include "statelift/ipm.hpp"

namespace statelift {

/// Solve a conic program with the configured backend.
///
/// Environment:
///   STATELIFT_SOLVER  "ipm" (default) = in-process interior-point;
///                     "sdpa:<command>" = out-of-process: the program is
///                     written as a .dat-s file and `<command> in.dat-s out`
///                     is run; `out` is parsed as an SDPA result file
///                     (phase.value, objValPrimal, xVec). The bundled
///                     `sdpa-solve` tool implements this contract.
///   STATELIFT_TOL     overrides opts.tol.
///
/// Backend failures are reported through SolveResult::status.
SolveResult solve(const ConicProgram& p, SolveOptions opts = {});

/// Block values C + sum_j y_j A_j at a given point (used to rebuild
/// moment matrices from an external backend's variable vector).
std::vector<Eigen::MatrixXd> block_values(const ConicProgram& p, const std::vector<double>& y);

}  // namespace statelift
