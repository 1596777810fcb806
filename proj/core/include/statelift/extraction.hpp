#pragma once

#include <optional>
#include <ostream>

#include "statelift/chain.hpp"
#include "statelift/problems.hpp"
#include "statelift/relax_push.hpp"

namespace statelift {

struct ExtractionConfig {
  double tau = 0.1;                // state-compatibility radius
  int n_samp = 200;                // samples per stage (per seed)
  double omega_threshold = 1e-6;   // |omega_1| acceptance floor
  uint64_t seed = 0;               // base seed; seed + j is used for run j
  int num_seeds = 20;
  int polish_steps = 400;          // projected-gradient refinement of the pick (0 disables)
  std::string projection = "generic";  // "generic" (box clamp) or "quantum"
  double theta_max = -1.0;             // quantum clamp; <= 0 means unconstrained
  std::optional<std::vector<double>> target;  // mid-chain overlap scoring

  void validate() const;  // throws on tau <= 0, n_samp < 1, threshold <= 0
};

struct Trajectory {
  std::vector<std::vector<double>> controls;  // locals per stage
  std::vector<std::vector<double>> states;    // s_1..s_n (exact propagation)
  double objective = 0.0;                     // s_n
};

struct CandidatePoint {
  std::unordered_map<int, double> values;  // variable id -> degree-1 moment
  double max_equality_residual = 0.0;
  double max_inequality_violation = 0.0;
};

/// Degree-1 moment readout across layouts; variables shared by several
/// layouts (chord separators) are averaged. When `pop` is given the point
/// is scored against its constraint lists.
CandidatePoint first_moments(std::span<const MomentLayout> layouts, const SolveResult& res,
                             const LiftedPOP* pop = nullptr);

/// V with M ~ V V' from a symmetric eigendecomposition, negative
/// eigenvalues clipped at zero.
Eigen::MatrixXd moment_factor(const Eigen::MatrixXd& M);

/// One randomized moment-vector sample omega = V g, g ~ N(0, I).
Eigen::VectorXd sample_omega(const Eigen::MatrixXd& V, GaussianStream& g);

/// Draw omega until |omega_1| clears the threshold (at most `budget`
/// draws, then an error) and return the degree-1 entries divided by
/// omega_1, keyed by variable id.
std::unordered_map<int, double> sample_candidate(const Eigen::MatrixXd& V,
                                                 const std::vector<MultiIndex>& index,
                                                 GaussianStream& g, double threshold,
                                                 long long budget);

/// Sequential randomized extraction over the per-stage measures of a
/// push-forward solve: sample stage candidates, keep those within tau of
/// the propagated state, project locals feasible, score (target overlap
/// mid-chain, objective at the last stage), propagate the best, and
/// return the best trajectory over the configured seeds.
Trajectory extract_sequential(const PushAssembly& asm_, const SolveResult& res,
                              const CompositionChain& chain, const ExtractionConfig& cfg);

/// Largest stage-constraint violation of a trajectory (dynamics are exact
/// by construction, so only declared constraints and boxes are checked).
double trajectory_residual(const CompositionChain& chain, const Trajectory& traj);

/// CSV rows: stage, controls..., state components...
void write_trajectory_csv(std::ostream& os, const CompositionChain& chain, const Trajectory& traj);

}  // namespace statelift
