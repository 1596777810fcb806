#include "statelift/extraction.hpp"

#include "statelift/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace statelift {

void ExtractionConfig::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("extraction: tau must be > 0");
  if (n_samp < 1) throw std::invalid_argument("extraction: n_samp must be >= 1");
  if (!(omega_threshold > 0.0)) throw std::invalid_argument("extraction: threshold must be > 0");
}

CandidatePoint first_moments(std::span<const MomentLayout> layouts, const SolveResult& res,
                             const LiftedPOP* pop) {
  CandidatePoint out;
  std::unordered_map<int, double> sums;
  std::unordered_map<int, int> counts;
  for (const MomentLayout& lay : layouts)
    for (int v : lay.vars) {
      sums[v] += res.y.at(lay.moment_var(MultiIndex::unit(v)));
      counts[v] += 1;
    }
  for (auto& [v, s] : sums) out.values[v] = s / counts[v];
  if (pop) {
    for (auto& e : pop->equalities)
      out.max_equality_residual =
          std::max(out.max_equality_residual, std::abs(e.evaluate(out.values)));
    for (auto& g : pop->inequalities)
      out.max_inequality_violation =
          std::max(out.max_inequality_violation, std::max(0.0, -g.evaluate(out.values)));
  }
  return out;
}

Eigen::MatrixXd moment_factor(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal();
}

Eigen::VectorXd sample_omega(const Eigen::MatrixXd& V, GaussianStream& g) {
  Eigen::VectorXd z(V.cols());
  for (int i = 0; i < z.size(); ++i) z[i] = g();
  return V * z;
}

std::unordered_map<int, double> sample_candidate(const Eigen::MatrixXd& V,
                                                 const std::vector<MultiIndex>& index,
                                                 GaussianStream& g, double threshold,
                                                 long long budget) {
  // Positions of the constant and each degree-1 monomial in the basis.
  int const_pos = -1;
  std::vector<std::pair<int, int>> lin;  // (basis position, variable id)
  for (int i = 0; i < static_cast<int>(index.size()); ++i) {
    if (index[i].empty()) const_pos = i;
    if (index[i].total_degree() == 1 && index[i].terms()[0].second == 1)
      lin.emplace_back(i, index[i].terms()[0].first);
  }
  if (const_pos < 0) throw std::logic_error("sample_candidate: basis lacks the constant monomial");
  for (long long t = 0; t < budget; ++t) {
    Eigen::VectorXd omega = sample_omega(V, g);
    double w1 = omega[const_pos];
    if (std::abs(w1) < threshold) continue;
    std::unordered_map<int, double> cand;
    for (auto& [pos, var] : lin) cand[var] = omega[pos] / w1;
    return cand;
  }
  throw std::runtime_error("sample_candidate: sampling budget exhausted");
}

namespace {

std::vector<double> apply_projection(const ExtractionConfig& cfg, const CompositionChain& chain,
                                     int stage, const std::unordered_map<int, double>& cand) {
  std::vector<int> loc = chain.space->local_ids(stage);
  std::vector<double> x;
  for (int v : loc) {
    auto it = cand.find(v);
    x.push_back(it == cand.end() ? 0.0 : it->second);
  }
  if (cfg.projection == "quantum" && x.size() == 2) {
    double theta = std::atan2(x[0], x[1]);
    if (cfg.theta_max > 0.0) theta = std::clamp(theta, -cfg.theta_max, cfg.theta_max);
    x[0] = std::sin(theta);
    x[1] = std::cos(theta);
  } else {
    double M = chain.box_radii[stage - 1];
    for (double& v : x) v = std::clamp(v, -M, M);
  }
  return x;
}

std::vector<double> propagate(const CompositionChain& chain, int stage,
                              const std::vector<double>& s_prev, const std::vector<double>& x) {
  std::unordered_map<int, double> pt;
  std::vector<int> sprev = chain.space->state_ids(stage - 1);
  for (size_t l = 0; l < sprev.size(); ++l) pt[sprev[l]] = s_prev[l];
  std::vector<int> loc = chain.space->local_ids(stage);
  for (size_t j = 0; j < loc.size(); ++j) pt[loc[j]] = x[j];
  std::vector<double> s;
  for (auto& f : chain.stages[stage - 1].components) s.push_back(f.evaluate(pt));
  return s;
}

}  // namespace

Trajectory extract_sequential(const PushAssembly& asm_, const SolveResult& res,
                              const CompositionChain& chain, const ExtractionConfig& cfg) {
  cfg.validate();
  const int n = chain.n;
  bool maximize = chain.sense == Sense::Maximize;

  // Per-stage factors are seed-independent; compute once.
  std::vector<Eigen::MatrixXd> factors;
  std::vector<const std::vector<MultiIndex>*> bases;
  for (int k = 1; k <= n; ++k) {
    MomentMatrix M = moment_matrix(asm_.program, res, asm_.stages[k - 1].block);
    factors.push_back(moment_factor(M.values));
    bases.push_back(&asm_.stages[k - 1].basis);
  }

  Trajectory best;
  bool have_best = false;
  const long long budget = 100LL * cfg.n_samp;

  for (int j = 0; j < cfg.num_seeds; ++j) {
    GaussianStream g(cfg.seed + static_cast<uint64_t>(j));
    Trajectory traj;
    std::vector<double> s_pf;  // propagated state of the previous stage
    bool aborted = false;

    for (int k = 1; k <= n && !aborted; ++k) {
      std::vector<int> sprev = chain.space->state_ids(k - 1);
      double best_score = 0.0;
      std::vector<double> best_x, best_s;
      bool have = false;
      int accepted = 0;
      long long draws = 0;

      // Sample n_samp candidates; if none pass the state-compatibility
      // test, keep sampling until one does (within the draw budget).
      for (int t = 0; (t < cfg.n_samp || !have) && draws < budget; ++t, ++draws) {
        std::unordered_map<int, double> cand;
        try {
          cand = sample_candidate(factors[k - 1], *bases[k - 1], g, cfg.omega_threshold,
                                  budget - draws);
        } catch (const std::runtime_error&) {
          break;
        }
        if (k >= 2) {
          double d2 = 0.0;
          for (size_t l = 0; l < sprev.size(); ++l) {
            auto it = cand.find(sprev[l]);
            double sv = it == cand.end() ? 0.0 : it->second;
            d2 += (sv - s_pf[l]) * (sv - s_pf[l]);
          }
          if (std::sqrt(d2) > cfg.tau) continue;
        }
        ++accepted;
        std::vector<double> x = apply_projection(cfg, chain, k, cand);
        std::vector<double> s = propagate(chain, k, s_pf, x);
        double score;
        if (cfg.target && cfg.target->size() == s.size()) {
          score = 0.0;
          for (size_t l = 0; l < s.size(); ++l) score += s[l] * (*cfg.target)[l];
        } else if (k == n) {
          score = maximize ? s[0] : -s[0];
        } else {
          // Generic mid-chain tiebreak: stay close to the propagated state.
          double d2 = 0.0;
          for (size_t l = 0; l < sprev.size(); ++l) {
            auto it = cand.find(sprev[l]);
            double sv = it == cand.end() ? 0.0 : it->second;
            d2 += (sv - s_pf[l]) * (sv - s_pf[l]);
          }
          score = -d2;
        }
        if (!have || score > best_score) {
          best_score = score;
          best_x = std::move(x);
          best_s = std::move(s);
          have = true;
        }
      }
      if (!have) {
        aborted = true;
        break;
      }
      (void)accepted;
      traj.controls.push_back(best_x);
      traj.states.push_back(best_s);
      s_pf = traj.states.back();
    }
    if (aborted) continue;
    traj.objective = traj.states.back()[0];
    bool better =
        !have_best || (maximize ? traj.objective > best.objective : traj.objective < best.objective);
    if (better) {
      best = std::move(traj);
      have_best = true;
    }
  }
  if (!have_best) throw std::runtime_error("extract_sequential: no seed produced a trajectory");
  if (cfg.polish_steps > 0) {
    std::unordered_map<int, double> x0;
    for (int i = 1; i <= n; ++i) {
      std::vector<int> loc = chain.space->local_ids(i);
      for (size_t j = 0; j < loc.size(); ++j) x0[loc[j]] = best.controls[i - 1][j];
    }
    ProjGradResult ref = projected_gradient_from(chain, std::move(x0), cfg.polish_steps);
    if (maximize ? ref.value > best.objective : ref.value < best.objective) {
      ChainEval ev = eval_chain(chain, ref.point);
      for (int i = 1; i <= n; ++i) {
        std::vector<int> loc = chain.space->local_ids(i);
        for (size_t j = 0; j < loc.size(); ++j) best.controls[i - 1][j] = ref.point[loc[j]];
        best.states[i - 1] = ev.trajectory[i - 1];
      }
      best.objective = ev.value;
    }
  }
  return best;
}

double trajectory_residual(const CompositionChain& chain, const Trajectory& traj) {
  std::unordered_map<int, double> pt;
  for (int i = 1; i <= chain.n; ++i) {
    std::vector<int> loc = chain.space->local_ids(i);
    for (size_t j = 0; j < loc.size(); ++j) pt[loc[j]] = traj.controls[i - 1][j];
    std::vector<int> sid = chain.space->state_ids(i);
    for (size_t l = 0; l < sid.size(); ++l) pt[sid[l]] = traj.states[i - 1][l];
  }
  double worst = 0.0;
  for (int i = 1; i <= chain.n; ++i) {
    double M = chain.box_radii[i - 1];
    for (double v : traj.controls[i - 1]) worst = std::max(worst, std::abs(v) - M);
  }
  for (auto& c : chain.constraints) {
    double v = c.poly.evaluate(pt);
    worst = std::max(worst, c.sense == ConstraintSense::EqZero ? std::abs(v) : -v);
  }
  return std::max(worst, 0.0);
}

void write_trajectory_csv(std::ostream& os, const CompositionChain& chain,
                          const Trajectory& traj) {
  os << "stage";
  int mmax = *std::max_element(chain.local_widths.begin(), chain.local_widths.end());
  int rmax = *std::max_element(chain.ranks.begin(), chain.ranks.end());
  for (int j = 1; j <= mmax; ++j) os << ",x" << j;
  for (int l = 1; l <= rmax; ++l) os << ",s" << l;
  os << "\n";
  for (int i = 1; i <= chain.n; ++i) {
    os << i;
    for (int j = 0; j < mmax; ++j) {
      os << ",";
      if (j < static_cast<int>(traj.controls[i - 1].size())) os << traj.controls[i - 1][j];
    }
    for (int l = 0; l < rmax; ++l) {
      os << ",";
      if (l < static_cast<int>(traj.states[i - 1].size())) os << traj.states[i - 1][l];
    }
    os << "\n";
  }
}

}  // namespace statelift
