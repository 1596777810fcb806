#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "statelift/chain.hpp"

namespace statelift {

/// Deterministic standard normal: Box-Muller over mt19937_64 draws, so
/// streams are reproducible across platforms for a given 64-bit seed.
class GaussianStream {
 public:
  explicit GaussianStream(uint64_t seed) : rng_(seed) {}
  double operator()();
  double uniform();  // (0, 1]

 private:
  std::mt19937_64 rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Random rank-2 quadratic composition: every stage map is a random
/// polynomial of joint degree <= 2 in (s_{i-1}, x_i) with coefficients
/// (1/2) N(0,1) 0.7^(p1+p2+a+1); boxes [-1,1]; min sense.
CompositionChain gen_random_quadratic_composition(int n, uint64_t seed);

/// Random tensor train of uniform rank r and local degree d: core entries
/// are univariate polynomials with coefficients (1/2) N(0,1) 0.7^(j+1)
/// for the x^j term (the same conditioning device as the quadratic
/// composition family); boxes [-1,1]; min sense.
CompositionChain gen_random_tt(int n, int r, int d, uint64_t seed);

/// Perturbed-identity tensor train u'(prod_i P_i)v with u = v = (1,..,1),
/// P_i = I + sum_{k<=d} (tau/n) w_k B_{i,k} ((x_i+1)/2)^k, w_k
/// proportional to 1/k (normalized to sum 1), B_{i,k} entrywise uniform
/// [0,1] then Frobenius-normalized. Minimum is exactly u'v at x = -1.
CompositionChain gen_perturbed_identity_tt(int n, int r = 2, int d = 2, double tau = 0.1,
                                           uint64_t seed = 0);

struct MarkovProblem {
  CompositionChain chain;  // max sense
  double oracle = 0.0;     // closed-form optimum for the default coefficients
  bool probabilities_valid = true;
};

/// Two-state Markov chain v_0 (prod_i P_i) v_0', transition rows
/// (a(x), 1-a(x)) and (b(x), 1-b(x)) with a = a0 + a2 x^2, b = b0 + b2 x^2.
/// For the defaults the optimum is 1/2 + 1/2 (0.9)^n at x = 0.
MarkovProblem markov_problem(int n, std::array<double, 2> a = {0.95, -0.20},
                             std::array<double, 2> b = {0.05, -0.05});

/// Stage-varying degree-4 transition entries: a_i, b_i are seeded mixes
/// of Chebyshev T_3 and T_4 rescaled into [0.1, 0.9]. No closed form;
/// validated by the bound / local-search sandwich only.
CompositionChain markov_chebyshev_problem(int n, uint64_t seed);

/// Single-qubit rotation control: stage k has locals (x_k, y_k) with
/// x_k^2 + y_k^2 = 1 and y_k >= c_min; odd stages rotate about y, even
/// about z; ||s_k||^2 = 1 is imposed at every stage. The target overlap
/// is folded into the last stage, so r = (3,..,3,1) and the chain
/// maximizes s_N . target. theta_max <= 0 means unconstrained (c_min=-1).
CompositionChain quantum_problem(int N, double theta_max, std::array<double, 3> s0,
                                 std::array<double, 3> target);

/// Rotation matrix of stage k at angle theta (odd k about y, even about
/// z), for extraction-side propagation.
std::array<std::array<double, 3>, 3> quantum_rotation(int k, double theta);

/// Feedforward network weights, drawn once so every truncation of the
/// same network shares them: A ~ 0.1 N(0,1), b ~ 0.3 N(0,1),
/// c ~ 0.05 N(0,1).
struct NNWeights {
  int N = 0, r = 3;
  double alpha = 0.0;
  std::vector<std::vector<std::vector<double>>> A;  // [stage][row][col]
  std::vector<std::vector<double>> b, c;            // [stage][row]
};

NNWeights gen_nn_weights(int N, int r, double alpha, uint64_t seed);

/// Truncated network chain of length `stage`: u_i = A_i s_{i-1} + b_i x_i
/// + c_i, s_i = u_i + alpha u_i^3 componentwise (s_0 = 0 folded into
/// stage 1); the last stage keeps only component 1, so the objective is
/// s_{stage,1} under the requested sense.
CompositionChain nn_chain(const NNWeights& w, int stage, Sense sense);

struct ProjGradResult {
  std::unordered_map<int, double> point;  // local variable id -> value
  double value = 0.0;
};

/// One projected-gradient descent over the boxes (chain-rule gradients,
/// diminishing steps) from the given start; missing locals start at 0 and
/// the start is clamped into the boxes.
ProjGradResult projected_gradient_from(const CompositionChain& chain,
                                       std::unordered_map<int, double> start, int steps = 400);

/// Multi-start variant with random starts; baseline local search for the
/// sandwich checks.
ProjGradResult projected_gradient(const CompositionChain& chain, uint64_t seed, int steps = 400,
                                  int starts = 8);

}  // namespace statelift
