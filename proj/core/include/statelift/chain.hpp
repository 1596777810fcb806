#pragma once

#include <map>
#include <optional>
#include <vector>

#include "statelift/polynomial.hpp"

namespace statelift {

enum class Sense { Minimize, Maximize };
enum class ConstraintSense { GeqZero, EqZero };

/// Component maps F_{i,1..r_i} of one stage, as polynomials over the
/// chain's variable space. Components may reference only the states of
/// stage i-1 and the locals of stage i.
struct StageMap {
  int stage = 1;
  std::vector<Polynomial> components;
  int degree() const;
};

/// A per-stage constraint on (s_{i-1}, x_i).
struct StageConstraint {
  int stage = 1;
  Polynomial poly;
  ConstraintSense sense = ConstraintSense::GeqZero;
};

/// One term of a univariate-per-stage matrix-polynomial core entry:
/// coefficient times a monomial in the stage's local variables.
struct TTEntryTerm {
  std::vector<int> exps;  // one exponent per local component of the stage
  double coeff = 0.0;
};

/// Tensor-train cores P_i of shape r_{i-1} x r_i with polynomial entries
/// in the locals of stage i. Entry basis is fixed to monomials.
struct TTCores {
  std::vector<int> ranks;         // r_1..r_n (r_n must be 1); r_0 = 1 implicit
  std::vector<int> local_widths;  // m_1..m_n
  // cores[i-1][a][b] = term list of entry (a,b) of P_i (0-based a,b)
  std::vector<std::vector<std::vector<std::vector<TTEntryTerm>>>> cores;

  int n() const { return static_cast<int>(cores.size()); }
  void validate() const;  // throws on shape mismatch
};

/// The chain s_1 = F_1(x_1), s_i = F_i(s_{i-1}, x_i), p = s_n.
struct CompositionChain {
  int n = 0;
  std::vector<int> ranks;         // r_1..r_n, r_n = 1
  std::vector<int> local_widths;  // m_1..m_n
  VarSpacePtr space;              // all x[i][j] and s[i][l]
  std::vector<StageMap> stages;
  std::vector<StageConstraint> constraints;
  std::vector<double> box_radii;                 // M_1..M_n (per local component)
  std::optional<std::vector<double>> state_radii;  // R_1..R_n override
  Sense sense = Sense::Minimize;

  int rank(int i) const { return i == 0 ? 1 : ranks.at(i - 1); }
  void validate() const;  // throws on inconsistent structure
};

/// Flat POP in (x, s): objective = +-s_{n,1}, lifting equalities
/// h_{i,l} = s_{i,l} - F_{i,l}, stage equalities, and the inequality list
/// (stage inequalities plus box and state-ball constraints).
struct LiftedPOP {
  VarSpacePtr space;
  Polynomial objective;
  std::vector<Polynomial> equalities;
  std::vector<Polynomial> inequalities;
  std::vector<std::string> equality_labels;
  std::vector<std::string> inequality_labels;
  bool negated = false;  // true when a Maximize chain was negated at lift time
  std::map<int, double> var_bounds;  // |v| <= bound per variable id
};

/// Variable space for a chain with the given rank and width profiles.
VarSpacePtr make_chain_space(const std::vector<int>& ranks, const std::vector<int>& local_widths);

/// Build the chain F_i(s_{i-1}, x_i) = s_{i-1} P_i(x_i) (row-vector
/// convention; stage 1 is F_1 = P_1(x_1)).
CompositionChain chain_from_tt(const TTCores& tt);

/// Expand the composition into a polynomial in the x variables only.
/// Throws if the running term count exceeds `term_cap`.
Polynomial expand_dense(const CompositionChain& chain, long long term_cap = 1000000);

struct ChainEval {
  double value = 0.0;
  std::vector<std::vector<double>> trajectory;  // s_1..s_n
};

/// Evaluate the chain at a point given per local variable id.
/// Points outside the declared boxes are accepted (warning left to callers).
ChainEval eval_chain(const CompositionChain& chain, const std::unordered_map<int, double>& x);

struct Interval {
  double lo = 0.0, hi = 0.0;
  double magnitude() const;
};

Interval interval_evaluate(const Polynomial& p, const std::unordered_map<int, Interval>& box);

/// Interval-arithmetic state bounds R_1..R_n, inflated by 1%. A
/// user-provided state_radii entry overrides the derived value (and seeds
/// the per-component interval [-R_i, R_i] for later stages).
std::vector<double> derive_state_bounds(const CompositionChain& chain);

/// Per-component state intervals from the same propagation (used by the
/// affine-network envelope oracle).
std::vector<std::vector<Interval>> derive_state_intervals(const CompositionChain& chain);

LiftedPOP lift(const CompositionChain& chain);

}  // namespace statelift
