#pragma once

#include <Eigen/Dense>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "statelift/polynomial.hpp"

namespace statelift {

/// One affine contribution to a PSD block entry: coeff * y[var] at
/// (row, col) with row <= col (var < 0 means a constant contribution).
struct BlockEntry {
  int row = 0, col = 0;
  int var = -1;
  double coeff = 0.0;
};

struct PsdBlock {
  int dim = 0;
  std::string label;
  std::vector<BlockEntry> entries;
  /// Monomial labels of the block index (set for moment matrices; empty
  /// for localizing blocks).
  std::vector<MultiIndex> index_monomials;
};

struct LinearRow {
  std::vector<std::pair<int, double>> coeffs;  // sorted by var id
  double rhs = 0.0;
  std::string group;
};

/// Solver-agnostic conic container: free scalar variables (moments) tied
/// into PSD blocks through an entry-sharing map, sparse linear equalities
/// and a linear objective (always minimized).
class ConicProgram {
 public:
  int new_var();
  int num_vars() const { return num_vars_; }

  /// Expected magnitude of a variable (default 1). A hint only: solvers
  /// may use it to equilibrate internally; solutions are always reported
  /// in the original units.
  void set_var_scale(int v, double s);
  const std::vector<double>& var_scales() const { return var_scales_; }

  int add_block(int dim, std::string label);
  const std::vector<PsdBlock>& blocks() const { return blocks_; }
  PsdBlock& block(int b) { return blocks_.at(b); }

  /// Tie entry (r,c) of a block to a single scalar variable (symmetric:
  /// (c,r) is the same entry). Re-tying an entry to a different variable
  /// is an error.
  void set_moment_entry(int blk, int r, int c, int var);
  /// Add an affine contribution to an entry (localizing matrices).
  void add_entry(int blk, int r, int c, int var, double coeff);

  /// Scalar variable behind entry (r,c) of a block; nullopt when the
  /// entry is not a pure moment entry.
  std::optional<int> moment_var_at(int blk, int r, int c) const;

  /// Add an equality row; rows identical to an existing one (after
  /// canonicalization) are dropped. Returns true if kept.
  bool add_row(LinearRow row);
  const std::vector<LinearRow>& rows() const { return rows_; }

  void set_objective(std::vector<std::pair<int, double>> coeffs, double constant = 0.0);
  const std::vector<std::pair<int, double>>& objective() const { return objective_; }
  double objective_constant() const { return obj_const_; }

  int largest_block_dim() const;
  void validate() const;

 private:
  int num_vars_ = 0;
  std::vector<double> var_scales_;
  std::vector<PsdBlock> blocks_;
  std::vector<LinearRow> rows_;
  std::set<std::vector<uint64_t>> row_hashes_;
  std::vector<std::pair<int, double>> objective_;
  double obj_const_ = 0.0;
  // (blk, canonical r<=c) -> var for pure moment entries
  std::map<std::tuple<int, int, int>, int> moment_entries_;
};

enum class SolveStatus { Optimal, NearOptimal, Infeasible, Unbounded, Stall, Timeout };

std::string to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Stall;
  double objective = 0.0;       // primal value c'y (includes the constant)
  double dual_objective = 0.0;  // certificate-side value; the safe bound
  std::vector<double> y;               // scalar (moment) variables
  std::vector<Eigen::MatrixXd> block_matrices;  // PSD blocks at the solution
  std::vector<double> eq_duals;
  int iterations = 0;
  double wall_time_s = 0.0;
  double primal_infeas = 0.0;
  double dual_infeas = 0.0;
  double rel_gap = 0.0;

  bool ok() const {
    return status == SolveStatus::Optimal || status == SolveStatus::NearOptimal;
  }
};

struct MomentMatrix {
  Eigen::MatrixXd values;
  std::vector<MultiIndex> index;  // monomial labels per row/column
};

/// Dense block of a solve result together with its monomial index.
MomentMatrix moment_matrix(const ConicProgram& p, const SolveResult& res, int blk);

}  // namespace statelift
