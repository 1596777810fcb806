#include "statelift/conic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace statelift {

int ConicProgram::new_var() {
  var_scales_.push_back(1.0);
  return num_vars_++;
}

void ConicProgram::set_var_scale(int v, double s) {
  if (v < 0 || v >= num_vars_) throw std::out_of_range("set_var_scale: bad variable");
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("set_var_scale: bad scale");
  var_scales_[v] = s;
}

int ConicProgram::add_block(int dim, std::string label) {
  if (dim <= 0) throw std::invalid_argument("block dimension must be positive");
  PsdBlock b;
  b.dim = dim;
  b.label = std::move(label);
  blocks_.push_back(std::move(b));
  return static_cast<int>(blocks_.size()) - 1;
}

void ConicProgram::set_moment_entry(int blk, int r, int c, int var) {
  if (r > c) std::swap(r, c);
  auto key = std::make_tuple(blk, r, c);
  auto it = moment_entries_.find(key);
  if (it != moment_entries_.end()) {
    if (it->second != var)
      throw std::logic_error("moment entry already tied to a different variable");
    return;  // entry already present; do not duplicate the contribution
  }
  moment_entries_.emplace(key, var);
  blocks_.at(blk).entries.push_back({r, c, var, 1.0});
}

void ConicProgram::add_entry(int blk, int r, int c, int var, double coeff) {
  if (coeff == 0.0) return;
  if (r > c) std::swap(r, c);
  blocks_.at(blk).entries.push_back({r, c, var, coeff});
}

std::optional<int> ConicProgram::moment_var_at(int blk, int r, int c) const {
  if (r > c) std::swap(r, c);
  auto it = moment_entries_.find(std::make_tuple(blk, r, c));
  if (it == moment_entries_.end()) return std::nullopt;
  return it->second;
}

bool ConicProgram::add_row(LinearRow row) {
  std::sort(row.coeffs.begin(), row.coeffs.end());
  // merge duplicates, drop zeros
  std::vector<std::pair<int, double>> merged;
  for (auto& [v, a] : row.coeffs) {
    if (!merged.empty() && merged.back().first == v)
      merged.back().second += a;
    else
      merged.emplace_back(v, a);
  }
  std::erase_if(merged, [](auto& p) { return p.second == 0.0; });
  row.coeffs = std::move(merged);
  if (row.coeffs.empty() && row.rhs == 0.0) return false;

  std::vector<uint64_t> key;
  key.reserve(2 * row.coeffs.size() + 1);
  for (auto& [v, a] : row.coeffs) {
    key.push_back(static_cast<uint64_t>(v));
    key.push_back(std::bit_cast<uint64_t>(a));
  }
  key.push_back(std::bit_cast<uint64_t>(row.rhs));
  if (!row_hashes_.insert(key).second) return false;
  rows_.push_back(std::move(row));
  return true;
}

void ConicProgram::set_objective(std::vector<std::pair<int, double>> coeffs, double constant) {
  std::sort(coeffs.begin(), coeffs.end());
  objective_ = std::move(coeffs);
  obj_const_ = constant;
}

int ConicProgram::largest_block_dim() const {
  int m = 0;
  for (auto& b : blocks_) m = std::max(m, b.dim);
  return m;
}

void ConicProgram::validate() const {
  for (auto& b : blocks_)
    for (auto& e : b.entries) {
      if (e.row < 0 || e.col >= b.dim || e.row > e.col)
        throw std::logic_error("block entry out of range");
      if (e.var >= num_vars_) throw std::logic_error("block entry references unknown variable");
    }
  for (auto& r : rows_)
    for (auto& [v, a] : r.coeffs)
      if (v < 0 || v >= num_vars_) throw std::logic_error("row references unknown variable");
  for (auto& [v, a] : objective_)
    if (v < 0 || v >= num_vars_) throw std::logic_error("objective references unknown variable");
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::NearOptimal: return "near_optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Stall: return "stall";
    case SolveStatus::Timeout: return "timeout";
  }
  return "unknown";
}

MomentMatrix moment_matrix(const ConicProgram& p, const SolveResult& res, int blk) {
  MomentMatrix m;
  m.values = res.block_matrices.at(blk);
  m.index = p.blocks().at(blk).index_monomials;
  return m;
}

}  // namespace statelift
