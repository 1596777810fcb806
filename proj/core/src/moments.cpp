#include "statelift/moments.hpp"

#include <algorithm>
#include <stdexcept>

namespace statelift {

int MomentLayout::moment_var(const MultiIndex& m) const {
  auto it = var_of.find(m);
  if (it == var_of.end())
    throw std::invalid_argument("moment of degree " + std::to_string(m.total_degree()) +
                                " not covered at order " + std::to_string(order));
  return it->second;
}

MomentLayout make_moment_layout(ConicProgram& p, std::span<const int> vars, int k,
                                const std::string& label, MomentPool* pool) {
  if (k < 0) throw std::invalid_argument("relaxation order must be nonnegative");
  MomentLayout lay;
  lay.vars.assign(vars.begin(), vars.end());
  std::sort(lay.vars.begin(), lay.vars.end());
  lay.order = k;
  lay.moments = monomials_up_to(lay.vars, 2 * k);
  lay.basis = monomials_up_to(lay.vars, k);
  for (auto& m : lay.moments) {
    if (pool) {
      auto [it, fresh] = pool->try_emplace(m, -1);
      if (fresh) it->second = p.new_var();
      lay.var_of.emplace(m, it->second);
    } else {
      lay.var_of.emplace(m, p.new_var());
    }
  }
  lay.block = p.add_block(static_cast<int>(lay.basis.size()), label);
  p.block(lay.block).index_monomials = lay.basis;
  for (size_t i = 0; i < lay.basis.size(); ++i)
    for (size_t j = i; j < lay.basis.size(); ++j)
      p.set_moment_entry(lay.block, static_cast<int>(i), static_cast<int>(j),
                         lay.var_of.at(lay.basis[i] + lay.basis[j]));
  p.add_row({{{lay.var_of.at(MultiIndex{}), 1.0}}, 1.0, label + " normalization"});
  return lay;
}

void add_localizer(ConicProgram& p, const MomentLayout& lay, const Polynomial& g,
                   const std::string& label) {
  int dg = (g.degree() + 1) / 2;
  int ord = lay.order - dg;
  if (ord < 0)
    throw std::invalid_argument("order " + std::to_string(lay.order) +
                                " too small for constraint of degree " +
                                std::to_string(g.degree()));
  auto basis = monomials_up_to(lay.vars, ord);
  int blk = p.add_block(static_cast<int>(basis.size()), label);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i; j < basis.size(); ++j) {
      MultiIndex qq = basis[i] + basis[j];
      for (auto& [m, c] : g.terms())
        p.add_entry(blk, static_cast<int>(i), static_cast<int>(j), lay.moment_var(qq + m), c);
    }
}

int add_poly_equalities(ConicProgram& p, const MomentLayout& lay, const Polynomial& e,
                        const std::string& group) {
  int de = e.degree();
  if (de > 2 * lay.order)
    throw std::invalid_argument("order too small for equality of degree " + std::to_string(de));
  auto qs = monomials_up_to(lay.vars, 2 * lay.order - de);
  int kept = 0;
  for (auto& q : qs) {
    LinearRow row;
    row.group = group;
    for (auto& [m, c] : e.terms()) row.coeffs.emplace_back(lay.moment_var(q + m), c);
    if (p.add_row(std::move(row))) ++kept;
  }
  return kept;
}

void set_moment_scales(ConicProgram& p, const MomentLayout& lay,
                       const std::map<int, double>& bound) {
  for (auto& [m, var] : lay.var_of) {
    double s = 1.0;
    for (auto& [v, e] : m.terms()) {
      auto it = bound.find(v);
      if (it == bound.end()) continue;
      for (int t = 0; t < e; ++t) s *= it->second;
    }
    p.set_var_scale(var, std::clamp(s, 1e-8, 1e8));
  }
}

std::vector<std::pair<int, double>> linear_functional(const MomentLayout& lay,
                                                      const Polynomial& f) {
  std::map<int, double> acc;
  for (auto& [m, c] : f.terms()) acc[lay.moment_var(m)] += c;
  return {acc.begin(), acc.end()};
}

}  // namespace statelift
