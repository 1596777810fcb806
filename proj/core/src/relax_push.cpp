#include "statelift/relax_push.hpp"

namespace statelift {

std::vector<std::vector<int>> pushforward_alphas(const StageMap& F, int k_mu) {
  const int r = static_cast<int>(F.components.size());
  std::vector<int> degs(r);
  for (int l = 0; l < r; ++l) degs[l] = F.components[l].degree();
  std::vector<std::vector<int>> out;
  std::vector<int> alpha(r, 0);
  const int cap = 2 * k_mu;
  // Enumerate alpha with sum_l alpha_l degs[l] <= cap and |alpha| <= cap.
  auto rec = [&](auto&& self, int l, int wdeg, int wtot) -> void {
    if (l == r) {
      if (wtot > 0) out.push_back(alpha);
      return;
    }
    for (int a = 0;; ++a) {
      int nd = wdeg + a * degs[l];
      int nt = wtot + a;
      if (nd > cap || nt > cap) break;
      alpha[l] = a;
      self(self, l + 1, nd, nt);
    }
    alpha[l] = 0;
  };
  rec(rec, 0, 0, 0);
  return out;
}

PushAssembly assemble_push(const CompositionChain& chain, int k_mu) {
  chain.validate();
  const auto& space = chain.space;
  PushAssembly out;
  out.negated = chain.sense == Sense::Maximize;
  out.state_radii = derive_state_bounds(chain);

  for (int i = 1; i <= chain.n; ++i) {
    std::vector<int> vars;
    if (i >= 2)
      for (int v : space->state_ids(i - 1)) vars.push_back(v);
    for (int v : space->local_ids(i)) vars.push_back(v);
    out.stages.push_back(
        make_moment_layout(out.program, vars, k_mu, "stage " + std::to_string(i)));
    const MomentLayout& lay = out.stages.back();

    double M = chain.box_radii[i - 1];
    for (int v : space->local_ids(i)) {
      Polynomial x = Polynomial::variable(space, v);
      add_localizer(out.program, lay, Polynomial::constant(space, M * M) - x * x,
                    "box " + space->var(v).name);
    }
    if (i >= 2) {
      double R = out.state_radii[i - 2];
      Polynomial ball = Polynomial::constant(space, R * R);
      for (int v : space->state_ids(i - 1)) {
        Polynomial s = Polynomial::variable(space, v);
        ball = ball - s * s;
      }
      add_localizer(out.program, lay, ball, "ball s[" + std::to_string(i - 1) + "]");
    }
    for (auto& c : chain.constraints) {
      if (c.stage != i) continue;
      if (c.sense == ConstraintSense::GeqZero)
        add_localizer(out.program, lay, c.poly, "loc g[" + std::to_string(i) + "]");
      else
        add_poly_equalities(out.program, lay, c.poly, "eq g[" + std::to_string(i) + "]");
    }

    std::map<int, double> bound;
    for (int v : space->local_ids(i)) bound[v] = M;
    if (i >= 2)
      for (int v : space->state_ids(i - 1)) bound[v] = out.state_radii[i - 2];
    set_moment_scales(out.program, lay, bound);
  }

  // Interface equalities L_{y^(i+1)}(s_i^alpha) = L_{y^(i)}(F_i^alpha).
  for (int i = 1; i < chain.n; ++i) {
    const StageMap& F = chain.stages[i - 1];
    const MomentLayout& src = out.stages[i - 1];
    const MomentLayout& dst = out.stages[i];
    std::vector<int> sids = space->state_ids(i);
    for (auto& alpha : pushforward_alphas(F, k_mu)) {
      std::vector<std::pair<int, int>> mono;
      for (size_t l = 0; l < sids.size(); ++l)
        if (alpha[l] > 0) mono.emplace_back(sids[l], alpha[l]);
      Polynomial f_pow = power_product(F.components, alpha);
      LinearRow row;
      row.group = "push interface " + std::to_string(i);
      row.coeffs.emplace_back(dst.moment_var(MultiIndex(std::move(mono))), 1.0);
      for (auto& [m, c] : f_pow.terms()) row.coeffs.emplace_back(src.moment_var(m), -c);
      if (out.program.add_row(std::move(row))) ++out.push_rows;
    }
  }

  Polynomial obj = chain.stages[chain.n - 1].components[0];
  if (out.negated) obj = -obj;
  out.program.set_objective(linear_functional(out.stages.back(), obj));
  out.program.validate();
  return out;
}

PushCounts predicted_push_counts(int r, int k_mu, int d, int n) {
  PushCounts c;
  c.block_size = binomial(r + 1 + k_mu, k_mu);
  int cap = (2 * k_mu) / std::max(d, 1);
  c.push_eqs = static_cast<long long>(n - 1) * binomial(r + cap, cap);
  return c;
}

}  // namespace statelift
