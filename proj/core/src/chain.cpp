#include "statelift/chain.hpp"

#include <algorithm>
#include <cmath>

namespace statelift {

int StageMap::degree() const {
  int d = 0;
  for (auto& f : components) d = std::max(d, f.degree());
  return d;
}

void TTCores::validate() const {
  if (cores.empty()) throw std::invalid_argument("TT: no cores");
  if (ranks.size() != cores.size() || local_widths.size() != cores.size())
    throw std::invalid_argument("TT: rank/width profile length mismatch");
  if (ranks.back() != 1) throw std::invalid_argument("TT: r_n must be 1");
  int prev = 1;
  for (int i = 0; i < n(); ++i) {
    if (static_cast<int>(cores[i].size()) != prev)
      throw std::invalid_argument("TT: core row count mismatch at stage " + std::to_string(i + 1));
    for (auto& row : cores[i]) {
      if (static_cast<int>(row.size()) != ranks[i])
        throw std::invalid_argument("TT: core column count mismatch at stage " +
                                    std::to_string(i + 1));
      for (auto& entry : row)
        for (auto& t : entry)
          if (static_cast<int>(t.exps.size()) != local_widths[i])
            throw std::invalid_argument("TT: entry exponent width mismatch");
    }
    prev = ranks[i];
  }
}

void CompositionChain::validate() const {
  if (n <= 0) throw std::invalid_argument("chain: n must be positive");
  if (static_cast<int>(ranks.size()) != n || ranks.back() != 1)
    throw std::invalid_argument("chain: rank profile must have length n and r_n = 1");
  if (static_cast<int>(local_widths.size()) != n)
    throw std::invalid_argument("chain: local width profile length mismatch");
  if (static_cast<int>(stages.size()) != n) throw std::invalid_argument("chain: stage count mismatch");
  if (static_cast<int>(box_radii.size()) != n)
    throw std::invalid_argument("chain: box radius count mismatch");
  for (double m : box_radii)
    if (!(m > 0)) throw std::invalid_argument("chain: box radii must be positive");
  if (state_radii) {
    if (static_cast<int>(state_radii->size()) != n)
      throw std::invalid_argument("chain: state radius count mismatch");
    for (double r : *state_radii)
      if (!(r > 0)) throw std::invalid_argument("chain: state radii must be positive");
  }
  for (int i = 1; i <= n; ++i) {
    const StageMap& f = stages[i - 1];
    if (f.stage != i || static_cast<int>(f.components.size()) != rank(i))
      throw std::invalid_argument("chain: stage map shape mismatch at stage " + std::to_string(i));
    for (auto& comp : f.components)
      for (int v : comp.support()) {
        const VarDesc& d = space->var(v);
        bool ok = (d.kind == VarKind::Local && d.stage == i) ||
                  (d.kind == VarKind::State && d.stage == i - 1);
        if (!ok)
          throw std::invalid_argument("chain: stage " + std::to_string(i) +
                                      " map references foreign variable " + d.name);
      }
  }
  for (auto& c : constraints) {
    for (int v : c.poly.support()) {
      const VarDesc& d = space->var(v);
      bool ok = (d.kind == VarKind::Local && d.stage == c.stage) ||
                (d.kind == VarKind::State && d.stage == c.stage - 1);
      if (!ok)
        throw std::invalid_argument("chain: stage " + std::to_string(c.stage) +
                                    " constraint references foreign variable " + d.name);
    }
  }
}

VarSpacePtr make_chain_space(const std::vector<int>& ranks, const std::vector<int>& local_widths) {
  std::vector<VarDesc> vars;
  int n = static_cast<int>(ranks.size());
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= local_widths[i - 1]; ++j)
      vars.push_back({i, VarKind::Local, j, ""});
    for (int l = 1; l <= ranks[i - 1]; ++l)
      vars.push_back({i, VarKind::State, l, ""});
  }
  return VariableSpace::make(std::move(vars));
}

CompositionChain chain_from_tt(const TTCores& tt) {
  tt.validate();
  CompositionChain chain;
  chain.n = tt.n();
  chain.ranks = tt.ranks;
  chain.local_widths = tt.local_widths;
  chain.space = make_chain_space(chain.ranks, chain.local_widths);
  chain.box_radii.assign(chain.n, 1.0);

  for (int i = 1; i <= chain.n; ++i) {
    StageMap sm;
    sm.stage = i;
    std::vector<int> locals = chain.space->local_ids(i);
    auto entry_poly = [&](const std::vector<TTEntryTerm>& terms) {
      Polynomial p(chain.space);
      for (auto& t : terms) {
        std::vector<std::pair<int, int>> mi;
        for (size_t j = 0; j < t.exps.size(); ++j)
          if (t.exps[j] > 0) mi.emplace_back(locals[j], t.exps[j]);
        p = p + Polynomial::monomial(chain.space, MultiIndex(std::move(mi)), t.coeff);
      }
      return p;
    };
    for (int b = 0; b < chain.rank(i); ++b) {
      Polynomial f(chain.space);
      if (i == 1) {
        f = entry_poly(tt.cores[0][0][b]);
      } else {
        for (int a = 0; a < chain.rank(i - 1); ++a) {
          int sid = chain.space->id_of(i - 1, VarKind::State, a + 1);
          f = f + Polynomial::variable(chain.space, sid) * entry_poly(tt.cores[i - 1][a][b]);
        }
      }
      sm.components.push_back(std::move(f));
    }
    chain.stages.push_back(std::move(sm));
  }
  chain.validate();
  return chain;
}

Polynomial expand_dense(const CompositionChain& chain, long long term_cap) {
  chain.validate();
  std::vector<Polynomial> cur;
  for (int i = 1; i <= chain.n; ++i) {
    std::unordered_map<int, Polynomial> bind;
    for (int l = 1; l <= chain.rank(i - 1) && i > 1; ++l)
      bind.emplace(chain.space->id_of(i - 1, VarKind::State, l), cur[l - 1]);
    std::vector<Polynomial> next;
    long long total_terms = 0;
    for (auto& f : chain.stages[i - 1].components) {
      next.push_back(f.substitute(bind));
      total_terms += static_cast<long long>(next.back().terms().size());
      if (total_terms > term_cap)
        throw std::runtime_error("expand_dense: term cap exceeded at stage " + std::to_string(i));
    }
    cur = std::move(next);
  }
  return cur[0];
}

ChainEval eval_chain(const CompositionChain& chain, const std::unordered_map<int, double>& x) {
  ChainEval out;
  std::unordered_map<int, double> point = x;
  for (int i = 1; i <= chain.n; ++i) {
    std::vector<double> s(chain.rank(i));
    for (int l = 0; l < chain.rank(i); ++l)
      s[l] = chain.stages[i - 1].components[l].evaluate(point);
    for (int l = 0; l < chain.rank(i); ++l)
      point[chain.space->id_of(i, VarKind::State, l + 1)] = s[l];
    out.trajectory.push_back(std::move(s));
  }
  out.value = out.trajectory.back()[0];
  return out;
}

double Interval::magnitude() const { return std::max(std::abs(lo), std::abs(hi)); }

namespace {
Interval ival_add(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval ival_mul(Interval a, Interval b) {
  double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}
Interval ival_pow(Interval a, int e) {
  if (e == 0) return {1.0, 1.0};
  if (e % 2 == 0 && a.lo < 0 && a.hi > 0) {
    double m = a.magnitude();
    return {0.0, std::pow(m, e)};
  }
  double lo = std::pow(a.lo, e), hi = std::pow(a.hi, e);
  if (lo > hi) std::swap(lo, hi);
  return {lo, hi};
}
}  // namespace

Interval interval_evaluate(const Polynomial& p, const std::unordered_map<int, Interval>& box) {
  Interval acc{0.0, 0.0};
  for (auto& [mi, c] : p.terms()) {
    Interval t{c, c};
    for (auto& [v, e] : mi.terms()) {
      auto it = box.find(v);
      if (it == box.end()) throw std::invalid_argument("interval_evaluate: unbound variable");
      t = ival_mul(t, ival_pow(it->second, e));
    }
    acc = ival_add(acc, t);
  }
  return acc;
}

std::vector<std::vector<Interval>> derive_state_intervals(const CompositionChain& chain) {
  std::unordered_map<int, Interval> box;
  for (int i = 1; i <= chain.n; ++i)
    for (int id : chain.space->local_ids(i))
      box[id] = {-chain.box_radii[i - 1], chain.box_radii[i - 1]};

  std::vector<std::vector<Interval>> out;
  for (int i = 1; i <= chain.n; ++i) {
    std::vector<Interval> si(chain.rank(i));
    if (chain.state_radii && (*chain.state_radii)[i - 1] > 0) {
      double r = (*chain.state_radii)[i - 1];
      for (auto& iv : si) iv = {-r, r};
    } else {
      for (int l = 0; l < chain.rank(i); ++l)
        si[l] = interval_evaluate(chain.stages[i - 1].components[l], box);
    }
    auto sids = chain.space->state_ids(i);
    for (int l = 0; l < chain.rank(i); ++l) box[sids[l]] = si[l];
    out.push_back(std::move(si));
  }
  return out;
}

std::vector<double> derive_state_bounds(const CompositionChain& chain) {
  auto intervals = derive_state_intervals(chain);
  std::vector<double> radii(chain.n);
  for (int i = 0; i < chain.n; ++i) {
    if (chain.state_radii && (*chain.state_radii)[i] > 0) {
      radii[i] = (*chain.state_radii)[i];
      continue;
    }
    double sq = 0.0;
    for (auto& iv : intervals[i]) sq += iv.magnitude() * iv.magnitude();
    radii[i] = 1.01 * std::sqrt(sq);
  }
  return radii;
}

LiftedPOP lift(const CompositionChain& chain) {
  chain.validate();
  LiftedPOP pop;
  pop.space = chain.space;
  std::vector<double> radii = derive_state_bounds(chain);

  for (int i = 1; i <= chain.n; ++i) {
    for (int l = 1; l <= chain.rank(i); ++l) {
      int sid = chain.space->id_of(i, VarKind::State, l);
      pop.equalities.push_back(Polynomial::variable(chain.space, sid) -
                               chain.stages[i - 1].components[l - 1]);
      pop.equality_labels.push_back("h[" + std::to_string(i) + "][" + std::to_string(l) + "]");
    }
  }
  for (auto& c : chain.constraints) {
    std::string lbl = "g[" + std::to_string(c.stage) + "]";
    if (c.sense == ConstraintSense::EqZero) {
      pop.equalities.push_back(c.poly);
      pop.equality_labels.push_back(lbl + "=0");
    } else {
      pop.inequalities.push_back(c.poly);
      pop.inequality_labels.push_back(lbl);
    }
  }
  for (int i = 1; i <= chain.n; ++i) {
    double m = chain.box_radii[i - 1];
    for (int id : chain.space->local_ids(i)) {
      Polynomial xi = Polynomial::variable(chain.space, id);
      pop.inequalities.push_back(Polynomial::constant(chain.space, m * m) - xi * xi);
      pop.inequality_labels.push_back("box " + chain.space->var(id).name);
    }
    Polynomial ball = Polynomial::constant(chain.space, radii[i - 1] * radii[i - 1]);
    for (int id : chain.space->state_ids(i)) {
      Polynomial si = Polynomial::variable(chain.space, id);
      ball = ball - si * si;
    }
    pop.inequalities.push_back(ball);
    pop.inequality_labels.push_back("ball s[" + std::to_string(i) + "]");
  }

  for (int i = 1; i <= chain.n; ++i) {
    for (int id : chain.space->local_ids(i)) pop.var_bounds[id] = chain.box_radii[i - 1];
    for (int id : chain.space->state_ids(i)) pop.var_bounds[id] = radii[i - 1];
  }

  int obj_id = chain.space->id_of(chain.n, VarKind::State, 1);
  pop.objective = Polynomial::variable(chain.space, obj_id);
  if (chain.sense == Sense::Maximize) {
    pop.objective = -pop.objective;
    pop.negated = true;
  }
  return pop;
}

}  // namespace statelift
