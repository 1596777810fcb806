#include "statelift/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace statelift {

double GaussianStream::uniform() {
  // 53-bit mantissa draw in (0, 1].
  return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;
}

double GaussianStream::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

CompositionChain gen_random_quadratic_composition(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_random_quadratic_composition: n >= 1");
  const int r = 2;
  GaussianStream g(seed);
  CompositionChain chain;
  chain.n = n;
  chain.ranks.assign(n, r);
  chain.ranks.back() = 1;
  chain.local_widths.assign(n, 1);
  chain.space = make_chain_space(chain.ranks, chain.local_widths);
  chain.box_radii.assign(n, 1.0);
  chain.sense = Sense::Minimize;

  // Composed degree budget: deg s_1 = 2, deg s_i = 2^(i-1) for i >= 2, so
  // the expanded polynomial has degree 2^(n-1) and the minimal dense
  // relaxation order is 2^(n-2). Terms s1^p1 s2^p2 x^a of a later stage
  // are kept only when (p1+p2) deg(s_{i-1}) + a fits the budget.
  auto state_deg = [](int i) { return i <= 1 ? 2LL : (1LL << (i - 1)); };
  for (int i = 1; i <= n; ++i) {
    StageMap F;
    F.stage = i;
    int x = chain.space->id_of(i, VarKind::Local, 1);
    std::vector<int> sprev = chain.space->state_ids(i - 1);
    int ri = chain.ranks[i - 1];
    long long dprev = state_deg(i - 1), cap = state_deg(i);
    for (int l = 0; l < ri; ++l) {
      Polynomial f(chain.space);
      if (i == 1) {
        for (int a = 0; a <= 2; ++a) {
          double c = 0.5 * g() * std::pow(0.7, a + 1);
          std::vector<std::pair<int, int>> mono;
          if (a > 0) mono.emplace_back(x, a);
          f = f + Polynomial::monomial(chain.space, MultiIndex(std::move(mono)), c);
        }
      } else {
        for (int p1 = 0; p1 <= 2; ++p1)
          for (int p2 = 0; p2 <= 2; ++p2)
            for (int a = 0; a <= 2; ++a) {
              double c = 0.5 * g() * std::pow(0.7, p1 + p2 + a + 1);
              if ((p1 + p2) * dprev + a > cap) continue;
              std::vector<std::pair<int, int>> mono;
              if (p1 > 0) mono.emplace_back(sprev[0], p1);
              if (p2 > 0) mono.emplace_back(sprev[1], p2);
              if (a > 0) mono.emplace_back(x, a);
              f = f + Polynomial::monomial(chain.space, MultiIndex(std::move(mono)), c);
            }
      }
      F.components.push_back(f);
    }
    chain.stages.push_back(std::move(F));
  }
  chain.validate();
  return chain;
}

namespace {

std::vector<TTEntryTerm> scalar_entry(const std::vector<std::pair<int, double>>& powers) {
  std::vector<TTEntryTerm> t;
  for (auto& [j, c] : powers)
    if (c != 0.0) t.push_back({{j}, c});
  return t;
}

}  // namespace

CompositionChain gen_random_tt(int n, int r, int d, uint64_t seed) {
  if (n < 1 || r < 1 || d < 0) throw std::invalid_argument("gen_random_tt: bad sizes");
  GaussianStream g(seed);
  auto entry = [&]() {
    std::vector<TTEntryTerm> t;
    for (int j = 0; j <= d; ++j) t.push_back({{j}, 0.5 * g() * std::pow(0.7, j + 1)});
    return t;
  };
  TTCores tt;
  tt.ranks.assign(n, r);
  tt.ranks.back() = 1;
  tt.local_widths.assign(n, 1);
  tt.cores.resize(n);
  for (int i = 0; i < n; ++i) {
    int rows = i == 0 ? 1 : r;
    int cols = i == n - 1 ? 1 : r;
    tt.cores[i].resize(rows);
    for (int a = 0; a < rows; ++a) {
      tt.cores[i][a].resize(cols);
      for (int b = 0; b < cols; ++b) tt.cores[i][a][b] = entry();
    }
  }
  tt.validate();
  CompositionChain chain = chain_from_tt(tt);
  chain.sense = Sense::Minimize;
  return chain;
}

CompositionChain gen_perturbed_identity_tt(int n, int r, int d, double tau, uint64_t seed) {
  if (n < 1 || r < 1 || d < 1) throw std::invalid_argument("gen_perturbed_identity_tt: bad sizes");
  GaussianStream g(seed);
  double hsum = 0.0;
  std::vector<double> w(d);
  for (int k = 1; k <= d; ++k) hsum += 1.0 / k;
  for (int k = 1; k <= d; ++k) w[k - 1] = (1.0 / k) / hsum;

  // P_i as dense per-power coefficient tables: P[a][b][j] = coeff of x^j.
  auto draw_stage = [&]() {
    std::vector<std::vector<std::vector<double>>> B(
        d, std::vector<std::vector<double>>(r, std::vector<double>(r)));
    for (int k = 0; k < d; ++k) {
      double fro = 0.0;
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          B[k][a][b] = g.uniform();
          fro += B[k][a][b] * B[k][a][b];
        }
      fro = std::sqrt(fro);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) B[k][a][b] /= fro;
    }
    std::vector<std::vector<std::vector<double>>> P(
        r, std::vector<std::vector<double>>(r, std::vector<double>(d + 1, 0.0)));
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        if (a == b) P[a][b][0] += 1.0;
        for (int k = 1; k <= d; ++k) {
          // ((x+1)/2)^k = 2^-k sum_j C(k,j) x^j, vanishing at x = -1.
          double scale = (tau / n) * w[k - 1] * B[k - 1][a][b] * std::pow(0.5, k);
          for (int j = 0; j <= k; ++j)
            P[a][b][j] += scale * static_cast<double>(binomial(k, j));
        }
      }
    return P;
  };

  std::vector<std::vector<std::vector<std::vector<double>>>> P;  // [stage][a][b][power]
  for (int i = 0; i < n; ++i) P.push_back(draw_stage());

  TTCores tt;
  tt.ranks.assign(n, r);
  tt.ranks.back() = 1;
  tt.local_widths.assign(n, 1);
  tt.cores.resize(n);
  auto poly_entry = [&](const std::vector<double>& coef) {
    std::vector<std::pair<int, double>> powers;
    for (int j = 0; j < static_cast<int>(coef.size()); ++j) powers.emplace_back(j, coef[j]);
    return scalar_entry(powers);
  };
  auto add_vec = [&](std::vector<double>& acc, const std::vector<double>& v) {
    for (size_t j = 0; j < v.size(); ++j) acc[j] += v[j];
  };
  if (n == 1) {
    // u' P_1 v collapses to a single scalar entry.
    std::vector<double> coef(d + 1, 0.0);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) add_vec(coef, P[0][a][b]);
    tt.cores[0] = {{poly_entry(coef)}};
  } else {
    // First core u' P_1 (1 x r).
    tt.cores[0].resize(1);
    tt.cores[0][0].resize(r);
    for (int b = 0; b < r; ++b) {
      std::vector<double> coef(d + 1, 0.0);
      for (int a = 0; a < r; ++a) add_vec(coef, P[0][a][b]);
      tt.cores[0][0][b] = poly_entry(coef);
    }
    for (int i = 1; i < n - 1; ++i) {
      tt.cores[i].resize(r);
      for (int a = 0; a < r; ++a) {
        tt.cores[i][a].resize(r);
        for (int b = 0; b < r; ++b) tt.cores[i][a][b] = poly_entry(P[i][a][b]);
      }
    }
    // Last core P_n v (r x 1).
    tt.cores[n - 1].resize(r);
    for (int a = 0; a < r; ++a) {
      std::vector<double> coef(d + 1, 0.0);
      for (int b = 0; b < r; ++b) add_vec(coef, P[n - 1][a][b]);
      tt.cores[n - 1][a] = {poly_entry(coef)};
    }
  }
  tt.validate();
  CompositionChain chain = chain_from_tt(tt);
  chain.sense = Sense::Minimize;
  return chain;
}

MarkovProblem markov_problem(int n, std::array<double, 2> a, std::array<double, 2> b) {
  if (n < 1) throw std::invalid_argument("markov_problem: n >= 1");
  // a(x) = a0 + a2 x^2 as entry terms; row (a, 1-a), second row (b, 1-b).
  auto quad = [](double c0, double c2) {
    std::vector<TTEntryTerm> t;
    if (c0 != 0.0) t.push_back({{0}, c0});
    if (c2 != 0.0) t.push_back({{2}, c2});
    return t;
  };
  auto A = [&] { return quad(a[0], a[1]); };
  auto cA = [&] { return quad(1.0 - a[0], -a[1]); };
  auto B = [&] { return quad(b[0], b[1]); };
  auto cB = [&] { return quad(1.0 - b[0], -b[1]); };

  TTCores tt;
  tt.ranks.assign(n, 2);
  tt.ranks.back() = 1;
  tt.local_widths.assign(n, 1);
  tt.cores.resize(n);
  if (n == 1) {
    tt.cores[0] = {{A()}};  // e1' P_1 e1 = a(x_1)
  } else {
    tt.cores[0] = {{A(), cA()}};                 // e1' P_1
    for (int i = 1; i < n - 1; ++i) tt.cores[i] = {{A(), cA()}, {B(), cB()}};
    tt.cores[n - 1] = {{A()}, {B()}};            // P_n e1
  }
  tt.validate();

  MarkovProblem out{chain_from_tt(tt), 0.0, true};
  out.chain.sense = Sense::Maximize;
  // Row entries must stay probabilities over the whole box (x^2 in [0,1]).
  auto in01 = [](double c0, double c2) {
    double lo = c0 + std::min(0.0, c2), hi = c0 + std::max(0.0, c2);
    return lo >= -1e-12 && hi <= 1.0 + 1e-12;
  };
  out.probabilities_valid = in01(a[0], a[1]) && in01(b[0], b[1]);
  // Optimum for x = 0 (both entries maximized there when a2, b2 <= 0):
  // eigen-decomposition of the constant column-stochastic matrix.
  double lam = a[0] - b[0];
  double pinf = b[0] / (1.0 - a[0] + b[0]);
  out.oracle = pinf + (1.0 - pinf) * std::pow(lam, n);
  return out;
}

CompositionChain markov_chebyshev_problem(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("markov_chebyshev_problem: n >= 1");
  GaussianStream g(seed);
  // T3 = 4x^3 - 3x, T4 = 8x^4 - 8x^2 + 1; both bounded by 1 on [-1,1], so
  // 0.5 + 0.4 (c1 T4 + c2 T3)/(|c1|+|c2|) stays inside [0.1, 0.9].
  auto mix = [&]() {
    double c1 = g(), c2 = g();
    double s = std::abs(c1) + std::abs(c2);
    if (s < 1e-12) s = 1.0;
    double w4 = 0.4 * c1 / s, w3 = 0.4 * c2 / s;
    std::vector<TTEntryTerm> t;
    double k0 = 0.5 + w4, k1 = -3.0 * w3, k2 = -8.0 * w4, k3 = 4.0 * w3, k4 = 8.0 * w4;
    if (k0 != 0.0) t.push_back({{0}, k0});
    if (k1 != 0.0) t.push_back({{1}, k1});
    if (k2 != 0.0) t.push_back({{2}, k2});
    if (k3 != 0.0) t.push_back({{3}, k3});
    if (k4 != 0.0) t.push_back({{4}, k4});
    return t;
  };
  auto complement = [](const std::vector<TTEntryTerm>& p) {
    std::vector<TTEntryTerm> t;
    bool had0 = false;
    for (auto& e : p) {
      if (e.exps[0] == 0) {
        t.push_back({{0}, 1.0 - e.coeff});
        had0 = true;
      } else {
        t.push_back({e.exps, -e.coeff});
      }
    }
    if (!had0) t.push_back({{0}, 1.0});
    return t;
  };

  TTCores tt;
  tt.ranks.assign(n, 2);
  tt.ranks.back() = 1;
  tt.local_widths.assign(n, 1);
  tt.cores.resize(n);
  for (int i = 0; i < n; ++i) {
    auto ai = mix();
    auto bi = mix();
    if (n == 1) {
      tt.cores[i] = {{ai}};
    } else if (i == 0) {
      tt.cores[i] = {{ai, complement(ai)}};
    } else if (i == n - 1) {
      tt.cores[i] = {{ai}, {bi}};
    } else {
      tt.cores[i] = {{ai, complement(ai)}, {bi, complement(bi)}};
    }
  }
  tt.validate();
  CompositionChain chain = chain_from_tt(tt);
  chain.sense = Sense::Maximize;
  return chain;
}

std::array<std::array<double, 3>, 3> quantum_rotation(int k, double theta) {
  double x = std::sin(theta), y = std::cos(theta);
  if (k % 2 == 1) return {{{y, 0.0, x}, {0.0, 1.0, 0.0}, {-x, 0.0, y}}};
  return {{{y, -x, 0.0}, {x, y, 0.0}, {0.0, 0.0, 1.0}}};
}

CompositionChain quantum_problem(int N, double theta_max, std::array<double, 3> s0,
                                 std::array<double, 3> target) {
  if (N < 1) throw std::invalid_argument("quantum_problem: N >= 1");
  double c_min = theta_max > 0.0 ? std::cos(theta_max) : -1.0;

  // Rotation matrices with polynomial entries in (x_k, y_k) = (sin, cos);
  // entry term exps are (power of x, power of y).
  auto X = [](double c) { return TTEntryTerm{{1, 0}, c}; };
  auto Y = [](double c) { return TTEntryTerm{{0, 1}, c}; };
  auto rot = [&](int k) {
    // R[row][col] as term lists.
    std::vector<std::vector<std::vector<TTEntryTerm>>> R(
        3, std::vector<std::vector<TTEntryTerm>>(3));
    if (k % 2 == 1) {
      R[0][0] = {Y(1)};
      R[0][2] = {X(1)};
      R[1][1] = {TTEntryTerm{{0, 0}, 1.0}};
      R[2][0] = {X(-1)};
      R[2][2] = {Y(1)};
    } else {
      R[0][0] = {Y(1)};
      R[0][1] = {X(-1)};
      R[1][0] = {X(1)};
      R[1][1] = {Y(1)};
      R[2][2] = {TTEntryTerm{{0, 0}, 1.0}};
    }
    return R;
  };
  auto scale_terms = [](std::vector<TTEntryTerm> t, double c) {
    for (auto& e : t) e.coeff *= c;
    return t;
  };
  auto append = [](std::vector<TTEntryTerm>& acc, const std::vector<TTEntryTerm>& t) {
    // Merge by exponent pair.
    for (auto& e : t) {
      bool hit = false;
      for (auto& a : acc)
        if (a.exps == e.exps) {
          a.coeff += e.coeff;
          hit = true;
          break;
        }
      if (!hit) acc.push_back(e);
    }
  };

  TTCores tt;
  tt.ranks.assign(N, 3);
  tt.ranks.back() = 1;
  tt.local_widths.assign(N, 2);
  tt.cores.resize(N);
  for (int k = 1; k <= N; ++k) {
    auto R = rot(k);
    // Row convention: s_k^row = s_{k-1}^row P_k with P_k = R_k'.
    if (k == 1 && N == 1) {
      // Scalar target . R_1 s0.
      std::vector<TTEntryTerm> e;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) append(e, scale_terms(R[i][j], target[i] * s0[j]));
      tt.cores[0] = {{e}};
    } else if (k == 1) {
      // 1 x 3 core: component b = (R_1 s0)_b.
      tt.cores[0].resize(1);
      tt.cores[0][0].resize(3);
      for (int bcol = 0; bcol < 3; ++bcol) {
        std::vector<TTEntryTerm> e;
        for (int j = 0; j < 3; ++j) append(e, scale_terms(R[bcol][j], s0[j]));
        tt.cores[0][0][bcol] = e;
      }
    } else if (k == N) {
      // 3 x 1 core: entry a = sum_i target_i R[i][a].
      tt.cores[N - 1].resize(3);
      for (int a = 0; a < 3; ++a) {
        std::vector<TTEntryTerm> e;
        for (int i = 0; i < 3; ++i) append(e, scale_terms(R[i][a], target[i]));
        tt.cores[N - 1][a] = {e};
      }
    } else {
      // P_k = R_k', so entry (a,b) = R[b][a].
      tt.cores[k - 1].resize(3);
      for (int a = 0; a < 3; ++a) {
        tt.cores[k - 1][a].resize(3);
        for (int b = 0; b < 3; ++b) tt.cores[k - 1][a][b] = R[b][a];
      }
    }
  }
  tt.validate();
  CompositionChain chain = chain_from_tt(tt);
  chain.sense = Sense::Maximize;
  chain.state_radii = std::vector<double>(N, 1.0);

  for (int k = 1; k <= N; ++k) {
    int xk = chain.space->id_of(k, VarKind::Local, 1);
    int yk = chain.space->id_of(k, VarKind::Local, 2);
    Polynomial x = Polynomial::variable(chain.space, xk);
    Polynomial y = Polynomial::variable(chain.space, yk);
    Polynomial one = Polynomial::constant(chain.space, 1.0);
    chain.constraints.push_back({k, x * x + y * y - one, ConstraintSense::EqZero});
    chain.constraints.push_back(
        {k, y - Polynomial::constant(chain.space, c_min), ConstraintSense::GeqZero});
    if (k >= 2) {
      Polynomial ball(chain.space);
      for (int v : chain.space->state_ids(k - 1)) {
        Polynomial s = Polynomial::variable(chain.space, v);
        ball = ball + s * s;
      }
      chain.constraints.push_back({k, ball - one, ConstraintSense::EqZero});
    }
  }
  chain.validate();
  return chain;
}

NNWeights gen_nn_weights(int N, int r, double alpha, uint64_t seed) {
  if (N < 1 || r < 1) throw std::invalid_argument("gen_nn_weights: bad sizes");
  GaussianStream g(seed);
  NNWeights w;
  w.N = N;
  w.r = r;
  w.alpha = alpha;
  for (int i = 0; i < N; ++i) {
    std::vector<std::vector<double>> A(r, std::vector<double>(r));
    std::vector<double> b(r), c(r);
    for (int p = 0; p < r; ++p)
      for (int q = 0; q < r; ++q) A[p][q] = 0.1 * g();
    for (int p = 0; p < r; ++p) b[p] = 0.3 * g();
    for (int p = 0; p < r; ++p) c[p] = 0.05 * g();
    w.A.push_back(std::move(A));
    w.b.push_back(std::move(b));
    w.c.push_back(std::move(c));
  }
  return w;
}

CompositionChain nn_chain(const NNWeights& w, int stage, Sense sense) {
  if (stage < 1 || stage > w.N) throw std::invalid_argument("nn_chain: stage out of range");
  CompositionChain chain;
  chain.n = stage;
  chain.ranks.assign(stage, w.r);
  chain.ranks.back() = 1;
  chain.local_widths.assign(stage, 1);
  chain.space = make_chain_space(chain.ranks, chain.local_widths);
  chain.box_radii.assign(stage, 1.0);
  chain.sense = sense;

  for (int i = 1; i <= stage; ++i) {
    StageMap F;
    F.stage = i;
    int x = chain.space->id_of(i, VarKind::Local, 1);
    std::vector<int> sprev = chain.space->state_ids(i - 1);
    int ncomp = chain.ranks[i - 1];
    for (int l = 0; l < ncomp; ++l) {
      // u = A s + b x + c (s_0 = 0), then u + alpha u^3 componentwise.
      Polynomial u = Polynomial::constant(chain.space, w.c[i - 1][l]) +
                     Polynomial::variable(chain.space, x).scale(w.b[i - 1][l]);
      for (size_t j = 0; j < sprev.size(); ++j)
        u = u + Polynomial::variable(chain.space, sprev[j]).scale(w.A[i - 1][l][j]);
      Polynomial f = u;
      if (w.alpha != 0.0) f = f + (u * u * u).scale(w.alpha);
      F.components.push_back(f);
    }
    chain.stages.push_back(std::move(F));
  }
  chain.validate();
  return chain;
}

ProjGradResult projected_gradient_from(const CompositionChain& chain,
                                       std::unordered_map<int, double> x, int steps) {
  // Precompute stage Jacobian polynomials.
  std::vector<std::vector<std::vector<Polynomial>>> dstate(chain.n), dlocal(chain.n);
  for (int i = 1; i <= chain.n; ++i) {
    std::vector<int> sprev = chain.space->state_ids(i - 1);
    std::vector<int> loc = chain.space->local_ids(i);
    for (auto& f : chain.stages[i - 1].components) {
      std::vector<Polynomial> ds, dx;
      for (int v : sprev) ds.push_back(f.differentiate(v));
      for (int v : loc) dx.push_back(f.differentiate(v));
      dstate[i - 1].push_back(std::move(ds));
      dlocal[i - 1].push_back(std::move(dx));
    }
  }

  bool maximize = chain.sense == Sense::Maximize;
  for (int i = 1; i <= chain.n; ++i) {
    double M = chain.box_radii[i - 1];
    for (int v : chain.space->local_ids(i)) {
      auto it = x.find(v);
      x[v] = std::clamp(it == x.end() ? 0.0 : it->second, -M, M);
    }
  }

  {
    for (int t = 0; t < steps; ++t) {
      ChainEval ev = eval_chain(chain, x);
      // Full point: locals plus trajectory states.
      std::unordered_map<int, double> pt = x;
      for (int i = 1; i <= chain.n; ++i) {
        std::vector<int> sid = chain.space->state_ids(i);
        for (size_t l = 0; l < sid.size(); ++l) pt[sid[l]] = ev.trajectory[i - 1][l];
      }
      // Reverse sweep: lambda_i over components of stage i.
      std::unordered_map<int, double> grad;
      std::vector<double> lam = {1.0};
      for (int i = chain.n; i >= 1; --i) {
        std::vector<int> loc = chain.space->local_ids(i);
        int ncomp = static_cast<int>(chain.stages[i - 1].components.size());
        for (size_t j = 0; j < loc.size(); ++j) {
          double gsum = 0.0;
          for (int l = 0; l < ncomp; ++l) gsum += lam[l] * dlocal[i - 1][l][j].evaluate(pt);
          grad[loc[j]] += gsum;
        }
        if (i > 1) {
          int nprev = chain.rank(i - 1);
          std::vector<double> lam_prev(nprev, 0.0);
          for (int m = 0; m < nprev; ++m)
            for (int l = 0; l < ncomp; ++l) lam_prev[m] += lam[l] * dstate[i - 1][l][m].evaluate(pt);
          lam = std::move(lam_prev);
        }
      }
      double gmax = 0.0;
      for (auto& [v, gv] : grad) gmax = std::max(gmax, std::abs(gv));
      if (gmax == 0.0) break;

      // Backtracking line search: start with a full-box move along the
      // (box-scaled) gradient and halve until the objective improves.
      bool improved = false;
      for (double alpha = 1.0 / gmax; alpha > 1e-12 / gmax; alpha *= 0.5) {
        std::unordered_map<int, double> xn = x;
        for (int i = 1; i <= chain.n; ++i) {
          double M = chain.box_radii[i - 1];
          for (int v : chain.space->local_ids(i)) {
            double step = alpha * M * grad[v];
            double nv = maximize ? x[v] + step : x[v] - step;
            xn[v] = std::clamp(nv, -M, M);
          }
        }
        double val = eval_chain(chain, xn).value;
        if (maximize ? val > ev.value : val < ev.value) {
          x = std::move(xn);
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
  }
  ProjGradResult r;
  r.point = std::move(x);
  r.value = eval_chain(chain, r.point).value;
  return r;
}

ProjGradResult projected_gradient(const CompositionChain& chain, uint64_t seed, int steps,
                                  int starts) {
  GaussianStream g(seed);
  bool maximize = chain.sense == Sense::Maximize;
  ProjGradResult best;
  bool have_best = false;
  for (int s = 0; s < starts; ++s) {
    std::unordered_map<int, double> x0;
    for (int i = 1; i <= chain.n; ++i)
      for (int v : chain.space->local_ids(i))
        x0[v] = chain.box_radii[i - 1] * (2.0 * g.uniform() - 1.0);
    ProjGradResult r = projected_gradient_from(chain, std::move(x0), steps);
    if (!have_best || (maximize ? r.value > best.value : r.value < best.value)) {
      best = std::move(r);
      have_best = true;
    }
  }
  return best;
}

}  // namespace statelift
