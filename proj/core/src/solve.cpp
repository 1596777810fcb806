#include "statelift/solve.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "statelift/sdpa.hpp"

namespace statelift {

namespace fs = std::filesystem;

std::vector<Eigen::MatrixXd> block_values(const ConicProgram& p, const std::vector<double>& y) {
  std::vector<Eigen::MatrixXd> out;
  for (auto& b : p.blocks()) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(b.dim, b.dim);
    for (auto& e : b.entries) {
      double v = e.var < 0 ? e.coeff : e.coeff * y.at(e.var);
      m(e.row, e.col) += v;
      if (e.row != e.col) m(e.col, e.row) += v;
    }
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

SolveStatus status_from_phase(const std::string& phase) {
  if (phase == "pdOPT") return SolveStatus::Optimal;
  if (phase == "pdFEAS") return SolveStatus::NearOptimal;
  if (phase == "pINF_dFEAS" || phase == "pINF") return SolveStatus::Infeasible;
  if (phase == "pFEAS_dINF" || phase == "dINF" || phase == "pUNBD")
    return SolveStatus::Unbounded;
  return SolveStatus::Stall;
}

SolveResult solve_external(const ConicProgram& p, const SolveOptions& opts,
                           const std::string& command) {
  SolveResult res;
  res.status = SolveStatus::Stall;
  std::mt19937_64 rng(std::random_device{}());
  fs::path dir = fs::temp_directory_path() / ("statelift-" + std::to_string(rng()));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return res;
  fs::path in_path = dir / "problem.dat-s";
  fs::path out_path = dir / "result.out";
  try {
    write_sdpa_file(p, in_path.string());
    std::string cmd = command + " '" + in_path.string() + "' '" + out_path.string() + "'";
    if (std::system(cmd.c_str()) != 0) {
      fs::remove_all(dir, ec);
      return res;
    }
    std::ifstream in(out_path);
    if (!in) {
      fs::remove_all(dir, ec);
      return res;
    }
    std::string phase;
    double obj = 0.0;
    std::vector<double> x;
    std::string line;
    while (std::getline(in, line)) {
      auto eq = line.find('=');
      if (line.find("phase.value") != std::string::npos && eq != std::string::npos) {
        std::istringstream(line.substr(eq + 1)) >> phase;
      } else if (line.find("objValPrimal") != std::string::npos && eq != std::string::npos) {
        std::istringstream(line.substr(eq + 1)) >> obj;
      } else if (line.find("xVec") != std::string::npos && eq != std::string::npos) {
        // values in {...}, possibly spanning lines
        std::string body = line.substr(eq + 1);
        while (body.find('}') == std::string::npos && std::getline(in, line)) body += line;
        for (char& ch : body)
          if (ch == '{' || ch == '}' || ch == ',') ch = ' ';
        std::istringstream vs(body);
        double v;
        while (vs >> v) x.push_back(v);
      }
    }
    fs::remove_all(dir, ec);
    if (static_cast<size_t>(p.num_vars()) != x.size()) return res;
    res.status = status_from_phase(phase);
    res.y = std::move(x);
    res.objective = obj + p.objective_constant();
    res.dual_objective = res.objective;  // external backends report one value
    res.block_matrices = block_values(p, res.y);
    double rp = 0.0;
    for (auto& row : p.rows()) {
      double v = -row.rhs;
      for (auto& [var, a] : row.coeffs) v += a * res.y[var];
      rp = std::max(rp, std::abs(v));
    }
    res.primal_infeas = rp;
    res.rel_gap = opts.tol;
    res.eq_duals.assign(p.rows().size(), 0.0);
    return res;
  } catch (const std::exception&) {
    fs::remove_all(dir, ec);
    res.status = SolveStatus::Stall;
    return res;
  }
}

}  // namespace

SolveResult solve(const ConicProgram& p, SolveOptions opts) {
  if (const char* t = std::getenv("STATELIFT_TOL")) {
    char* end = nullptr;
    double v = std::strtod(t, &end);
    if (end != t && v > 0) opts.tol = v;
  }
  std::string backend = "ipm";
  if (const char* s = std::getenv("STATELIFT_SOLVER")) backend = s;
  if (backend.empty() || backend == "ipm") {
    try {
      return solve_ipm(p, opts);
    } catch (const std::exception&) {
      SolveResult r;
      r.status = SolveStatus::Stall;
      return r;
    }
  }
  if (backend.rfind("sdpa:", 0) == 0) return solve_external(p, opts, backend.substr(5));
  SolveResult r;
  r.status = SolveStatus::Stall;
  return r;
}

}  // namespace statelift
