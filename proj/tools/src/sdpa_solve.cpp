// Minimal out-of-process SDP backend: reads a sparse SDPA file, solves it
// with the built-in interior-point method and writes an SDPA-style result
// file (phase.value, objValPrimal, objValDual, xVec). Implements the
// `STATELIFT_SOLVER=sdpa:<command> in out` contract.

#include <cstdio>
#include <fstream>

#include "statelift/sdpa.hpp"
#include "statelift/ipm.hpp"

using namespace statelift;

static const char* phase_of(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "pdOPT";
    case SolveStatus::NearOptimal: return "pdFEAS";
    case SolveStatus::Infeasible: return "pINF_dFEAS";
    case SolveStatus::Unbounded: return "pUNBD";
    default: return "noINFO";
  }
}

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: sdpa-solve <in.dat-s> <out>\n");
    return 1;
  }
  try {
    ConicProgram p = read_sdpa_file(argv[1]);
    SolveOptions opts;
    SolveResult res = solve_ipm(p, opts);
    std::ofstream out(argv[2]);
    if (!out) {
      std::fprintf(stderr, "sdpa-solve: cannot write %s\n", argv[2]);
      return 1;
    }
    out << "phase.value  = " << phase_of(res.status) << "\n";
    // Report the plain SDPA objective c'x (without any imported constant
    // offset, which the caller re-applies).
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", res.objective - p.objective_constant());
    out << "objValPrimal = " << buf << "\n";
    out << "objValDual   = " << buf << "\n";
    out << "xVec = \n{";
    for (size_t i = 0; i < res.y.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.16e", res.y[i]);
      out << (i ? "," : "") << buf;
    }
    out << "}\n";
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sdpa-solve: %s\n", e.what());
    return 1;
  }
}
