#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "statelift/conic.hpp"
#include "statelift/polynomial.hpp"

namespace statelift {

/// Truncated moment sequence over a variable subset: scalar conic
/// variables for every monomial up to degree 2k, a moment block indexed
/// by the degree-k basis, and the normalization y_0 = 1.
struct MomentLayout {
  std::vector<int> vars;            // polynomial-variable ids, ascending
  int order = 0;                    // k
  std::vector<MultiIndex> moments;  // monomials up to 2k, graded-lex
  std::vector<MultiIndex> basis;    // monomials up to k (block index)
  std::map<MultiIndex, int, GrlexLess> var_of;  // monomial -> conic var
  int block = -1;

  int moment_var(const MultiIndex& m) const;  // throws if absent
};

/// Shared pool for moment variables when several layouts must alias the
/// same monomial to one scalar variable (share-moments mode).
using MomentPool = std::map<MultiIndex, int, GrlexLess>;

/// Create the scalar variables, the M_k moment block and the y_0 = 1 row.
MomentLayout make_moment_layout(ConicProgram& p, std::span<const int> vars, int k,
                                const std::string& label, MomentPool* pool = nullptr);

/// Localizing block M_{k-ceil(deg g/2)}(g y); throws if the order is too
/// small for g.
void add_localizer(ConicProgram& p, const MomentLayout& lay, const Polynomial& g,
                   const std::string& label);

/// Rows L(q e) = 0 for all monomials q over the layout variables with
/// deg(q e) <= 2k. Returns the number of rows kept after deduplication.
int add_poly_equalities(ConicProgram& p, const MomentLayout& lay, const Polynomial& e,
                        const std::string& group);

/// Record magnitude hints for the layout's moment variables: the moment
/// of a monomial over a region where |v| <= bound(v) is at most
/// prod bound(v)^exp. Keeps interior-point solvers well-scaled when
/// state bounds are far from 1.
void set_moment_scales(ConicProgram& p, const MomentLayout& lay,
                       const std::map<int, double>& bound);

/// L(f) as a sparse linear functional over the layout's moment variables.
std::vector<std::pair<int, double>> linear_functional(const MomentLayout& lay,
                                                      const Polynomial& f);

}  // namespace statelift
