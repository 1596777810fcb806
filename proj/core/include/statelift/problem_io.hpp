#pragma once

#include <iosfwd>
#include <string>

#include "statelift/chain.hpp"

namespace statelift {

/// Chain problem file format (JSON). Fields: n, ranks, local_widths,
/// stages[i].F, stages[i].constraints, box_radii, optional state_radii,
/// objective_sense. Polynomials are term lists {exponents, coeff} with
/// exponent keys named "x[i][j]" / "s[i][l]" (1-based).
std::string write_problem(const CompositionChain& chain);
CompositionChain read_problem(const std::string& json_text);

CompositionChain read_problem_file(const std::string& path);
void write_problem_file(const CompositionChain& chain, const std::string& path);

}  // namespace statelift
