#pragma once

#include <string>

#include "statelift/conic.hpp"

namespace statelift {

/// Sparse SDPA (".dat-s") writer.
///
/// The program  min c'y, Ay = b, C + sum_j y_j A_j psd  is exported in
/// LMI image form: x = y, objective vector c, F_j = A_j, F_0 = -C. The
/// equality rows become one extra diagonal block of size 2*neq holding
/// the paired rows  (a_i'y - b_i, b_i - a_i'y)  so the feasible set is
/// unchanged. Structured comment lines (`*c0`, `*eqblock`, `*blk`) let
/// the internal parser reconstruct the original program exactly; foreign
/// readers can ignore them.
std::string export_sdpa(const ConicProgram& p);
void write_sdpa_file(const ConicProgram& p, const std::string& path);

/// Parse a .dat-s document back into a ConicProgram. Files written by
/// export_sdpa round-trip (including equality rows and the objective
/// constant); foreign files load with every block kept as a PSD block.
ConicProgram import_sdpa(const std::string& text);
ConicProgram read_sdpa_file(const std::string& path);

}  // namespace statelift
