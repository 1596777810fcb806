#pragma once

#include "statelift/moments.hpp"
#include "statelift/sparsity.hpp"

namespace statelift {

/// Per-clique truncated moment sequences y^(i).
using CliqueMomentLayout = std::vector<MomentLayout>;

struct ChordAssembly {
  ConicProgram program;
  CliqueMomentLayout cliques;
  int objective_clique = -1;
  bool negated = false;
  int separator_rows = 0;  // overlap equalities kept
  int lifting_rows = 0;    // L(q h) = 0 rows kept
};

struct ChordCounts {
  long long block_size = 0;
  long long overlap_eqs = 0;
  long long lifting_eqs = 0;
};

/// Clique-based moment relaxation at order k: per-clique moment block
/// and localizers, lifting equalities L(q h) = 0, per-edge separator
/// equalities (all separator monomials up to 2k), normalizations, and the
/// objective read on the last clique containing its variable. With
/// share_moments the separator moments alias one scalar variable instead
/// of being equated by rows.
ChordAssembly assemble_chord(const LiftedPOP& pop, const CliqueDecomposition& dec, int k,
                             bool share_moments = false);

/// Uniform-rank formulas: (C(2r+1+k,k), (n-1) C(r+2k,2k),
/// n r C(2r+1+2k-d, 2k-d)).
ChordCounts predicted_chord_counts(int r, int k, int d, int n);

}  // namespace statelift
