#pragma once

#include "frtc/types.hpp"

namespace frtc {

/// The four half-resolution subbands of a single-level 2-D Haar analysis.
struct SubbandSet {
    CMatrix ll, lh, hl, hh;

    Index parent_rows() const { return 2 * ll.rows(); }
    Index parent_cols() const { return 2 * ll.cols(); }
};

/// Orthonormal blockwise Haar analysis on non-overlapping 2x2 blocks
/// [[a,b],[c,d]]:
///   ll = (a+b+c+d)/2, lh = (a-b+c-d)/2, hl = (a+b-c-d)/2, hh = (a-b-c+d)/2
/// Requires even dimensions >= 2; odd inputs are rejected, not padded.
SubbandSet dwt2_haar(const CMatrix& channel);

/// Exact inverse of dwt2_haar. Throws DimensionError when the subbands
/// disagree in shape.
CMatrix idwt2_haar(const SubbandSet& subbands);

}  // namespace frtc
