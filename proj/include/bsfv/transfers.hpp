#pragma once

#include <array>
#include <vector>

#include "bsfv/box.hpp"
#include "bsfv/grid.hpp"
#include "bsfv/tables.hpp"

namespace bsfv {

/// One resolved block-boundary data movement. Face transfers move a
/// one-cell-deep interior plane of the source block into the matching
/// ghost plane of the destination block. Edge/corner transfers forward a
/// face-ghost rim of a neighboring "feeder" block into the destination's
/// edge/corner ghosts; their source boxes therefore lie in the feeder's
/// ghost shell, which is what makes those ghosts one exchange stale under
/// the non-blocking strategy.
struct Transfer {
  int src_block = 0;
  int dst_block = 0;
  Box src_box;  // src-block-local indices (may touch the ghost shell)
  Box dst_box;  // dst-block-local ghost indices
  PatchKind kind = PatchKind::Face;
  Face src_face = Face::E;  // plane/rim orientation on the source block
  Face dst_face = Face::E;  // ghost face (faces) or arriving rim (diagonals)
  std::array<int, 3> offset{0, 0, 0};  // dst-to-src ghost offset vector
};

/// Enumerates every face, edge, and corner transfer of the decomposition
/// in canonical order: faces first, then diagonals, each phase sorted by
/// rank pair. Every rank walking its own entries in this order keeps the
/// blocking exchange deadlock-free and refreshes face-ghost rims before
/// any diagonal transfer reads them.
std::vector<Transfer> build_transfers(const BlockDecomposition& dec,
                                      const GridSpec& grid);

/// Converts a transfer into the entry (or entry pair) it contributes.
TransferEntry send_entry_of(const Transfer& t, const BlockDecomposition& dec);
TransferEntry recv_entry_of(const Transfer& t, const BlockDecomposition& dec);
TransferEntry local_entry_of(const Transfer& t, const BlockDecomposition& dec);

}  // namespace bsfv
