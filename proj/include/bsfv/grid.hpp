#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bsfv/box.hpp"

namespace bsfv {

enum class Bc : std::uint8_t { Periodic = 0, Wall = 1, Symmetry = 2 };

const char* bc_name(Bc bc);

/// Global structured grid: interior cell counts, domain lengths, and one
/// boundary condition per face. Periodic faces must come in opposing pairs.
struct GridSpec {
  int nx = 0, ny = 0, nz = 0;
  double lx = 1.0, ly = 1.0, lz = 1.0;
  std::array<Bc, 6> bc{Bc::Periodic, Bc::Periodic, Bc::Periodic,
                       Bc::Periodic, Bc::Periodic, Bc::Periodic};

  int n(int axis) const { return axis == 0 ? nx : axis == 1 ? ny : nz; }
  double len(int axis) const { return axis == 0 ? lx : axis == 1 ? ly : lz; }
  double h(int axis) const { return len(axis) / n(axis); }
  double hx() const { return lx / nx; }
  double hy() const { return ly / ny; }
  double hz() const { return lz / nz; }
  double cell_volume() const { return hx() * hy() * hz(); }

  Bc bc_at(Face f) const { return bc[static_cast<int>(f)]; }
  bool periodic(int axis) const {
    return bc[2 * axis] == Bc::Periodic;
  }
  bool all_periodic() const {
    return periodic(0) && periodic(1) && periodic(2);
  }
  /// True when no face fixes the pressure level (periodic/wall/symmetry
  /// all impose zero-normal-gradient on the pressure system).
  bool pressure_singular() const { return true; }

  /// Throws ConfigError when counts, lengths, or periodic pairing are bad.
  void validate() const;
};

/// One block of the decomposition: global interior cell range per axis.
struct BlockExtent {
  std::array<int, 3> coord{0, 0, 0};  // block coordinates (bx,by,bz)
  std::array<int, 3> lo{0, 0, 0};     // global first interior cell, 0-based
  std::array<int, 3> hi{0, 0, 0};     // global last interior cell, inclusive
  int extent(int axis) const { return hi[axis] - lo[axis] + 1; }
  long long cells() const {
    return static_cast<long long>(extent(0)) * extent(1) * extent(2);
  }
};

/// Tiling of the grid into px*py*pz blocks plus a block -> rank map.
struct BlockDecomposition {
  int px = 1, py = 1, pz = 1;
  std::vector<BlockExtent> blocks;   // indexed by block id
  std::vector<int> rank_of_block;    // same indexing
  int ranks = 1;

  int p(int axis) const { return axis == 0 ? px : axis == 1 ? py : pz; }
  int num_blocks() const { return static_cast<int>(blocks.size()); }
  int block_id(int bx, int by, int bz) const {
    return bx + px * (by + py * bz);
  }
  const BlockExtent& block(int id) const { return blocks[id]; }
  /// Rank-local slot of a block (position among the rank's blocks).
  int slot_of_block(int id) const;
  std::vector<int> blocks_of_rank(int rank) const;
};

/// Splits the grid into px*py*pz blocks, one block per rank. Remainder
/// cells of uneven splits go to the highest-index block per axis.
BlockDecomposition decompose(const GridSpec& grid, int px, int py, int pz);

/// Reassigns blocks to `ranks` ranks in contiguous chunks.
BlockDecomposition with_ranks(BlockDecomposition dec, int ranks);

}  // namespace bsfv
