#include "bsfv/grid.hpp"

#include <algorithm>

#include "bsfv/error.hpp"

namespace bsfv {

const char* bc_name(Bc bc) {
  switch (bc) {
    case Bc::Periodic: return "periodic";
    case Bc::Wall: return "wall";
    case Bc::Symmetry: return "symmetry";
  }
  return "?";
}

void GridSpec::validate() const {
  const char* axis_names[3] = {"x", "y", "z"};
  for (int a = 0; a < 3; ++a) {
    if (n(a) < 2)
      throw ConfigError(std::string("grid: axis ") + axis_names[a] +
                        " needs at least 2 cells, got " + std::to_string(n(a)));
    if (!(len(a) > 0.0))
      throw ConfigError(std::string("grid: axis ") + axis_names[a] +
                        " length must be positive");
    const Bc plus = bc[2 * a];
    const Bc minus = bc[2 * a + 1];
    if ((plus == Bc::Periodic) != (minus == Bc::Periodic))
      throw ConfigError(std::string("grid: periodic faces on axis ") +
                        axis_names[a] + " must come in opposing pairs");
  }
}

int BlockDecomposition::slot_of_block(int id) const {
  const int rank = rank_of_block[id];
  int slot = 0;
  for (int b = 0; b < id; ++b)
    if (rank_of_block[b] == rank) ++slot;
  return slot;
}

std::vector<int> BlockDecomposition::blocks_of_rank(int rank) const {
  std::vector<int> out;
  for (int b = 0; b < num_blocks(); ++b)
    if (rank_of_block[b] == rank) out.push_back(b);
  return out;
}

BlockDecomposition decompose(const GridSpec& grid, int px, int py, int pz) {
  grid.validate();
  if (px <= 0 || py <= 0 || pz <= 0)
    throw ConfigError("decompose: block counts must be positive, got " +
                      std::to_string(px) + "x" + std::to_string(py) + "x" +
                      std::to_string(pz));
  const int p[3] = {px, py, pz};
  const char* axis_names[3] = {"x", "y", "z"};
  for (int a = 0; a < 3; ++a) {
    if (p[a] > grid.n(a))
      throw ConfigError(std::string("decompose: axis ") + axis_names[a] +
                        " has more blocks (" + std::to_string(p[a]) +
                        ") than cells (" + std::to_string(grid.n(a)) + ")");
  }

  BlockDecomposition dec;
  dec.px = px;
  dec.py = py;
  dec.pz = pz;
  dec.blocks.resize(static_cast<std::size_t>(px) * py * pz);
  for (int bz = 0; bz < pz; ++bz)
    for (int by = 0; by < py; ++by)
      for (int bx = 0; bx < px; ++bx) {
        BlockExtent ext;
        ext.coord = {bx, by, bz};
        const int bc[3] = {bx, by, bz};
        for (int a = 0; a < 3; ++a) {
          const int base = grid.n(a) / p[a];
          ext.lo[a] = bc[a] * base;
          // remainder cells go to the last block on the axis
          ext.hi[a] = (bc[a] == p[a] - 1) ? grid.n(a) - 1
                                          : ext.lo[a] + base - 1;
        }
        dec.blocks[dec.block_id(bx, by, bz)] = ext;
      }
  dec.ranks = dec.num_blocks();
  dec.rank_of_block.resize(dec.blocks.size());
  for (int b = 0; b < dec.num_blocks(); ++b) dec.rank_of_block[b] = b;
  return dec;
}

BlockDecomposition with_ranks(BlockDecomposition dec, int ranks) {
  if (ranks <= 0 || ranks > dec.num_blocks())
    throw ConfigError("rank count must be in 1.." +
                      std::to_string(dec.num_blocks()) + ", got " +
                      std::to_string(ranks));
  const int nb = dec.num_blocks();
  for (int b = 0; b < nb; ++b)
    dec.rank_of_block[b] = static_cast<int>(
        (static_cast<long long>(b) * ranks) / nb);
  dec.ranks = ranks;
  return dec;
}

}  // namespace bsfv
