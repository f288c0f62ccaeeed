#include "bsfv/transfers.hpp"

#include <algorithm>
#include <cassert>
#include <tuple>

#include "bsfv/error.hpp"

namespace bsfv {

namespace {

// Block coordinate of the neighbor one step along `axis`; returns false
// when the step leaves the grid on a non-periodic axis.
bool neighbor_coord(const BlockDecomposition& dec, const GridSpec& grid,
                    std::array<int, 3> from, int axis, int sign,
                    std::array<int, 3>& out) {
  out = from;
  out[axis] += sign;
  if (out[axis] < 0 || out[axis] >= dec.p(axis)) {
    if (!grid.periodic(axis)) return false;
    out[axis] = (out[axis] + dec.p(axis)) % dec.p(axis);
  }
  return true;
}

Box dst_ghost_box(const BlockExtent& dst, const std::array<int, 3>& d) {
  Box b;
  for (int a = 0; a < 3; ++a) {
    const int n = dst.extent(a);
    if (d[a] > 0) {
      b.lo[a] = b.hi[a] = n + 1;
    } else if (d[a] < 0) {
      b.lo[a] = b.hi[a] = 0;
    } else {
      b.lo[a] = 1;
      b.hi[a] = n;
    }
  }
  return b;
}

}  // namespace

std::vector<Transfer> build_transfers(const BlockDecomposition& dec,
                                      const GridSpec& grid) {
  std::vector<Transfer> out;

  for (int dst = 0; dst < dec.num_blocks(); ++dst) {
    const BlockExtent& X = dec.block(dst);

    // Face transfers into each ghost plane of X.
    for (int a = 0; a < 3; ++a) {
      for (int sign : {+1, -1}) {
        std::array<int, 3> nb{};
        if (!neighbor_coord(dec, grid, X.coord, a, sign, nb)) continue;
        const int src = dec.block_id(nb[0], nb[1], nb[2]);
        const BlockExtent& N = dec.block(src);

        Transfer t;
        t.src_block = src;
        t.dst_block = dst;
        t.kind = PatchKind::Face;
        t.offset = {0, 0, 0};
        t.offset[a] = sign;
        t.dst_face = face_of(a, sign);
        t.src_face = opposite(t.dst_face);
        t.dst_box = dst_ghost_box(X, t.offset);
        for (int b = 0; b < 3; ++b) {
          if (b == a) {
            // interior plane adjacent to the source face toward X
            const int n = N.extent(b);
            t.src_box.lo[b] = t.src_box.hi[b] = (sign > 0) ? 1 : n;
          } else {
            t.src_box.lo[b] = 1;
            t.src_box.hi[b] = N.extent(b);
          }
        }
        assert(t.src_box.cells() == t.dst_box.cells());
        out.push_back(t);
      }
    }

    // Edge and corner transfers: forwarded face-ghost rims of a feeder
    // neighbor. The feeder sits at the ghost offset with its last nonzero
    // axis dropped; that axis selects the rim plane on the feeder.
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const std::array<int, 3> d{dx, dy, dz};
          int nonzero = 0;
          for (int a = 0; a < 3; ++a) nonzero += (d[a] != 0);
          if (nonzero < 2) continue;

          bool ok = true;
          std::array<int, 3> coord = X.coord;
          int rim_axis = -1;
          for (int a = 0; a < 3; ++a) {
            if (d[a] == 0) continue;
            std::array<int, 3> step{};
            if (!neighbor_coord(dec, grid, coord, a, d[a], step)) {
              ok = false;
              break;
            }
            rim_axis = a;  // last nonzero axis ends up here
          }
          if (!ok) continue;

          // feeder = X offset by d with the rim axis dropped
          coord = X.coord;
          for (int a = 0; a < 3; ++a) {
            if (a == rim_axis || d[a] == 0) continue;
            std::array<int, 3> step{};
            const bool exists = neighbor_coord(dec, grid, coord, a, d[a], step);
            assert(exists);
            (void)exists;
            coord = step;
          }
          const int src = dec.block_id(coord[0], coord[1], coord[2]);
          const BlockExtent& F = dec.block(src);

          Transfer t;
          t.src_block = src;
          t.dst_block = dst;
          t.kind = (nonzero == 2) ? PatchKind::Edge : PatchKind::Corner;
          t.offset = d;
          t.src_face = face_of(rim_axis, d[rim_axis]);
          t.dst_face = t.src_face;
          t.dst_box = dst_ghost_box(X, d);
          for (int a = 0; a < 3; ++a) {
            const int n = F.extent(a);
            if (a == rim_axis) {
              const int g = (d[a] > 0) ? n + 1 : 0;
              t.src_box.lo[a] = t.src_box.hi[a] = g;
            } else if (d[a] != 0) {
              // interior cell adjacent to the face toward X
              t.src_box.lo[a] = t.src_box.hi[a] = (d[a] > 0) ? 1 : n;
            } else {
              t.src_box.lo[a] = 1;
              t.src_box.hi[a] = n;
            }
          }
          assert(t.src_box.cells() == t.dst_box.cells());
          out.push_back(t);
        }
  }

  // Canonical global order. Faces form phase 0 and diagonals phase 1 so a
  // sequential walk refreshes every rim before diagonal transfers read it;
  // sorting by rank pair inside a phase gives every rank a schedule that
  // is the restriction of one global total order, which rules out
  // rendezvous wait cycles.
  auto key = [&](const Transfer& t) {
    const int ra = dec.rank_of_block[t.src_block];
    const int rb = dec.rank_of_block[t.dst_block];
    return std::tuple(t.kind == PatchKind::Face ? 0 : 1, std::min(ra, rb),
                      std::max(ra, rb), t.src_block, t.dst_block,
                      static_cast<int>(t.kind), t.offset[0], t.offset[1],
                      t.offset[2], t.src_box.lo[2], t.src_box.lo[1],
                      t.src_box.lo[0]);
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const Transfer& a, const Transfer& b) {
                     return key(a) < key(b);
                   });
  return out;
}

TransferEntry send_entry_of(const Transfer& t, const BlockDecomposition& dec) {
  TransferEntry e;
  e.dir = Direction::Send;
  e.kind = t.kind;
  e.face = t.src_face;
  e.peer_rank = static_cast<std::uint32_t>(dec.rank_of_block[t.dst_block]);
  e.owner_block = static_cast<std::uint32_t>(t.src_block);
  e.neighbor_block = static_cast<std::uint32_t>(t.dst_block);
  e.bounds = t.src_box;
  return e;
}

TransferEntry recv_entry_of(const Transfer& t, const BlockDecomposition& dec) {
  TransferEntry e;
  e.dir = Direction::Recv;
  e.kind = t.kind;
  e.face = t.dst_face;
  e.peer_rank = static_cast<std::uint32_t>(dec.rank_of_block[t.src_block]);
  e.owner_block = static_cast<std::uint32_t>(t.dst_block);
  e.neighbor_block = static_cast<std::uint32_t>(t.src_block);
  e.bounds = t.dst_box;
  return e;
}

TransferEntry local_entry_of(const Transfer& t, const BlockDecomposition& dec) {
  TransferEntry e;
  e.dir = Direction::Local;
  e.kind = t.kind;
  e.face = t.src_face;
  e.peer_rank = static_cast<std::uint32_t>(dec.rank_of_block[t.src_block]);
  e.owner_block = static_cast<std::uint32_t>(t.src_block);
  e.neighbor_block = static_cast<std::uint32_t>(t.dst_block);
  e.bounds = t.src_box;
  return e;
}

}  // namespace bsfv
