#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "bsfv/error.hpp"
#include "bsfv/grid.hpp"
#include "bsfv/tables.hpp"
#include "bsfv/transfers.hpp"

using namespace bsfv;

namespace {

GridSpec make_grid(int nx, int ny, int nz, Bc all) {
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.lx = g.ly = g.lz = 1.0;
  g.bc = {all, all, all, all, all, all};
  return g;
}

// Independent neighbor-enumeration oracle: expected number of face and
// diagonal transfers arriving at each block.
struct ExpectedCounts {
  long long faces = 0;
  long long diagonals = 0;
};

ExpectedCounts count_transfers_brute_force(const BlockDecomposition& dec,
                                           const GridSpec& grid) {
  ExpectedCounts c;
  auto steppable = [&](int coord, int axis, int sign) {
    const int to = coord + sign;
    if (to >= 0 && to < dec.p(axis)) return true;
    return grid.periodic(axis);
  };
  for (const BlockExtent& b : dec.blocks) {
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int d[3] = {dx, dy, dz};
          int nonzero = 0;
          bool ok = true;
          for (int a = 0; a < 3; ++a) {
            if (d[a] == 0) continue;
            ++nonzero;
            ok = ok && steppable(b.coord[a], a, d[a]);
          }
          if (!ok || nonzero == 0) continue;
          if (nonzero == 1)
            ++c.faces;
          else
            ++c.diagonals;
        }
  }
  return c;
}

long long count_entries(const TableSet& t, Direction dir) {
  long long n = 0;
  for (const auto& table : t.per_rank)
    for (const auto& e : table) n += (e.dir == dir);
  return n;
}

long long count_entries(const TransferTable& t, Direction dir, PatchKind kind) {
  long long n = 0;
  for (const auto& e : t) n += (e.dir == dir && e.kind == kind);
  return n;
}

}  // namespace

TEST_CASE("decompose splits evenly and routes remainders to last block") {
  GridSpec g = make_grid(64, 64, 64, Bc::Periodic);
  BlockDecomposition dec = decompose(g, 2, 2, 1);
  REQUIRE(dec.num_blocks() == 4);
  for (const BlockExtent& b : dec.blocks) {
    CHECK(b.extent(0) == 32);
    CHECK(b.extent(1) == 32);
    CHECK(b.extent(2) == 64);
  }

  GridSpec g2 = make_grid(5, 4, 4, Bc::Wall);
  BlockDecomposition dec2 = decompose(g2, 2, 1, 1);
  CHECK(dec2.block(0).extent(0) == 2);
  CHECK(dec2.block(1).extent(0) == 3);
  CHECK(dec2.block(1).extent(1) == 4);
}

TEST_CASE("decompose 4x2x2 of 64^3 tiles exactly") {
  GridSpec g = make_grid(64, 64, 64, Bc::Periodic);
  BlockDecomposition dec = decompose(g, 4, 2, 2);
  REQUIRE(dec.num_blocks() == 16);
  long long total = 0;
  for (const BlockExtent& b : dec.blocks) {
    CHECK(b.extent(0) == 16);
    CHECK(b.extent(1) == 32);
    CHECK(b.extent(2) == 32);
    total += b.cells();
  }
  CHECK(total == 64LL * 64 * 64);
}

TEST_CASE("decompose rejects invalid block counts") {
  GridSpec g = make_grid(4, 4, 4, Bc::Wall);
  CHECK_THROWS_AS(decompose(g, 0, 1, 1), ConfigError);
  CHECK_THROWS_AS(decompose(g, 5, 1, 1), ConfigError);
  CHECK_THROWS_AS(decompose(g, 1, 1, 9), ConfigError);
}

TEST_CASE("tiling completeness is exhaustive on grids up to 8^3") {
  for (int nx = 2; nx <= 8; nx += 3)
    for (int ny = 2; ny <= 8; ny += 2)
      for (int nz = 2; nz <= 8; ++nz) {
        GridSpec g = make_grid(nx, ny, nz, Bc::Wall);
        for (int px = 1; px <= nx; ++px)
          for (int py = 1; py <= ny; ++py)
            for (int pz = 1; pz <= nz; ++pz) {
              BlockDecomposition dec = decompose(g, px, py, pz);
              long long total = 0;
              for (const BlockExtent& b : dec.blocks) total += b.cells();
              REQUIRE(total == static_cast<long long>(nx) * ny * nz);
              // no overlap: blocks are disjoint by construction of the
              // per-axis partitions; spot-check adjacency bounds
              for (int bx = 1; bx < px; ++bx) {
                const BlockExtent& prev = dec.block(dec.block_id(bx - 1, 0, 0));
                const BlockExtent& cur = dec.block(dec.block_id(bx, 0, 0));
                REQUIRE(cur.lo[0] == prev.hi[0] + 1);
              }
            }
      }
}

TEST_CASE("two blocks on one rank produce only local entries") {
  GridSpec g = make_grid(8, 4, 4, Bc::Wall);
  BlockDecomposition dec = with_ranks(decompose(g, 2, 1, 1), 1);
  TableSet t = build_transfer_tables(dec, g);
  REQUIRE(t.ranks() == 1);
  CHECK(t.per_rank[0].size() > 0);
  CHECK(count_entries(t, Direction::Send) == 0);
  CHECK(count_entries(t, Direction::Recv) == 0);
}

TEST_CASE("two blocks on two ranks exchange one face pair") {
  GridSpec g = make_grid(8, 4, 4, Bc::Wall);
  g.bc[static_cast<int>(Face::N)] = Bc::Periodic;
  g.bc[static_cast<int>(Face::S)] = Bc::Periodic;
  BlockDecomposition dec = decompose(g, 2, 1, 1);
  TableSet t = build_transfer_tables(dec, g);
  REQUIRE(t.ranks() == 2);
  for (int rank = 0; rank < 2; ++rank) {
    CHECK(count_entries(t.per_rank[rank], Direction::Send, PatchKind::Face) ==
          1);
    CHECK(count_entries(t.per_rank[rank], Direction::Recv, PatchKind::Face) ==
          1);
    // periodic self-patches in y stay local
    CHECK(count_entries(t.per_rank[rank], Direction::Local, PatchKind::Face) ==
          2);
  }
  validate_matching(t);
}

TEST_CASE("2x2x1 periodic in x/y: per-rank face and diagonal counts") {
  // periodic sideways, symmetry top/bottom
  GridSpec g = make_grid(8, 8, 4, Bc::Periodic);
  g.bc[static_cast<int>(Face::T)] = Bc::Symmetry;
  g.bc[static_cast<int>(Face::B)] = Bc::Symmetry;
  BlockDecomposition dec = decompose(g, 2, 2, 1);
  TableSet t = build_transfer_tables(dec, g);
  REQUIRE(t.ranks() == 4);
  for (int rank = 0; rank < 4; ++rank) {
    const TransferTable& table = t.per_rank[rank];
    CHECK(count_entries(table, Direction::Send, PatchKind::Face) == 4);
    CHECK(count_entries(table, Direction::Recv, PatchKind::Face) == 4);
    CHECK(count_entries(table, Direction::Send, PatchKind::Edge) == 4);
    CHECK(count_entries(table, Direction::Recv, PatchKind::Edge) == 4);
    CHECK(count_entries(table, Direction::Local, PatchKind::Face) == 0);
  }
  validate_matching(t);

  // with z periodic as well, the z-crossing edges and the corners appear
  GridSpec g3 = make_grid(8, 8, 4, Bc::Periodic);
  TableSet t3 = build_transfer_tables(decompose(g3, 2, 2, 1), g3);
  for (int rank = 0; rank < 4; ++rank) {
    const TransferTable& table = t3.per_rank[rank];
    CHECK(count_entries(table, Direction::Recv, PatchKind::Edge) == 12);
    CHECK(count_entries(table, Direction::Recv, PatchKind::Corner) == 8);
    CHECK(count_entries(table, Direction::Local, PatchKind::Face) == 2);
  }
  validate_matching(t3);
}

TEST_CASE("transfer counts match brute-force neighbor enumeration") {
  std::vector<GridSpec> grids;
  grids.push_back(make_grid(6, 6, 6, Bc::Periodic));
  grids.push_back(make_grid(6, 6, 6, Bc::Wall));
  GridSpec mixed = make_grid(6, 6, 4, Bc::Wall);
  for (Face f : {Face::E, Face::W, Face::T, Face::B})
    mixed.bc[static_cast<int>(f)] = Bc::Periodic;
  grids.push_back(mixed);

  for (const GridSpec& g : grids)
    for (int px = 1; px <= 3; ++px)
      for (int py = 1; py <= 3; ++py)
        for (int pz = 1; pz <= 2; ++pz) {
          BlockDecomposition dec = decompose(g, px, py, pz);
          ExpectedCounts expect = count_transfers_brute_force(dec, g);
          std::vector<Transfer> ts = build_transfers(dec, g);
          long long faces = 0, diagonals = 0;
          for (const Transfer& t : ts) {
            REQUIRE(t.src_box.cells() == t.dst_box.cells());
            if (t.kind == PatchKind::Face)
              ++faces;
            else
              ++diagonals;
          }
          REQUIRE(faces == expect.faces);
          REQUIRE(diagonals == expect.diagonals);
          validate_matching(build_transfer_tables(dec, g));
        }
}

TEST_CASE("face phase strictly precedes the diagonal phase") {
  GridSpec g = make_grid(8, 8, 8, Bc::Periodic);
  BlockDecomposition dec = decompose(g, 2, 2, 2);
  TableSet t = build_transfer_tables(dec, g);
  for (const TransferTable& table : t.per_rank) {
    bool seen_diagonal = false;
    for (const TransferEntry& e : table) {
      if (e.kind != PatchKind::Face)
        seen_diagonal = true;
      else
        REQUIRE(!seen_diagonal);
    }
  }
}

TEST_CASE("split_tables partitions and preserves order") {
  GridSpec g = make_grid(8, 8, 4, Bc::Periodic);
  BlockDecomposition dec = decompose(g, 2, 2, 1);
  TableSet t = build_transfer_tables(dec, g);

  const TransferTable& table = t.per_rank[1];
  SplitTables s = split_tables(table);
  CHECK(s.locals.size() + s.sends.size() + s.recvs.size() == table.size());

  // stitching the three lists back by original position reproduces input
  std::size_t il = 0, is = 0, ir = 0;
  for (const TransferEntry& e : table) {
    switch (e.dir) {
      case Direction::Local: REQUIRE(e == s.locals[il++]); break;
      case Direction::Send: REQUIRE(e == s.sends[is++]); break;
      case Direction::Recv: REQUIRE(e == s.recvs[ir++]); break;
    }
  }

  TransferTable all_local(20);
  std::mt19937 rng(7);
  for (auto& e : all_local) {
    e.dir = Direction::Local;
    e.bounds.lo = {static_cast<int>(rng() % 8), 0, 0};
    e.bounds.hi = e.bounds.lo;
  }
  SplitTables s2 = split_tables(all_local);
  CHECK(s2.sends.empty());
  CHECK(s2.recvs.empty());
  CHECK(s2.locals.size() == 20);
}

TEST_CASE("table file round-trip is bit-exact") {
  GridSpec g = make_grid(8, 8, 4, Bc::Periodic);
  BlockDecomposition dec = decompose(g, 2, 2, 1);
  TableSet t = build_transfer_tables(dec, g);

  std::ostringstream os(std::ios::binary);
  write_tables(t, os);
  const std::string bytes = os.str();

  std::istringstream is(bytes, std::ios::binary);
  TableSet back = read_tables(is);
  CHECK(back == t);

  std::ostringstream os2(std::ios::binary);
  write_tables(back, os2);
  CHECK(os2.str() == bytes);
}

TEST_CASE("empty table set serializes to the 16-byte header") {
  TableSet empty;
  std::ostringstream os(std::ios::binary);
  write_tables(empty, os);
  CHECK(os.str().size() == 16);
  std::istringstream is(os.str(), std::ios::binary);
  CHECK(read_tables(is).ranks() == 0);
}

TEST_CASE("corrupted magic reports offset 0") {
  TableSet empty;
  std::ostringstream os(std::ios::binary);
  write_tables(empty, os);
  std::string bytes = os.str();
  bytes[0] = 'X';
  std::istringstream is(bytes, std::ios::binary);
  try {
    read_tables(is);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.offset() == 0);
  }
}

TEST_CASE("truncated file reports the failing offset") {
  GridSpec g = make_grid(4, 4, 4, Bc::Wall);
  BlockDecomposition dec = decompose(g, 2, 1, 1);
  std::ostringstream os(std::ios::binary);
  write_tables(build_transfer_tables(dec, g), os);
  std::string bytes = os.str();
  bytes.resize(bytes.size() - 7);
  std::istringstream is(bytes, std::ios::binary);
  try {
    read_tables(is);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    // the offset names the start of the field that could not be read
    CHECK(e.offset() >= bytes.size() - 4);
    CHECK(e.offset() <= bytes.size());
  }
}

TEST_CASE("version mismatch reports offset 4") {
  TableSet empty;
  std::ostringstream os(std::ios::binary);
  write_tables(empty, os);
  std::string bytes = os.str();
  bytes[4] = 9;
  std::istringstream is(bytes, std::ios::binary);
  try {
    read_tables(is);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("send/recv bijection holds for all decompositions up to 3x3x3") {
  for (Bc bc : {Bc::Periodic, Bc::Wall}) {
    GridSpec g = make_grid(6, 6, 6, bc);
    for (int px = 1; px <= 3; ++px)
      for (int py = 1; py <= 3; ++py)
        for (int pz = 1; pz <= 3; ++pz) {
          BlockDecomposition dec = decompose(g, px, py, pz);
          validate_matching(build_transfer_tables(dec, g));
        }
  }
}

TEST_CASE("validate_matching flags orphan entries") {
  GridSpec g = make_grid(8, 4, 4, Bc::Wall);
  BlockDecomposition dec = decompose(g, 2, 1, 1);
  TableSet t = build_transfer_tables(dec, g);
  // drop one recv to orphan the paired send
  TransferTable& table = t.per_rank[0];
  for (std::size_t n = 0; n < table.size(); ++n) {
    if (table[n].dir == Direction::Recv) {
      table.erase(table.begin() + static_cast<long>(n));
      break;
    }
  }
  CHECK_THROWS_AS(validate_matching(t), ProtocolError);
}
