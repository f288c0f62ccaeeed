#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bsfv/box.hpp"
#include "bsfv/grid.hpp"

namespace bsfv {

/// One transfer-table entry, mirroring the 40-byte file layout.
/// For send/local entries `bounds` is the source range on the owner block;
/// for recv entries it is the ghost destination range on the owner block.
/// Diagonal (edge/corner) sources may include owner ghost indices: they
/// forward the owner's face-ghost rim toward the diagonal neighbor.
struct TransferEntry {
  Direction dir = Direction::Local;
  PatchKind kind = PatchKind::Face;
  Face face = Face::E;  // transfer axis as seen from the owner block
  std::uint32_t peer_rank = 0;
  std::uint32_t owner_block = 0;
  std::uint32_t neighbor_block = 0;
  Box bounds;

  bool operator==(const TransferEntry&) const = default;
};

using TransferTable = std::vector<TransferEntry>;

/// Per-rank transfer tables for one decomposition.
struct TableSet {
  std::vector<TransferTable> per_rank;
  int ranks() const { return static_cast<int>(per_rank.size()); }
  bool operator==(const TableSet&) const = default;
};

/// A transfer table partitioned into local copies, remote sends, and
/// remote receives. Entry order within each list preserves table order.
struct SplitTables {
  TransferTable locals;
  TransferTable sends;
  TransferTable recvs;
};

SplitTables split_tables(const TransferTable& table);

/// Builds the per-rank tables in canonical execution order: all face
/// patches first, then edge/corner patches, each phase sorted by rank
/// pair so that the blocking per-entry walk cannot deadlock.
TableSet build_transfer_tables(const BlockDecomposition& dec,
                               const GridSpec& grid);

/// Binary file format (little-endian):
///   magic "FTT1" | version u32 = 1 | rank count u32 | reserved u32 = 0
///   per rank: entry count u32, then 40-byte entries:
///     dir u8 | kind u8 | face u8 | pad u8 | peer u32 | owner u32 |
///     neighbor u32 | bounds i32[6] (ilo,ihi,jlo,jhi,klo,khi)
void write_tables(const TableSet& tables, const std::string& path);
TableSet read_tables(const std::string& path);

void write_tables(const TableSet& tables, std::ostream& os);
TableSet read_tables(std::istream& is);

/// Human-readable dump plus validation of the send/recv matching
/// invariants; throws ProtocolError on an orphan entry.
std::string describe_tables(const TableSet& tables);
void validate_matching(const TableSet& tables);

}  // namespace bsfv
