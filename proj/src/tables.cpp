#include "bsfv/tables.hpp"

#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "bsfv/error.hpp"
#include "bsfv/transfers.hpp"

namespace bsfv {

SplitTables split_tables(const TransferTable& table) {
  SplitTables s;
  for (const TransferEntry& e : table) {
    switch (e.dir) {
      case Direction::Local: s.locals.push_back(e); break;
      case Direction::Send: s.sends.push_back(e); break;
      case Direction::Recv: s.recvs.push_back(e); break;
    }
  }
  return s;
}

TableSet build_transfer_tables(const BlockDecomposition& dec,
                               const GridSpec& grid) {
  TableSet set;
  set.per_rank.resize(dec.ranks);
  for (const Transfer& t : build_transfers(dec, grid)) {
    const int rs = dec.rank_of_block[t.src_block];
    const int rd = dec.rank_of_block[t.dst_block];
    if (rs == rd) {
      set.per_rank[rs].push_back(local_entry_of(t, dec));
    } else {
      set.per_rank[rs].push_back(send_entry_of(t, dec));
      set.per_rank[rd].push_back(recv_entry_of(t, dec));
    }
  }
  return set;
}

namespace {

constexpr char kMagic[4] = {'F', 'T', 'T', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kEntryBytes = 40;

void put_u32(std::string& buf, std::uint32_t v) {
  buf.push_back(static_cast<char>(v & 0xff));
  buf.push_back(static_cast<char>((v >> 8) & 0xff));
  buf.push_back(static_cast<char>((v >> 16) & 0xff));
  buf.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_i32(std::string& buf, std::int32_t v) {
  put_u32(buf, static_cast<std::uint32_t>(v));
}

class Reader {
 public:
  explicit Reader(std::istream& is) : is_(is) {}

  std::size_t offset() const { return off_; }

  std::uint8_t u8(const char* what) {
    char c;
    if (!is_.get(c)) fail(what);
    ++off_;
    return static_cast<std::uint8_t>(c);
  }
  std::uint32_t u32(const char* what) {
    unsigned char b[4];
    if (!is_.read(reinterpret_cast<char*>(b), 4)) fail(what);
    off_ += 4;
    return static_cast<std::uint32_t>(b[0]) |
           (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  }
  std::int32_t i32(const char* what) {
    return static_cast<std::int32_t>(u32(what));
  }
  [[noreturn]] void fail(const char* what) {
    throw FormatError(std::string("transfer table file truncated reading ") +
                          what,
                      off_);
  }

 private:
  std::istream& is_;
  std::size_t off_ = 0;
};

}  // namespace

void write_tables(const TableSet& tables, std::ostream& os) {
  std::string buf;
  buf.append(kMagic, 4);
  put_u32(buf, kVersion);
  put_u32(buf, static_cast<std::uint32_t>(tables.ranks()));
  put_u32(buf, 0);  // reserved
  for (const TransferTable& table : tables.per_rank) {
    put_u32(buf, static_cast<std::uint32_t>(table.size()));
    for (const TransferEntry& e : table) {
      buf.push_back(static_cast<char>(e.dir));
      buf.push_back(static_cast<char>(e.kind));
      buf.push_back(static_cast<char>(e.face));
      buf.push_back(0);  // pad
      put_u32(buf, e.peer_rank);
      put_u32(buf, e.owner_block);
      put_u32(buf, e.neighbor_block);
      for (int a = 0; a < 3; ++a) {
        put_i32(buf, e.bounds.lo[a]);
        put_i32(buf, e.bounds.hi[a]);
      }
    }
  }
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!os) throw Error("transfer table write failed");
}

void write_tables(const TableSet& tables, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot open for writing: " + path);
  write_tables(tables, os);
}

TableSet read_tables(std::istream& is) {
  Reader r(is);
  char magic[4];
  for (int i = 0; i < 4; ++i) magic[i] = static_cast<char>(r.u8("magic"));
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw FormatError("bad magic, expected \"FTT1\"", 0);
  const std::uint32_t version = r.u32("version");
  if (version != kVersion)
    throw FormatError("unsupported format version " + std::to_string(version),
                      4);
  const std::uint32_t ranks = r.u32("rank count");
  r.u32("reserved");

  TableSet set;
  set.per_rank.resize(ranks);
  for (std::uint32_t rank = 0; rank < ranks; ++rank) {
    const std::uint32_t count = r.u32("entry count");
    TransferTable& table = set.per_rank[rank];
    table.reserve(count);
    for (std::uint32_t n = 0; n < count; ++n) {
      const std::size_t entry_off = r.offset();
      TransferEntry e;
      const std::uint8_t dir = r.u8("direction");
      const std::uint8_t kind = r.u8("kind");
      const std::uint8_t face = r.u8("face id");
      r.u8("pad");
      if (dir > 2)
        throw FormatError("invalid direction " + std::to_string(dir),
                          entry_off);
      if (kind > 2)
        throw FormatError("invalid patch kind " + std::to_string(kind),
                          entry_off + 1);
      if (face > 5)
        throw FormatError("invalid face id " + std::to_string(face),
                          entry_off + 2);
      e.dir = static_cast<Direction>(dir);
      e.kind = static_cast<PatchKind>(kind);
      e.face = static_cast<Face>(face);
      e.peer_rank = r.u32("peer rank");
      e.owner_block = r.u32("owner block");
      e.neighbor_block = r.u32("neighbor block");
      for (int a = 0; a < 3; ++a) {
        e.bounds.lo[a] = r.i32("bounds");
        e.bounds.hi[a] = r.i32("bounds");
      }
      table.push_back(e);
    }
  }
  return set;
}

TableSet read_tables(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open for reading: " + path);
  return read_tables(is);
}

void validate_matching(const TableSet& tables) {
  // k-th send from A to B must pair with the k-th recv on B from A.
  std::map<std::pair<int, int>, std::vector<const TransferEntry*>> sends;
  std::map<std::pair<int, int>, std::vector<const TransferEntry*>> recvs;
  for (int rank = 0; rank < tables.ranks(); ++rank) {
    for (const TransferEntry& e : tables.per_rank[rank]) {
      if (e.dir == Direction::Send) {
        if (static_cast<int>(e.peer_rank) == rank)
          throw ProtocolError("rank " + std::to_string(rank) +
                              " has a send entry targeting itself");
        sends[{rank, static_cast<int>(e.peer_rank)}].push_back(&e);
      } else if (e.dir == Direction::Recv) {
        recvs[{static_cast<int>(e.peer_rank), rank}].push_back(&e);
      } else {
        if (static_cast<int>(e.peer_rank) != rank)
          throw ProtocolError("rank " + std::to_string(rank) +
                              " has a local entry with peer " +
                              std::to_string(e.peer_rank));
      }
    }
  }
  for (const auto& [pair, ss] : sends) {
    const auto it = recvs.find(pair);
    const std::size_t nr = (it == recvs.end()) ? 0 : it->second.size();
    if (nr != ss.size())
      throw ProtocolError("pair " + std::to_string(pair.first) + "->" +
                          std::to_string(pair.second) + " has " +
                          std::to_string(ss.size()) + " sends but " +
                          std::to_string(nr) + " recvs");
    for (std::size_t k = 0; k < ss.size(); ++k) {
      const TransferEntry& s = *ss[k];
      const TransferEntry& r = *it->second[k];
      if (s.kind != r.kind || s.owner_block != r.neighbor_block ||
          s.neighbor_block != r.owner_block ||
          s.bounds.cells() != r.bounds.cells())
        throw ProtocolError(
            "pair " + std::to_string(pair.first) + "->" +
            std::to_string(pair.second) + " entry " + std::to_string(k) +
            " mismatched: send " + s.bounds.str() + " blocks " +
            std::to_string(s.owner_block) + "/" +
            std::to_string(s.neighbor_block) + " vs recv " + r.bounds.str());
    }
  }
  for (const auto& [pair, rr] : recvs) {
    if (sends.find(pair) == sends.end())
      throw ProtocolError("pair " + std::to_string(pair.first) + "->" +
                          std::to_string(pair.second) + " has " +
                          std::to_string(rr.size()) +
                          " recvs with no matching sends");
  }
}

std::string describe_tables(const TableSet& tables) {
  static const char* dir_names[3] = {"local", "send ", "recv "};
  static const char* kind_names[3] = {"face", "edge", "corner"};
  std::ostringstream os;
  os << "ranks: " << tables.ranks() << "\n";
  for (int rank = 0; rank < tables.ranks(); ++rank) {
    const TransferTable& t = tables.per_rank[rank];
    os << "rank " << rank << ": " << t.size() << " entries\n";
    for (std::size_t n = 0; n < t.size(); ++n) {
      const TransferEntry& e = t[n];
      os << "  [" << n << "] " << dir_names[static_cast<int>(e.dir)] << " "
         << kind_names[static_cast<int>(e.kind)] << " face "
         << face_name(e.face) << " peer " << e.peer_rank << " blocks "
         << e.owner_block << "->" << e.neighbor_block << " bounds "
         << e.bounds.str() << "\n";
    }
  }
  return os.str();
}

}  // namespace bsfv
