#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace bsfv {

/// Block face, in file-format id order. E/W span x, N/S span y, T/B span z.
enum class Face : std::uint8_t { E = 0, W = 1, N = 2, S = 3, T = 4, B = 5 };

inline constexpr int face_axis(Face f) { return static_cast<int>(f) / 2; }
inline constexpr int face_sign(Face f) {
  return static_cast<int>(f) % 2 == 0 ? +1 : -1;
}
inline constexpr Face opposite(Face f) {
  return static_cast<Face>(static_cast<int>(f) ^ 1);
}
inline Face face_of(int axis, int sign) {
  return static_cast<Face>(2 * axis + (sign > 0 ? 0 : 1));
}
inline const char* face_name(Face f) {
  static const char* names[6] = {"E", "W", "N", "S", "T", "B"};
  return names[static_cast<int>(f)];
}

enum class PatchKind : std::uint8_t { Face = 0, Edge = 1, Corner = 2 };
enum class Direction : std::uint8_t { Local = 0, Send = 1, Recv = 2 };

/// Inclusive integer index box.
struct Box {
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{-1, -1, -1};

  int extent(int axis) const { return hi[axis] - lo[axis] + 1; }
  long long cells() const {
    long long n = 1;
    for (int a = 0; a < 3; ++a) {
      if (hi[a] < lo[a]) return 0;
      n *= extent(a);
    }
    return n;
  }
  bool operator==(const Box&) const = default;

  std::string str() const {
    std::string s = "[";
    for (int a = 0; a < 3; ++a) {
      s += std::to_string(lo[a]) + ".." + std::to_string(hi[a]);
      s += (a < 2) ? "," : "]";
    }
    return s;
  }

  /// Visits (i,j,k) in lexicographic order, i fastest.
  template <typename F>
  void for_each(F&& f) const {
    for (int k = lo[2]; k <= hi[2]; ++k)
      for (int j = lo[1]; j <= hi[1]; ++j)
        for (int i = lo[0]; i <= hi[0]; ++i) f(i, j, k);
  }
};

}  // namespace bsfv
