#pragma once

#include <cstdint>
#include <vector>

#include "bsfv/box.hpp"

namespace bsfv {

enum class Precision : std::uint8_t { Double = 0, Single = 1 };

/// Per-ghost-region data generation, advanced by the exchange layer.
struct GhostGen {
  std::uint64_t face = 0;
  std::uint64_t edge = 0;
  std::uint64_t corner = 0;
};

/// Block-local 3D array with one ghost layer on each side.
/// Interior indices run 1..n per axis; 0 and n+1 are ghosts.
template <typename T>
class Field3 {
 public:
  Field3() = default;
  Field3(int nx, int ny, int nz, T init = T{})
      : nx_(nx), ny_(ny), nz_(nz),
        data_(static_cast<std::size_t>(nx + 2) * (ny + 2) * (nz + 2), init) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  long long interior_cells() const {
    return static_cast<long long>(nx_) * ny_ * nz_;
  }
  static constexpr Precision precision() {
    return sizeof(T) == 8 ? Precision::Double : Precision::Single;
  }

  std::size_t idx(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(nx_ + 2) *
               (static_cast<std::size_t>(j) +
                static_cast<std::size_t>(ny_ + 2) * static_cast<std::size_t>(k));
  }
  T& operator()(int i, int j, int k) { return data_[idx(i, j, k)]; }
  const T& operator()(int i, int j, int k) const { return data_[idx(i, j, k)]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  Box interior() const { return Box{{1, 1, 1}, {nx_, ny_, nz_}}; }
  /// Whole array including ghosts.
  Box extended() const { return Box{{0, 0, 0}, {nx_ + 1, ny_ + 1, nz_ + 1}}; }

  void fill(T v) { data_.assign(data_.size(), v); }

  GhostGen& gen() { return gen_; }
  const GhostGen& gen() const { return gen_; }

  template <typename U>
  Field3<U> cast() const {
    Field3<U> out(nx_, ny_, nz_);
    for (std::size_t n = 0; n < data_.size(); ++n)
      out.data()[n] = static_cast<U>(data_[n]);
    out.gen() = gen_;
    return out;
  }

 private:
  int nx_ = 0, ny_ = 0, nz_ = 0;
  std::vector<T> data_;
  GhostGen gen_;
};

using FieldD = Field3<double>;
using FieldS = Field3<float>;

}  // namespace bsfv
