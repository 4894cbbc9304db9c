#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace crowddet {

/// Dense row-major map at feature resolution, optionally multi-channel
/// (channel-last layout). Cell (x, y) addresses column x of row y.
template <typename T>
class GridT {
  public:
    GridT() = default;
    GridT(int rows, int cols, int channels = 1, T fill = T{})
        : rows_(rows), cols_(cols), channels_(channels),
          v_(static_cast<std::size_t>(rows) * cols * channels, fill) {
        assert(rows >= 0 && cols >= 0 && channels >= 1);
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int channels() const { return channels_; }
    bool empty() const { return v_.empty(); }

    T& at(int row, int col, int ch = 0) {
        assert(row >= 0 && row < rows_ && col >= 0 && col < cols_ && ch >= 0 && ch < channels_);
        return v_[(static_cast<std::size_t>(row) * cols_ + col) * channels_ + ch];
    }
    const T& at(int row, int col, int ch = 0) const {
        assert(row >= 0 && row < rows_ && col >= 0 && col < cols_ && ch >= 0 && ch < channels_);
        return v_[(static_cast<std::size_t>(row) * cols_ + col) * channels_ + ch];
    }

    bool same_shape(int rows, int cols, int channels = 1) const {
        return rows_ == rows && cols_ == cols && channels_ == channels;
    }

    std::span<const T> data() const { return v_; }
    std::span<T> data() { return v_; }

  private:
    int rows_ = 0;
    int cols_ = 0;
    int channels_ = 1;
    std::vector<T> v_;
};

using Grid = GridT<double>;
using ByteGrid = GridT<std::uint8_t>;

/// Grid-cell coordinate, x = column, y = row.
struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell&) const = default;
};

}  // namespace crowddet
