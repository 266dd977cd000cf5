#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace molmem {

inline constexpr int kMnistSide = 28;

// Second-order (king-move) neighborhood offsets, row-major scan order.
inline constexpr std::array<std::pair<int, int>, 8> kKingOffsets{{
    {-1, -1}, {-1, 0}, {-1, 1},
    {0, -1},           {0, 1},
    {1, -1},  {1, 0},  {1, 1},
}};

struct Pixel {
    int row = 0;
    int col = 0;
    bool operator==(const Pixel&) const = default;
};

// Binary lattice image: 0 = black (background), 1 = white (foreground).
class BinaryImage {
public:
    BinaryImage(int rows, int cols, std::uint8_t fill = 0)
        : rows_(rows), cols_(cols), px_(static_cast<std::size_t>(rows) * cols, fill) {
        if (rows <= 0 || cols <= 0)
            throw std::invalid_argument("BinaryImage: non-positive dimensions");
    }

    static BinaryImage mnist_sized() { return BinaryImage(kMnistSide, kMnistSide); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int size() const { return rows_ * cols_; }

    bool in_bounds(int r, int c) const {
        return r >= 0 && r < rows_ && c >= 0 && c < cols_;
    }

    std::uint8_t at(int r, int c) const { return px_[index(r, c)]; }
    void set(int r, int c, std::uint8_t v) { px_[index(r, c)] = v ? 1 : 0; }
    bool is_white(int r, int c) const { return at(r, c) != 0; }
    void flip(int r, int c) { px_[index(r, c)] ^= 1; }

    const std::vector<std::uint8_t>& pixels() const { return px_; }

    BinaryImage inverted() const {
        BinaryImage out(rows_, cols_);
        for (std::size_t i = 0; i < px_.size(); ++i) out.px_[i] = px_[i] ^ 1;
        return out;
    }

    int hamming(const BinaryImage& other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw std::invalid_argument("hamming: dimension mismatch");
        int d = 0;
        for (std::size_t i = 0; i < px_.size(); ++i) d += px_[i] != other.px_[i];
        return d;
    }

    bool operator==(const BinaryImage&) const = default;

private:
    std::size_t index(int r, int c) const {
        if (!in_bounds(r, c)) throw std::out_of_range("BinaryImage: pixel out of range");
        return static_cast<std::size_t>(r) * cols_ + c;
    }

    int rows_;
    int cols_;
    std::vector<std::uint8_t> px_;
};

// |N_ij|: 8 interior, 5 edge, 3 corner.
inline int neighbor_count(int rows, int cols, int r, int c) {
    int n = 0;
    for (const auto& [dr, dc] : kKingOffsets) {
        const int rr = r + dr, cc = c + dc;
        if (rr >= 0 && rr < rows && cc >= 0 && cc < cols) ++n;
    }
    return n;
}

// Directed king-graph edge count: 2 * (undirected edges).
inline int directed_pair_count(int rows, int cols) {
    int n = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) n += neighbor_count(rows, cols, r, c);
    return n;
}

} // namespace molmem
