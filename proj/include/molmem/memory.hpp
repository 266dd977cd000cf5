#pragma once

#include <filesystem>
#include <vector>

#include "molmem/image.hpp"
#include "molmem/strand.hpp"

namespace molmem {

inline constexpr int kNumPatterns = 10;

// One weighted memory pattern (a digit). During training the full bag holds
// strands for every location in both colors; after finalize the stored image
// and its clique bag are derived from the positive weights.
struct MemoryPattern {
    int label = 0;
    int rows = kMnistSide;
    int cols = kMnistSide;
    std::vector<double> weights;      // row-major, non-negative
    BinaryImage stored{1, 1};         // white iff weight > 0, valid once finalized
    StrandBag white_bag{BagOrigin::Memory}; // cliques of `stored`
    StrandBag full_bag{BagOrigin::Memory};  // both colors everywhere
    bool finalized = false;

    double weight_at(int r, int c) const {
        return weights[static_cast<std::size_t>(r) * cols + c];
    }
    double& weight_at(int r, int c) {
        return weights[static_cast<std::size_t>(r) * cols + c];
    }
    double weight_sum() const;
};

struct MemorySet {
    int rows = kMnistSide;
    int cols = kMnistSide;
    std::vector<MemoryPattern> patterns; // labels 0..9 in order

    const MemoryPattern& pattern(int label) const;
    MemoryPattern& pattern(int label);
    bool finalized() const;
};

MemoryPattern make_pattern(int label, int rows, int cols);
MemorySet init_memory(int rows = kMnistSide, int cols = kMnistSide);

// white iff weight > 0
BinaryImage stored_binary(const MemoryPattern& p);

// Derives `stored` and `white_bag` from the current weights and marks the
// pattern finalized. Weight normalization itself lives in the learn module.
void derive_stored(MemoryPattern& p);

// Text format: "MOLMEM 1" header, dimensions line, then per pattern a label
// line and a row-major weight grid. Round-trips weights bit-exactly.
void save(const MemorySet& ms, const std::filesystem::path& path);
MemorySet load(const std::filesystem::path& path);

} // namespace molmem
