#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "molmem/image.hpp"
#include "molmem/memory.hpp"

namespace molmem {

struct GrayImage {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> px; // row-major

    std::uint8_t at(int r, int c) const {
        return px[static_cast<std::size_t>(r) * cols + c];
    }
};

struct MnistRecord {
    GrayImage image;
    int label = 0;
};

// IDX containers: magic 0x00000803 (images) / 0x00000801 (labels), big-endian.
std::vector<MnistRecord> load_mnist(const std::filesystem::path& images_path,
                                    const std::filesystem::path& labels_path);

// test fixtures and synthetic datasets
void write_idx_images(const std::filesystem::path& path,
                      const std::vector<GrayImage>& images);
void write_idx_labels(const std::filesystem::path& path,
                      const std::vector<std::uint8_t>& labels);

// white iff value >= threshold
BinaryImage binarize(const GrayImage& gray, int threshold = 128);

// one pass: white pixels with zero white 8-neighbors become black
BinaryImage despeckle(const BinaryImage& img);

struct NoisySample {
    BinaryImage image{kMnistSide, kMnistSide};
    int true_label = 0;
    int noise_pct = 0;           // one of 0,10,20,30,40,50
    int sample_id = 0;
    std::uint64_t seed = 0;      // the per-sample noise seed
};

inline constexpr std::array<int, 6> kDefaultNoiseLevels{0, 10, 20, 30, 40, 50};

// Flips exactly round(pct/100 * size) distinct pixels.
BinaryImage add_noise(const BinaryImage& img, int pct, std::uint64_t seed);

// per stored pattern x noise level x sample index; 10*6*100 = 6000 by default
std::vector<NoisySample> generate_noisy_set(
    const MemorySet& ms, std::uint64_t seed,
    const std::vector<int>& levels = {kDefaultNoiseLevels.begin(),
                                      kDefaultNoiseLevels.end()},
    int per_level = 100);

// Directory of PGM files plus manifest.csv (sample_id, digit, level, seed, path).
void write_noisy_set(const std::filesystem::path& dir,
                     const std::vector<NoisySample>& samples);
std::vector<NoisySample> read_noisy_set(const std::filesystem::path& dir);

} // namespace molmem
