#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "molmem/memory.hpp"
#include "molmem/pmrf.hpp"

namespace molmem {

struct RecallResult {
    int best_label = 0;                 // argmax score, smallest label on ties
    std::array<double, kNumPatterns> scores{};
    std::array<double, kNumPatterns> probs{};
    bool matched = false;               // best_label == claimed label
};

// Eq-style weighted score per pattern via hybridization, then softmax.
RecallResult best_match(const MemorySet& ms, const BinaryImage& noisy);

struct FlipOutcome {
    bool accepted = false;
    double new_energy = 0.0;
};

// Trial flip of one pixel: rebuilds the incident clique strands, hybridizes
// them against the pattern's stored clique bag, and accepts iff the energy
// strictly drops. If image_bag is given it is kept in sync with the image.
FlipOutcome flip_trial(BinaryImage& current, Pixel p, const MemoryPattern& pattern,
                       double current_energy, StrandBag* image_bag = nullptr);

struct EpochRecord {
    int epoch = 0;       // 1-based trial index
    double energy = 0.0;
    double mse = 0.0;    // vs the matched stored pattern
    bool snapshot = false;
};

struct DenoiseTrace {
    bool denoised = false; // false when recall missed the claimed label
    RecallResult recall;
    double initial_energy = 0.0;
    std::vector<EpochRecord> epochs;
    std::vector<double> accepted_energies; // energy after each accepted flip
    std::vector<std::pair<int, BinaryImage>> snapshots;
    BinaryImage final_image{1, 1};
    int accepted_flips = 0;
};

struct DenoiseConfig {
    std::vector<int> snapshot_epochs{1, 300, 500, 600, 784};
    // one sweep visits every pixel once in a seeded random permutation; with
    // max_sweeps > 1 the descent repeats until an acceptance-free sweep
    int max_sweeps = 1;
};

DenoiseTrace denoise(const BinaryImage& noisy, const MemorySet& ms,
                     int claimed_label, std::uint64_t seed,
                     const DenoiseConfig& cfg = {});

} // namespace molmem
