#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <vector>

#include "molmem/dataset.hpp"
#include "molmem/recall.hpp"

namespace molmem {

// (1/size) * sum (a - b)^2; for binary images mse * size is the Hamming distance
double mse(const BinaryImage& a, const BinaryImage& b);

struct SampleRow {
    int sample_id = 0;
    int digit = 0;
    int level = 0;
    bool recalled = false;
    int best_label = 0;
    double final_mse = 0.0; // only meaningful when recalled
};

struct LevelStats {
    int total = 0;
    int recalled = 0;
    double mse_sum = 0.0; // over recalled samples only
    double accuracy() const { return total ? static_cast<double>(recalled) / total : 0.0; }
    double avg_mse() const { return recalled ? mse_sum / recalled : 0.0; }
};

struct EvalReport {
    std::vector<SampleRow> rows;                  // in sample-id order
    std::map<int, LevelStats> by_level;
    std::array<LevelStats, kNumPatterns> per_digit_at_table_level{};
    int table_level = 30;
    // denoising trace of the first table-level sample per digit (Fig.-style)
    std::array<std::vector<EpochRecord>, kNumPatterns> traces;
};

struct EvalConfig {
    int jobs = 0;        // 0 = hardware concurrency
    int table_level = 30;
    DenoiseConfig denoise;
};

// Recall (and on success denoise) every sample; deterministic for fixed
// inputs regardless of the worker count.
EvalReport evaluate(const MemorySet& ms, const std::vector<NoisySample>& samples,
                    const EvalConfig& cfg = {});

// recall_by_level.csv, table1.csv, samples.csv, mse_trace_<digit>.csv
void write_report(const std::filesystem::path& dir, const EvalReport& report);

} // namespace molmem
