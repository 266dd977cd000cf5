#pragma once

#include <vector>

#include "molmem/dataset.hpp"
#include "molmem/memory.hpp"

namespace molmem {

enum class ThresholdMode { Normalized, Raw };

struct TrainConfig {
    double gamma = 0.01;            // learning-rate decay rate
    int step_size = 100;            // learning-rate midpoint (iterations)
    double weight_threshold = 0.002;
    int examples_per_digit = 5000;
    int binarize_threshold = 128;
    ThresholdMode threshold_mode = ThresholdMode::Normalized;
};

// eta = 1 / (1 + exp(-gamma * (iter_num - step_size)))
double learning_rate(int iter_num, const TrainConfig& cfg);

// One amplification step: hybridize the image's probe strands against the
// pattern's full bag, compute conditional probabilities for the foreground
// pixels, and add eta * p to their weights. Only weights change.
void train_example(MemoryPattern& mem, const BinaryImage& img, int example_label,
                   int iter_num, const TrainConfig& cfg);

// Threshold small weights to zero, normalize to sum 1, derive the stored image.
void finalize(MemoryPattern& mem, const TrainConfig& cfg);

// Full training loop over (grayscale image, label) records: binarize,
// despeckle, route each example to its label's pattern with a per-pattern
// iteration counter, then finalize all ten patterns.
MemorySet train(const std::vector<MnistRecord>& dataset, const TrainConfig& cfg,
                int rows = kMnistSide, int cols = kMnistSide);

} // namespace molmem
