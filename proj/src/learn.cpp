#include "molmem/learn.hpp"

#include <array>
#include <cmath>

#include "molmem/errors.hpp"
#include "molmem/pmrf.hpp"

namespace molmem {

double learning_rate(int iter_num, const TrainConfig& cfg) {
    return 1.0 / (1.0 + std::exp(-cfg.gamma * (iter_num - cfg.step_size)));
}

void train_example(MemoryPattern& mem, const BinaryImage& img, int example_label,
                   int iter_num, const TrainConfig& cfg) {
    if (example_label != mem.label)
        throw std::invalid_argument("train_example: label " +
                                    std::to_string(example_label) +
                                    " does not match pattern " +
                                    std::to_string(mem.label));
    if (img.rows() != mem.rows || img.cols() != mem.cols)
        throw std::invalid_argument("train_example: image dimension mismatch");

    StrandBag probes = make_probe_strands(img);
    const double eta = learning_rate(iter_num, cfg);

    for (int r = 0; r < mem.rows; ++r) {
        for (int c = 0; c < mem.cols; ++c) {
            const PixelCode white{r, c, Color::White};
            const Strand unary = encode_pixel(white);
            // V1(x_ij = white): the memory's white unary strand finds its
            // complement among the image probes
            if (!mem.full_bag.contains(unary) ||
                !probes.contains(complement(unary)))
                continue;
            int sum_v2 = 0;
            for (const auto& [dr, dc] : kKingOffsets) {
                const int rr = r + dr, cc = c + dc;
                if (!img.in_bounds(rr, cc)) continue;
                const Strand pair =
                    make_pair_strand(white, {rr, cc, Color::White});
                if (mem.full_bag.contains(pair) &&
                    probes.contains(complement(pair)))
                    ++sum_v2;
            }
            mem.weight_at(r, c) += eta * cond_prob(1, sum_v2);
        }
    }
    // probes melt away with the local bag; memory strands are untouched
}

namespace {

void normalize_weights(MemoryPattern& mem, const char* stage) {
    const double sum = mem.weight_sum();
    if (sum <= 0.0)
        throw PipelineError(std::string("finalize: pattern ") +
                            std::to_string(mem.label) + " is empty " + stage);
    for (double& w : mem.weights) w /= sum;
}

void threshold_weights(MemoryPattern& mem, double threshold) {
    for (double& w : mem.weights)
        if (w < threshold) w = 0.0;
}

} // namespace

void finalize(MemoryPattern& mem, const TrainConfig& cfg) {
    if (cfg.threshold_mode == ThresholdMode::Normalized) {
        normalize_weights(mem, "before thresholding");
        threshold_weights(mem, cfg.weight_threshold);
        normalize_weights(mem, "after thresholding");
    } else {
        threshold_weights(mem, cfg.weight_threshold);
        normalize_weights(mem, "after thresholding");
    }
    derive_stored(mem);
}

MemorySet train(const std::vector<MnistRecord>& dataset, const TrainConfig& cfg,
                int rows, int cols) {
    if (dataset.empty()) throw PipelineError("train: empty dataset");

    MemorySet ms = init_memory(rows, cols);
    std::array<int, kNumPatterns> iter_count{};
    for (const MnistRecord& rec : dataset) {
        if (rec.label < 0 || rec.label >= kNumPatterns)
            throw PipelineError("train: label out of range");
        int& iters = iter_count[rec.label];
        if (iters >= cfg.examples_per_digit) continue;
        ++iters;
        const BinaryImage img =
            despeckle(binarize(rec.image, cfg.binarize_threshold));
        train_example(ms.patterns[rec.label], img, rec.label, iters, cfg);
    }
    for (int m = 0; m < kNumPatterns; ++m) {
        if (iter_count[m] == 0)
            throw PipelineError("train: no examples for digit " + std::to_string(m));
        finalize(ms.patterns[m], cfg);
    }
    return ms;
}

} // namespace molmem
