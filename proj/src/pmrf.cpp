#include "molmem/pmrf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace molmem {

PotentialField::PotentialField(int rows, int cols)
    : rows_(rows), cols_(cols),
      v1_(static_cast<std::size_t>(rows) * cols, 0),
      v2_(static_cast<std::size_t>(rows) * cols, std::array<std::uint8_t, 8>{}) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("PotentialField: non-positive dimensions");
}

std::size_t PotentialField::index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("PotentialField: pixel out of range");
    return static_cast<std::size_t>(r) * cols_ + c;
}

int PotentialField::pair_sum(int r, int c) const {
    const auto& slots = v2_[index(r, c)];
    int s = 0;
    for (std::uint8_t v : slots) s += v;
    return s;
}

int offset_slot(int dr, int dc) {
    for (std::size_t i = 0; i < kKingOffsets.size(); ++i)
        if (kKingOffsets[i].first == dr && kKingOffsets[i].second == dc)
            return static_cast<int>(i);
    throw std::invalid_argument("offset_slot: not an 8-neighborhood offset");
}

PotentialField compute_potentials(const StrandBag& memory_bag,
                                  const StrandBag& probe_bag, int rows, int cols) {
    PotentialField pf(rows, cols);
    probe_bag.for_each([&](const Strand& probe, int) {
        const Strand image_strand = complement(probe);
        if (!memory_bag.contains(image_strand)) return;
        if (image_strand.kind() == StrandKind::Unary) {
            const PixelCode p = decode_pixel(image_strand);
            pf.set_v1(p.row, p.col, 1);
        } else {
            const auto [center, nb] = decode_pair(image_strand);
            pf.set_v2(center.row, center.col,
                      offset_slot(nb.row - center.row, nb.col - center.col), 1);
        }
    });
    return pf;
}

double energy(const PotentialField& pf) {
    long matched = 0;
    for (int r = 0; r < pf.rows(); ++r)
        for (int c = 0; c < pf.cols(); ++c)
            matched += pf.v1(r, c) + pf.pair_sum(r, c);
    return -static_cast<double>(matched);
}

double cond_prob(int v1, int sum_v2) {
    const double e = std::exp(static_cast<double>(v1 + sum_v2));
    return e / (1.0 + e);
}

double weighted_score(const std::vector<double>& weights, const PotentialField& pf) {
    if (weights.size() != static_cast<std::size_t>(pf.rows()) * pf.cols())
        throw std::invalid_argument("weighted_score: weight grid size mismatch");
    double score = 0.0;
    for (int r = 0; r < pf.rows(); ++r) {
        for (int c = 0; c < pf.cols(); ++c) {
            const double w = weights[static_cast<std::size_t>(r) * pf.cols() + c];
            if (w <= 0.0) continue;
            const int clique_count = 1 + neighbor_count(pf.rows(), pf.cols(), r, c);
            score += w * (pf.v1(r, c) + pf.pair_sum(r, c)) / clique_count;
        }
    }
    return score;
}

std::vector<double> softmax(const std::vector<double>& scores) {
    if (scores.empty()) throw std::invalid_argument("softmax: empty input");
    const double m = *std::max_element(scores.begin(), scores.end());
    std::vector<double> out(scores.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out[i] = std::exp(scores[i] - m);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

} // namespace molmem
