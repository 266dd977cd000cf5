#include "molmem/recall.hpp"

#include <algorithm>

#include "molmem/errors.hpp"
#include "molmem/rng.hpp"

namespace molmem {

namespace {

// clique strands incident to pixel p: its unary strand plus both directions
// of every in-lattice king pair
std::vector<Strand> incident_strands(const BinaryImage& img, Pixel p) {
    std::vector<Strand> out;
    out.reserve(17);
    const PixelCode center{p.row, p.col,
                           img.is_white(p.row, p.col) ? Color::White : Color::Black};
    out.push_back(encode_pixel(center));
    for (const auto& [dr, dc] : kKingOffsets) {
        const int rr = p.row + dr, cc = p.col + dc;
        if (!img.in_bounds(rr, cc)) continue;
        const PixelCode nb{rr, cc,
                           img.is_white(rr, cc) ? Color::White : Color::Black};
        out.push_back(make_pair_strand(center, nb));
        out.push_back(make_pair_strand(nb, center));
    }
    return out;
}

int matched_count(const std::vector<Strand>& strands, const StrandBag& memory_bag) {
    int n = 0;
    for (const Strand& s : strands) n += memory_bag.contains(s);
    return n;
}

} // namespace

RecallResult best_match(const MemorySet& ms, const BinaryImage& noisy) {
    if (!ms.finalized())
        throw PipelineError("best_match: memory set is not finalized");
    const StrandBag probes = make_probe_strands(noisy);

    RecallResult res;
    std::vector<double> scores(kNumPatterns);
    for (int m = 0; m < kNumPatterns; ++m) {
        const MemoryPattern& p = ms.patterns[m];
        const PotentialField pf =
            compute_potentials(p.white_bag, probes, noisy.rows(), noisy.cols());
        scores[m] = weighted_score(p.weights, pf);
    }
    const std::vector<double> probs = softmax(scores);
    res.best_label = 0;
    for (int m = 0; m < kNumPatterns; ++m) {
        res.scores[m] = scores[m];
        res.probs[m] = probs[m];
        if (scores[m] > scores[res.best_label]) res.best_label = m;
    }
    return res;
}

FlipOutcome flip_trial(BinaryImage& current, Pixel p, const MemoryPattern& pattern,
                       double current_energy, StrandBag* image_bag) {
    if (!current.in_bounds(p.row, p.col))
        throw std::out_of_range("flip_trial: pixel out of range");

    const std::vector<Strand> old_strands = incident_strands(current, p);
    current.flip(p.row, p.col);
    const std::vector<Strand> new_strands = incident_strands(current, p);

    const int delta = matched_count(new_strands, pattern.white_bag) -
                      matched_count(old_strands, pattern.white_bag);
    const double new_energy = current_energy - delta;

    FlipOutcome out;
    if (new_energy < current_energy) {
        out.accepted = true;
        out.new_energy = new_energy;
        if (image_bag) { // melt the replaced strands, keep the new ones
            for (const Strand& s : old_strands) image_bag->remove(s);
            for (const Strand& s : new_strands) image_bag->add(s);
        }
    } else {
        current.flip(p.row, p.col); // reject: melt the newly added strands
        out.accepted = false;
        out.new_energy = current_energy;
    }
    return out;
}

DenoiseTrace denoise(const BinaryImage& noisy, const MemorySet& ms,
                     int claimed_label, std::uint64_t seed,
                     const DenoiseConfig& cfg) {
    DenoiseTrace trace;
    trace.recall = best_match(ms, noisy);
    trace.recall.matched = trace.recall.best_label == claimed_label;
    trace.final_image = noisy;
    if (!trace.recall.matched) return trace;

    const MemoryPattern& pattern = ms.pattern(trace.recall.best_label);
    BinaryImage current = noisy;
    StrandBag image_bag = make_clique_strands(current);
    const PotentialField pf = compute_potentials(
        pattern.white_bag, make_probe_strands(current), current.rows(),
        current.cols());
    double u = energy(pf);
    trace.initial_energy = u;
    trace.denoised = true;

    const auto snap_wanted = [&](int epoch) {
        return std::find(cfg.snapshot_epochs.begin(), cfg.snapshot_epochs.end(),
                         epoch) != cfg.snapshot_epochs.end();
    };

    int epoch = 0;
    for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(sweep)));
        int accepted_in_sweep = 0;
        for (int idx : rng.permutation(current.size())) {
            const Pixel p{idx / current.cols(), idx % current.cols()};
            const FlipOutcome fo = flip_trial(current, p, pattern, u, &image_bag);
            if (fo.accepted) {
                u = fo.new_energy;
                trace.accepted_energies.push_back(u);
                ++trace.accepted_flips;
                ++accepted_in_sweep;
            }
            ++epoch;
            EpochRecord rec;
            rec.epoch = epoch;
            rec.energy = u;
            rec.mse = static_cast<double>(current.hamming(pattern.stored)) /
                      current.size();
            rec.snapshot = snap_wanted(epoch);
            if (rec.snapshot) trace.snapshots.emplace_back(epoch, current);
            trace.epochs.push_back(rec);
        }
        if (accepted_in_sweep == 0) break;
    }
    trace.final_image = current;
    return trace;
}

} // namespace molmem
