#include <doctest.h>

#include "molmem/errors.hpp"
#include "molmem/metrics.hpp"
#include "molmem/recall.hpp"
#include "oracle.hpp"

using namespace molmem;

namespace {

// ten distinct blob patterns on an n x n lattice, uniformly weighted
MemorySet blob_memory(int n) {
    MemorySet ms = init_memory(n, n);
    for (int m = 0; m < kNumPatterns; ++m) {
        MemoryPattern& p = ms.patterns[m];
        const int r0 = (m / 4) * 2, c0 = (m % 4) * 2;
        for (int dr = 0; dr < 2; ++dr)
            for (int dc = 0; dc < 2; ++dc)
                p.weight_at((r0 + dr) % n, (c0 + dc + m) % n) = 0.25;
        derive_stored(p);
    }
    return ms;
}

} // namespace

TEST_CASE("best_match recalls a stored pattern with score 1") {
    const MemorySet ms = blob_memory(8);
    for (int m = 0; m < kNumPatterns; ++m) {
        const RecallResult res = best_match(ms, ms.patterns[m].stored);
        CHECK(res.best_label == m);
        CHECK(res.scores[m] == doctest::Approx(1.0).epsilon(1e-12));
        double sum = 0.0;
        for (double p : res.probs) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("all-black input scores zero everywhere and ties to label 0") {
    const MemorySet ms = blob_memory(8);
    const RecallResult res = best_match(ms, BinaryImage(8, 8));
    for (double s : res.scores) CHECK(s == 0.0);
    CHECK(res.best_label == 0);
}

TEST_CASE("best_match requires finalized memory") {
    const MemorySet ms = init_memory(8, 8);
    CHECK_THROWS_AS(best_match(ms, BinaryImage(8, 8)), PipelineError);
}

TEST_CASE("flip_trial agrees with the oracle energy delta") {
    const MemorySet ms = blob_memory(8);
    const MemoryPattern& pat = ms.patterns[4];
    std::uint64_t seed = 555;
    for (int trial = 0; trial < 40; ++trial) {
        BinaryImage img = oracle::random_image(8, 8, ++seed);
        const double u0 = oracle::energy(pat.stored, img);
        const Pixel p{trial % 8, (trial / 8) % 8};
        BinaryImage flipped = img;
        flipped.flip(p.row, p.col);
        const double u1 = oracle::energy(pat.stored, flipped);

        BinaryImage working = img;
        const FlipOutcome fo = flip_trial(working, p, pat, u0);
        if (u1 < u0) {
            CHECK(fo.accepted);
            CHECK(fo.new_energy == u1);
            CHECK(working == flipped);
        } else {
            CHECK_FALSE(fo.accepted);
            CHECK(fo.new_energy == u0);
            CHECK(working == img);
        }
    }
}

TEST_CASE("flip_trial known deltas at an interior pixel") {
    const MemorySet ms = blob_memory(8);
    const MemoryPattern& pat = ms.patterns[0];

    // start from the stored pattern: all cliques matched
    BinaryImage img = pat.stored;
    const double u0 = -(64 + directed_pair_count(8, 8));
    FlipOutcome fo = flip_trial(img, Pixel{4, 4}, pat, u0);
    CHECK_FALSE(fo.accepted); // agreeing pixel: flip raises U by 17
    CHECK(img == pat.stored);

    // disagree at one interior pixel with all neighbors agreeing
    BinaryImage noisy = pat.stored;
    noisy.flip(4, 4);
    fo = flip_trial(noisy, Pixel{4, 4}, pat, u0 + 17);
    CHECK(fo.accepted);
    CHECK(fo.new_energy == u0);
    CHECK(noisy == pat.stored);
}

TEST_CASE("flip_trial rejects out-of-range pixels") {
    const MemorySet ms = blob_memory(8);
    BinaryImage img(8, 8);
    CHECK_THROWS_AS(flip_trial(img, Pixel{8, 0}, ms.patterns[0], 0.0),
                    std::out_of_range);
}

TEST_CASE("flip_trial keeps the image bag in sync") {
    const MemorySet ms = blob_memory(8);
    BinaryImage img = oracle::random_image(8, 8, 9001);
    StrandBag bag = make_clique_strands(img);
    double u = oracle::energy(ms.patterns[2].stored, img);
    for (int i = 0; i < 20; ++i) {
        const FlipOutcome fo =
            flip_trial(img, Pixel{i % 8, (3 * i) % 8}, ms.patterns[2], u, &bag);
        u = fo.new_energy;
    }
    CHECK(bag == make_clique_strands(img));
}

TEST_CASE("the stored pattern is a fixed point of denoise") {
    const MemorySet ms = blob_memory(8);
    for (int m = 0; m < kNumPatterns; ++m) {
        const DenoiseTrace trace = denoise(ms.patterns[m].stored, ms, m, 123);
        CHECK(trace.denoised);
        CHECK(trace.accepted_flips == 0);
        CHECK(trace.final_image == ms.patterns[m].stored);
    }
}

TEST_CASE("denoise performs one trial per pixel and descends monotonically") {
    const MemorySet ms = blob_memory(8);
    const BinaryImage noisy = add_noise(ms.patterns[5].stored, 20, 42);
    const DenoiseTrace trace = denoise(noisy, ms, 5, 77);
    REQUIRE(trace.denoised);
    CHECK(trace.epochs.size() == 64);

    double prev = trace.initial_energy;
    for (double e : trace.accepted_energies) {
        CHECK(e < prev);
        prev = e;
    }
    prev = trace.initial_energy;
    double prev_mse = 1.0;
    for (const EpochRecord& rec : trace.epochs) {
        CHECK(rec.energy <= prev);
        CHECK(rec.mse <= prev_mse);
        prev = rec.energy;
        prev_mse = rec.mse;
    }
    // greedy agreement descent converges to the stored pattern in one sweep
    CHECK(trace.final_image == ms.patterns[5].stored);
}

TEST_CASE("denoise returns not-denoised on a recall mismatch") {
    const MemorySet ms = blob_memory(8);
    const DenoiseTrace trace = denoise(ms.patterns[1].stored, ms, 2, 5);
    CHECK_FALSE(trace.denoised);
    CHECK(trace.epochs.empty());
    CHECK(trace.final_image == ms.patterns[1].stored);
}

TEST_CASE("denoise is deterministic for a fixed seed") {
    const MemorySet ms = blob_memory(8);
    const BinaryImage noisy = add_noise(ms.patterns[3].stored, 30, 9);
    const DenoiseTrace a = denoise(noisy, ms, 3, 31415);
    const DenoiseTrace b = denoise(noisy, ms, 3, 31415);
    REQUIRE(a.epochs.size() == b.epochs.size());
    for (std::size_t i = 0; i < a.epochs.size(); ++i) {
        CHECK(a.epochs[i].energy == b.epochs[i].energy);
        CHECK(a.epochs[i].mse == b.epochs[i].mse);
    }
    CHECK(a.final_image == b.final_image);
}

TEST_CASE("denoise snapshots honor the configured epochs") {
    const MemorySet ms = blob_memory(8);
    const BinaryImage noisy = add_noise(ms.patterns[7].stored, 20, 3);
    DenoiseConfig cfg;
    cfg.snapshot_epochs = {1, 10, 64};
    const DenoiseTrace trace = denoise(noisy, ms, 7, 1, cfg);
    REQUIRE(trace.denoised);
    REQUIRE(trace.snapshots.size() == 3);
    CHECK(trace.snapshots[0].first == 1);
    CHECK(trace.snapshots[2].first == 64);
    CHECK(trace.snapshots[2].second == trace.final_image);
}
