#include <doctest.h>

#include <cmath>

#include "molmem/errors.hpp"
#include "molmem/learn.hpp"
#include "oracle.hpp"

using namespace molmem;

namespace {

GrayImage gray_from(const BinaryImage& img) {
    GrayImage g;
    g.rows = img.rows();
    g.cols = img.cols();
    g.px.resize(static_cast<std::size_t>(img.size()));
    for (int r = 0; r < img.rows(); ++r)
        for (int c = 0; c < img.cols(); ++c)
            g.px[static_cast<std::size_t>(r) * img.cols() + c] =
                img.is_white(r, c) ? 255 : 0;
    return g;
}

} // namespace

TEST_CASE("learning_rate golden values") {
    const TrainConfig cfg;
    CHECK(learning_rate(100, cfg) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(learning_rate(1, cfg) ==
          doctest::Approx(1.0 / (1.0 + std::exp(0.99))).epsilon(1e-12));
    CHECK(learning_rate(1, cfg) == doctest::Approx(0.27092).epsilon(1e-4));
    CHECK(learning_rate(5000, cfg) == doctest::Approx(1.0).epsilon(1e-21));

    double prev = 0.0;
    for (int i = 1; i < 400; i += 7) {
        const double eta = learning_rate(i, cfg);
        CHECK(eta > prev);
        CHECK(eta > 0.0);
        CHECK(eta < 1.0);
        prev = eta;
    }
}

TEST_CASE("train_example on an all-black image changes nothing") {
    MemoryPattern mem = make_pattern(0, 6, 6);
    train_example(mem, BinaryImage(6, 6), 0, 100, TrainConfig{});
    for (double w : mem.weights) CHECK(w == 0.0);
}

TEST_CASE("train_example on an all-white image") {
    const TrainConfig cfg;
    MemoryPattern mem = make_pattern(0, 28, 28);
    train_example(mem, BinaryImage(28, 28, 1), 0, 100, cfg);
    for (int r = 0; r < 28; ++r)
        for (int c = 0; c < 28; ++c) {
            const int nb = neighbor_count(28, 28, r, c);
            const double expected =
                0.5 * std::exp(1 + nb) / (1 + std::exp(1 + nb));
            CHECK(mem.weight_at(r, c) == doctest::Approx(expected).epsilon(1e-12));
        }
}

TEST_CASE("train_example with a single white interior pixel") {
    MemoryPattern mem = make_pattern(0, 28, 28);
    BinaryImage img(28, 28);
    img.set(10, 12, 1);
    train_example(mem, img, 0, 100, TrainConfig{});
    const double e = std::exp(1.0);
    for (int r = 0; r < 28; ++r)
        for (int c = 0; c < 28; ++c) {
            if (r == 10 && c == 12)
                CHECK(mem.weight_at(r, c) ==
                      doctest::Approx(0.5 * e / (1 + e)).epsilon(1e-12));
            else
                CHECK(mem.weight_at(r, c) == 0.0);
        }
}

TEST_CASE("train_example rejects mismatched labels and leaves the bag intact") {
    MemoryPattern mem = make_pattern(3, 4, 4);
    CHECK_THROWS_AS(train_example(mem, BinaryImage(4, 4), 5, 1, TrainConfig{}),
                    std::invalid_argument);
    const StrandBag before = mem.full_bag;
    BinaryImage img(4, 4);
    img.set(1, 1, 1);
    train_example(mem, img, 3, 1, TrainConfig{});
    CHECK(mem.full_bag == before);
}

TEST_CASE("train_example equals the pixel-level oracle on random images") {
    const TrainConfig cfg;
    std::uint64_t seed = 31337;
    for (int trial = 0; trial < 50; ++trial) {
        const BinaryImage img = oracle::random_image(8, 8, ++seed);
        MemoryPattern mem = make_pattern(0, 8, 8);
        const int iter = 1 + trial * 3;
        train_example(mem, img, 0, iter, cfg);
        const auto expected = oracle::train_update(img, learning_rate(iter, cfg));
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(mem.weights[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
}

TEST_CASE("weights never decrease across updates") {
    MemoryPattern mem = make_pattern(0, 8, 8);
    std::vector<double> prev = mem.weights;
    std::uint64_t seed = 4;
    for (int iter = 1; iter <= 20; ++iter) {
        train_example(mem, oracle::random_image(8, 8, ++seed), 0, iter,
                      TrainConfig{});
        for (std::size_t i = 0; i < prev.size(); ++i)
            CHECK(mem.weights[i] >= prev[i]);
        prev = mem.weights;
    }
}

TEST_CASE("finalize normalizes and thresholds") {
    TrainConfig cfg;

    MemoryPattern mem = make_pattern(0, 2, 1);
    mem.weights = {0.5, 0.5};
    finalize(mem, cfg);
    CHECK(mem.weights[0] == 0.5);
    CHECK(mem.weights[1] == 0.5);
    CHECK(mem.finalized);

    mem = make_pattern(0, 2, 1);
    mem.weights = {0.999, 0.001};
    finalize(mem, cfg);
    CHECK(mem.weights[0] == 1.0);
    CHECK(mem.weights[1] == 0.0);
    CHECK(mem.stored.is_white(0, 0));
    CHECK_FALSE(mem.stored.is_white(1, 0));

    // uniform 784 weights: each normalized weight 1/784 < 0.002
    mem = make_pattern(0, 28, 28);
    for (double& w : mem.weights) w = 0.37;
    CHECK_THROWS_AS(finalize(mem, cfg), PipelineError);

    // raw mode thresholds before normalizing
    mem = make_pattern(0, 2, 1);
    mem.weights = {400.0, 0.001};
    cfg.threshold_mode = ThresholdMode::Raw;
    finalize(mem, cfg);
    CHECK(mem.weights[0] == 1.0);
    CHECK(mem.weights[1] == 0.0);
}

TEST_CASE("finalize weight sum is 1 within 1e-9") {
    MemoryPattern mem = make_pattern(0, 8, 8);
    std::uint64_t seed = 77;
    for (int iter = 1; iter <= 30; ++iter)
        train_example(mem, oracle::random_image(8, 8, ++seed), 0, iter,
                      TrainConfig{});
    finalize(mem, TrainConfig{});
    CHECK(std::abs(mem.weight_sum() - 1.0) < 1e-9);
}

TEST_CASE("train routes examples per digit and finalizes") {
    std::vector<MnistRecord> data;
    for (int d = 0; d < 10; ++d) {
        BinaryImage img(8, 8);
        // a distinct 2x2 block per digit so despeckle keeps it
        const int r = (d / 4) * 3, c = (d % 4) * 2;
        img.set(r, c, 1);
        img.set(r, c + 1, 1);
        img.set(r + 1, c, 1);
        img.set(r + 1, c + 1, 1);
        data.push_back({gray_from(img), d});
    }
    const MemorySet ms = train(data, TrainConfig{}, 8, 8);
    for (int d = 0; d < 10; ++d) {
        const MemoryPattern& p = ms.patterns[d];
        CHECK(p.finalized);
        int fg = 0;
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) fg += p.stored.is_white(r, c);
        CHECK(fg == 4); // the single example's foreground survives
    }
}

TEST_CASE("single-example training stores that example's despeckled image") {
    BinaryImage img(8, 8);
    img.set(3, 3, 1);
    img.set(3, 4, 1);
    img.set(0, 7, 1); // isolated speck, removed by despeckle
    std::vector<MnistRecord> data;
    for (int d = 0; d < 10; ++d) data.push_back({gray_from(img), d});
    const MemorySet ms = train(data, TrainConfig{}, 8, 8);
    const BinaryImage expected = despeckle(binarize(gray_from(img), 128));
    for (int d = 0; d < 10; ++d) CHECK(ms.patterns[d].stored == expected);
}

TEST_CASE("duplicate presentation scales weights but not the stored support") {
    BinaryImage img(8, 8);
    img.set(2, 2, 1);
    img.set(2, 3, 1);
    std::vector<MnistRecord> once, twice;
    for (int d = 0; d < 10; ++d) {
        once.push_back({gray_from(img), d});
        twice.push_back({gray_from(img), d});
        twice.push_back({gray_from(img), d});
    }
    const MemorySet a = train(once, TrainConfig{}, 8, 8);
    const MemorySet b = train(twice, TrainConfig{}, 8, 8);
    for (int d = 0; d < 10; ++d) CHECK(a.patterns[d].stored == b.patterns[d].stored);
}

TEST_CASE("train errors") {
    CHECK_THROWS_AS(train({}, TrainConfig{}, 8, 8), PipelineError);

    // digit 9 missing
    std::vector<MnistRecord> data;
    BinaryImage img(8, 8, 1);
    for (int d = 0; d < 9; ++d) data.push_back({gray_from(img), d});
    CHECK_THROWS_AS(train(data, TrainConfig{}, 8, 8), PipelineError);
}

TEST_CASE("training one digit leaves other patterns untouched") {
    MemorySet ms = init_memory(8, 8);
    BinaryImage img(8, 8);
    img.set(4, 4, 1);
    train_example(ms.patterns[3], img, 3, 1, TrainConfig{});
    for (int d = 0; d < 10; ++d) {
        if (d == 3) continue;
        for (double w : ms.patterns[d].weights) CHECK(w == 0.0);
    }
}
