#include "molmem/metrics.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include "molmem/errors.hpp"
#include "molmem/rng.hpp"

namespace molmem {

namespace {
constexpr std::uint64_t kDenoiseSalt = 0x64656e6f697365ULL;
} // namespace

double mse(const BinaryImage& a, const BinaryImage& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("mse: dimension mismatch");
    return static_cast<double>(a.hamming(b)) / a.size();
}

EvalReport evaluate(const MemorySet& ms, const std::vector<NoisySample>& samples,
                    const EvalConfig& cfg) {
    if (samples.empty()) throw PipelineError("evaluate: empty sample set");
    if (!ms.finalized()) throw PipelineError("evaluate: memory set is not finalized");

    EvalReport report;
    report.table_level = cfg.table_level;
    report.rows.resize(samples.size());

    // first table-level sample per digit gets its full trace kept
    std::array<int, kNumPatterns> trace_sample{};
    trace_sample.fill(-1);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const NoisySample& s = samples[i];
        if (s.noise_pct == cfg.table_level && trace_sample[s.true_label] < 0)
            trace_sample[s.true_label] = static_cast<int>(i);
    }

    std::vector<std::vector<EpochRecord>> kept_traces(samples.size());
    const auto run_sample = [&](std::size_t i) {
        const NoisySample& s = samples[i];
        const DenoiseTrace trace =
            denoise(s.image, ms, s.true_label, mix_seed(s.seed, kDenoiseSalt),
                    cfg.denoise);
        SampleRow row;
        row.sample_id = s.sample_id;
        row.digit = s.true_label;
        row.level = s.noise_pct;
        row.best_label = trace.recall.best_label;
        row.recalled = trace.recall.matched;
        row.final_mse = row.recalled
                            ? mse(trace.final_image,
                                  ms.pattern(s.true_label).stored)
                            : std::numeric_limits<double>::quiet_NaN();
        report.rows[i] = row;
        if (trace_sample[s.true_label] == static_cast<int>(i))
            kept_traces[i] = trace.epochs;
    };

    int jobs = cfg.jobs > 0 ? cfg.jobs
                            : static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    if (jobs == 1) {
        for (std::size_t i = 0; i < samples.size(); ++i) run_sample(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < samples.size();
                     i = next.fetch_add(1))
                    run_sample(i);
            });
        for (auto& th : pool) th.join();
    }

    // deterministic aggregation in sample order
    for (const SampleRow& row : report.rows) {
        LevelStats& ls = report.by_level[row.level];
        ++ls.total;
        if (row.recalled) {
            ++ls.recalled;
            ls.mse_sum += row.final_mse;
        }
        if (row.level == cfg.table_level) {
            LevelStats& ds = report.per_digit_at_table_level[row.digit];
            ++ds.total;
            if (row.recalled) {
                ++ds.recalled;
                ds.mse_sum += row.final_mse;
            }
        }
    }
    for (int d = 0; d < kNumPatterns; ++d)
        if (trace_sample[d] >= 0)
            report.traces[d] = std::move(kept_traces[trace_sample[d]]);
    return report;
}

void write_report(const std::filesystem::path& dir, const EvalReport& report) {
    std::filesystem::create_directories(dir);
    const auto open = [&](const std::string& name) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw FormatError("write_report: cannot open " + name);
        return out;
    };

    {
        auto out = open("recall_by_level.csv");
        out << "level,accuracy,avg_mse\n";
        for (const auto& [level, ls] : report.by_level) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f\n", level, ls.accuracy(),
                          ls.avg_mse());
            out << buf;
        }
    }
    {
        auto out = open("table1.csv");
        out << "digit,recalled,missed,accuracy\n";
        for (int d = 0; d < kNumPatterns; ++d) {
            const LevelStats& ls = report.per_digit_at_table_level[d];
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.6f\n", d, ls.recalled,
                          ls.total - ls.recalled, ls.accuracy());
            out << buf;
        }
    }
    {
        auto out = open("samples.csv");
        out << "sample_id,digit,level,recalled,best_label,final_mse\n";
        for (const SampleRow& r : report.rows) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%d,%.6f\n", r.sample_id,
                          r.digit, r.level, r.recalled ? 1 : 0, r.best_label,
                          r.recalled ? r.final_mse : -1.0);
            out << buf;
        }
    }
    for (int d = 0; d < kNumPatterns; ++d) {
        if (report.traces[d].empty()) continue;
        auto out = open("mse_trace_" + std::to_string(d) + ".csv");
        out << "epoch,energy,mse\n";
        for (const EpochRecord& e : report.traces[d]) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%d,%.1f,%.6f\n", e.epoch, e.energy,
                          e.mse);
            out << buf;
        }
    }
}

} // namespace molmem
