#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "molmem/dataset.hpp"
#include "molmem/errors.hpp"
#include "molmem/learn.hpp"
#include "molmem/memory.hpp"
#include "molmem/metrics.hpp"
#include "molmem/pgm.hpp"
#include "molmem/recall.hpp"

namespace fs = std::filesystem;
using namespace molmem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitPipeline = 3;

void print_kv(const char* key, const std::string& value) {
    std::cout << "  " << key << " = " << value << "\n";
}

int cmd_train(const std::string& images, const std::string& labels,
              const std::string& out, const TrainConfig& cfg,
              const std::string& mode_name) {
    std::cout << "train:\n";
    print_kv("mnist-images", images);
    print_kv("mnist-labels", labels);
    print_kv("out", out);
    print_kv("per-digit", std::to_string(cfg.examples_per_digit));
    print_kv("gamma", std::to_string(cfg.gamma));
    print_kv("step", std::to_string(cfg.step_size));
    print_kv("threshold", std::to_string(cfg.weight_threshold));
    print_kv("threshold-mode", mode_name);
    print_kv("binarize", std::to_string(cfg.binarize_threshold));

    const auto data = load_mnist(images, labels);
    std::cout << "loaded " << data.size() << " examples\n";
    const MemorySet ms = train(data, cfg);
    save(ms, out);
    std::cout << "wrote " << out << "\n";
    return kExitOk;
}

int cmd_show(const std::string& memory, const std::string& out_dir) {
    std::cout << "show:\n";
    print_kv("memory", memory);
    print_kv("out-dir", out_dir);
    const MemorySet ms = load(memory);
    fs::create_directories(out_dir);
    for (const MemoryPattern& p : ms.patterns) {
        const fs::path path = fs::path(out_dir) /
                              ("stored_" + std::to_string(p.label) + ".pgm");
        write_pgm(path, p.stored);
        std::cout << "wrote " << path.string() << "\n";
    }
    return kExitOk;
}

int cmd_gen_noise(const std::string& memory, std::uint64_t seed,
                  const std::string& out_dir, const std::vector<int>& levels,
                  int per_level) {
    std::cout << "gen-noise:\n";
    print_kv("memory", memory);
    print_kv("seed", std::to_string(seed));
    print_kv("out-dir", out_dir);
    {
        std::string ls;
        for (int l : levels) ls += (ls.empty() ? "" : ",") + std::to_string(l);
        print_kv("levels", ls);
    }
    print_kv("per-level", std::to_string(per_level));

    const MemorySet ms = load(memory);
    const auto samples = generate_noisy_set(ms, seed, levels, per_level);
    write_noisy_set(out_dir, samples);
    std::cout << "wrote " << samples.size() << " samples to " << out_dir << "\n";
    return kExitOk;
}

int cmd_recall(const std::string& memory, const std::string& image) {
    std::cout << "recall:\n";
    print_kv("memory", memory);
    print_kv("image", image);
    const MemorySet ms = load(memory);
    const BinaryImage img = read_pgm_binary(image);
    const RecallResult res = best_match(ms, img);
    std::cout << "digit score softmax\n";
    for (int m = 0; m < kNumPatterns; ++m)
        std::printf("%d %.6f %.6f\n", m, res.scores[m], res.probs[m]);
    std::cout << "best label: " << res.best_label << "\n";
    return kExitOk;
}

int cmd_denoise(const std::string& memory, const std::string& image, int label,
                std::uint64_t seed, const std::string& out_dir,
                const std::vector<int>& snap_epochs) {
    std::cout << "denoise:\n";
    print_kv("memory", memory);
    print_kv("image", image);
    print_kv("label", std::to_string(label));
    print_kv("seed", std::to_string(seed));
    print_kv("out-dir", out_dir);

    const MemorySet ms = load(memory);
    const BinaryImage img = read_pgm_binary(image);
    DenoiseConfig cfg;
    cfg.snapshot_epochs = snap_epochs;
    const DenoiseTrace trace = denoise(img, ms, label, seed, cfg);

    fs::create_directories(out_dir);
    std::ofstream csv(fs::path(out_dir) / "trace.csv", std::ios::binary);
    csv << "epoch,energy,mse\n";
    for (const EpochRecord& e : trace.epochs) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%d,%.1f,%.6f\n", e.epoch, e.energy, e.mse);
        csv << buf;
    }
    for (const auto& [epoch, snap] : trace.snapshots)
        write_pgm(fs::path(out_dir) / ("epoch_" + std::to_string(epoch) + ".pgm"),
                  snap);
    write_pgm(fs::path(out_dir) / "final.pgm", trace.final_image);

    std::cout << "best label: " << trace.recall.best_label
              << (trace.denoised ? " (matched)" : " (mismatch, not denoised)")
              << "\n";
    if (trace.denoised)
        std::cout << "accepted flips: " << trace.accepted_flips
                  << ", final energy: " << (trace.accepted_energies.empty()
                                                ? trace.initial_energy
                                                : trace.accepted_energies.back())
                  << "\n";
    return kExitOk;
}

int cmd_eval(const std::string& memory, const std::string& noise_dir,
             const std::string& out_dir, int jobs, int table_level) {
    std::cout << "eval:\n";
    print_kv("memory", memory);
    print_kv("noise-dir", noise_dir);
    print_kv("out-dir", out_dir);
    print_kv("jobs", std::to_string(jobs));
    print_kv("table-level", std::to_string(table_level));

    const MemorySet ms = load(memory);
    const auto samples = read_noisy_set(noise_dir);
    EvalConfig cfg;
    cfg.jobs = jobs;
    cfg.table_level = table_level;
    const EvalReport report = evaluate(ms, samples, cfg);
    write_report(out_dir, report);
    for (const auto& [level, ls] : report.by_level)
        std::printf("level %d%%: accuracy %.4f avg_mse %.6f (%d/%d)\n", level,
                    ls.accuracy(), ls.avg_mse(), ls.recalled, ls.total);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Molecular associative memory simulator"};
    app.set_config("--config", "", "key=value config file");
    app.require_subcommand(1);

    // train
    auto* train_cmd = app.add_subcommand("train", "learn digit patterns from IDX data");
    std::string images, labels, mem_out;
    TrainConfig tcfg;
    std::string threshold_mode = "normalized";
    train_cmd->add_option("--mnist-images", images)->required();
    train_cmd->add_option("--mnist-labels", labels)->required();
    train_cmd->add_option("--out", mem_out)->required();
    train_cmd->add_option("--per-digit", tcfg.examples_per_digit);
    train_cmd->add_option("--gamma", tcfg.gamma);
    train_cmd->add_option("--step", tcfg.step_size);
    train_cmd->add_option("--threshold", tcfg.weight_threshold);
    train_cmd->add_option("--threshold-mode", threshold_mode)
        ->check(CLI::IsMember({"normalized", "raw"}));
    train_cmd->add_option("--binarize", tcfg.binarize_threshold);

    // show
    auto* show_cmd = app.add_subcommand("show", "write stored patterns as PGM");
    std::string mem_path, out_dir;
    show_cmd->add_option("--memory", mem_path)->required();
    show_cmd->add_option("--out-dir", out_dir)->required();

    // gen-noise
    auto* gen_cmd = app.add_subcommand("gen-noise", "generate the noisy sample set");
    std::string gen_mem, gen_dir;
    std::uint64_t gen_seed = 0;
    std::vector<int> levels{kDefaultNoiseLevels.begin(), kDefaultNoiseLevels.end()};
    int per_level = 100;
    gen_cmd->add_option("--memory", gen_mem)->required();
    gen_cmd->add_option("--seed", gen_seed)->required();
    gen_cmd->add_option("--out-dir", gen_dir)->required();
    gen_cmd->add_option("--levels", levels)->delimiter(',');
    gen_cmd->add_option("--per-level", per_level);

    // recall
    auto* recall_cmd = app.add_subcommand("recall", "score an image against memory");
    std::string rec_mem, rec_img;
    recall_cmd->add_option("--memory", rec_mem)->required();
    recall_cmd->add_option("--image", rec_img)->required();

    // denoise
    auto* den_cmd = app.add_subcommand("denoise", "greedy energy-descent denoising");
    std::string den_mem, den_img, den_dir;
    int den_label = 0;
    std::uint64_t den_seed = 0;
    std::vector<int> snaps{1, 300, 500, 600, 784};
    den_cmd->add_option("--memory", den_mem)->required();
    den_cmd->add_option("--image", den_img)->required();
    den_cmd->add_option("--label", den_label)->required();
    den_cmd->add_option("--seed", den_seed)->required();
    den_cmd->add_option("--out-dir", den_dir)->required();
    den_cmd->add_option("--snap", snaps)->delimiter(',');

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a noisy set");
    std::string eval_mem, eval_noise, eval_out;
    int jobs = 0, table_level = 30;
    eval_cmd->add_option("--memory", eval_mem)->required();
    eval_cmd->add_option("--noise-dir", eval_noise)->required();
    eval_cmd->add_option("--out-dir", eval_out)->required();
    eval_cmd->add_option("--jobs", jobs);
    eval_cmd->add_option("--table-level", table_level);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*train_cmd) {
            tcfg.threshold_mode = threshold_mode == "raw" ? ThresholdMode::Raw
                                                          : ThresholdMode::Normalized;
            return cmd_train(images, labels, mem_out, tcfg, threshold_mode);
        }
        if (*show_cmd) return cmd_show(mem_path, out_dir);
        if (*gen_cmd) return cmd_gen_noise(gen_mem, gen_seed, gen_dir, levels, per_level);
        if (*recall_cmd) return cmd_recall(rec_mem, rec_img);
        if (*den_cmd)
            return cmd_denoise(den_mem, den_img, den_label, den_seed, den_dir, snaps);
        if (*eval_cmd) return cmd_eval(eval_mem, eval_noise, eval_out, jobs, table_level);
    } catch (const FormatError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const PipelineError& e) {
        std::cerr << "pipeline error: " << e.what() << "\n";
        return kExitPipeline;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPipeline;
    }
    return kExitUsage;
}
