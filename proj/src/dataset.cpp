#include "molmem/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "molmem/errors.hpp"
#include "molmem/pgm.hpp"
#include "molmem/rng.hpp"

namespace molmem {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::uint32_t read_be32(std::istream& in, const std::string& what) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (in.gcount() != 4) throw FormatError("load_mnist: truncated " + what);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
           (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
}

void write_be32(std::ostream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v >> 24),
                                static_cast<unsigned char>(v >> 16),
                                static_cast<unsigned char>(v >> 8),
                                static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

} // namespace

std::vector<MnistRecord> load_mnist(const std::filesystem::path& images_path,
                                    const std::filesystem::path& labels_path) {
    std::ifstream img_in(images_path, std::ios::binary);
    if (!img_in) throw FormatError("load_mnist: cannot open " + images_path.string());
    std::ifstream lab_in(labels_path, std::ios::binary);
    if (!lab_in) throw FormatError("load_mnist: cannot open " + labels_path.string());

    if (read_be32(img_in, "image header") != kImagesMagic)
        throw FormatError("load_mnist: bad image magic in " + images_path.string());
    const std::uint32_t n_images = read_be32(img_in, "image count");
    const std::uint32_t rows = read_be32(img_in, "row count");
    const std::uint32_t cols = read_be32(img_in, "column count");
    if (rows == 0 || cols == 0 || rows > 1024 || cols > 1024)
        throw FormatError("load_mnist: implausible image dimensions");

    if (read_be32(lab_in, "label header") != kLabelsMagic)
        throw FormatError("load_mnist: bad label magic in " + labels_path.string());
    const std::uint32_t n_labels = read_be32(lab_in, "label count");
    if (n_images != n_labels)
        throw FormatError("load_mnist: count mismatch (" + std::to_string(n_images) +
                          " images vs " + std::to_string(n_labels) + " labels)");

    std::vector<MnistRecord> out(n_images);
    const std::size_t px = static_cast<std::size_t>(rows) * cols;
    for (std::uint32_t i = 0; i < n_images; ++i) {
        MnistRecord& rec = out[i];
        rec.image.rows = static_cast<int>(rows);
        rec.image.cols = static_cast<int>(cols);
        rec.image.px.resize(px);
        img_in.read(reinterpret_cast<char*>(rec.image.px.data()),
                    static_cast<std::streamsize>(px));
        if (static_cast<std::size_t>(img_in.gcount()) != px)
            throw FormatError("load_mnist: truncated image payload at record " +
                              std::to_string(i));
        char lab;
        if (!lab_in.get(lab))
            throw FormatError("load_mnist: truncated label payload at record " +
                              std::to_string(i));
        rec.label = static_cast<unsigned char>(lab);
        if (rec.label > 9)
            throw FormatError("load_mnist: label out of range at record " +
                              std::to_string(i));
    }
    return out;
}

void write_idx_images(const std::filesystem::path& path,
                      const std::vector<GrayImage>& images) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("write_idx_images: cannot open " + path.string());
    const int rows = images.empty() ? 0 : images.front().rows;
    const int cols = images.empty() ? 0 : images.front().cols;
    write_be32(out, kImagesMagic);
    write_be32(out, static_cast<std::uint32_t>(images.size()));
    write_be32(out, static_cast<std::uint32_t>(rows));
    write_be32(out, static_cast<std::uint32_t>(cols));
    for (const GrayImage& img : images)
        out.write(reinterpret_cast<const char*>(img.px.data()),
                  static_cast<std::streamsize>(img.px.size()));
}

void write_idx_labels(const std::filesystem::path& path,
                      const std::vector<std::uint8_t>& labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("write_idx_labels: cannot open " + path.string());
    write_be32(out, kLabelsMagic);
    write_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.write(reinterpret_cast<const char*>(labels.data()),
              static_cast<std::streamsize>(labels.size()));
}

BinaryImage binarize(const GrayImage& gray, int threshold) {
    BinaryImage img(gray.rows, gray.cols);
    for (int r = 0; r < gray.rows; ++r)
        for (int c = 0; c < gray.cols; ++c)
            img.set(r, c, gray.at(r, c) >= threshold ? 1 : 0);
    return img;
}

BinaryImage despeckle(const BinaryImage& img) {
    BinaryImage out = img;
    for (int r = 0; r < img.rows(); ++r) {
        for (int c = 0; c < img.cols(); ++c) {
            if (!img.is_white(r, c)) continue;
            bool has_white_neighbor = false;
            for (const auto& [dr, dc] : kKingOffsets) {
                const int rr = r + dr, cc = c + dc;
                if (img.in_bounds(rr, cc) && img.is_white(rr, cc)) {
                    has_white_neighbor = true;
                    break;
                }
            }
            if (!has_white_neighbor) out.set(r, c, 0);
        }
    }
    return out;
}

BinaryImage add_noise(const BinaryImage& img, int pct, std::uint64_t seed) {
    if (pct < 0 || pct > 50)
        throw std::out_of_range("add_noise: noise percentage must be in 0..50");
    const int flips =
        static_cast<int>(std::lround(pct / 100.0 * img.size()));
    BinaryImage out = img;
    Rng rng(seed);
    for (int idx : rng.sample_without_replacement(img.size(), flips))
        out.flip(idx / img.cols(), idx % img.cols());
    return out;
}

std::vector<NoisySample> generate_noisy_set(const MemorySet& ms, std::uint64_t seed,
                                            const std::vector<int>& levels,
                                            int per_level) {
    if (!ms.finalized())
        throw PipelineError("generate_noisy_set: memory set is not finalized");
    std::vector<NoisySample> out;
    out.reserve(static_cast<std::size_t>(kNumPatterns) * levels.size() * per_level);
    int sample_id = 0;
    for (const MemoryPattern& p : ms.patterns) {
        for (int level : levels) {
            for (int k = 0; k < per_level; ++k) {
                NoisySample s;
                s.true_label = p.label;
                s.noise_pct = level;
                s.sample_id = sample_id++;
                s.seed = mix_seed(seed, static_cast<std::uint64_t>(p.label),
                                  static_cast<std::uint64_t>(level),
                                  static_cast<std::uint64_t>(k));
                s.image = add_noise(p.stored, level, s.seed);
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

void write_noisy_set(const std::filesystem::path& dir,
                     const std::vector<NoisySample>& samples) {
    std::filesystem::create_directories(dir);
    std::ofstream manifest(dir / "manifest.csv", std::ios::binary);
    if (!manifest)
        throw FormatError("write_noisy_set: cannot open manifest in " + dir.string());
    manifest << "sample_id,digit,level,seed,path\n";
    for (const NoisySample& s : samples) {
        std::ostringstream name;
        name << "sample_" << s.sample_id << "_d" << s.true_label << "_n"
             << s.noise_pct << ".pgm";
        write_pgm(dir / name.str(), s.image);
        manifest << s.sample_id << ',' << s.true_label << ',' << s.noise_pct << ','
                 << s.seed << ',' << name.str() << '\n';
    }
}

std::vector<NoisySample> read_noisy_set(const std::filesystem::path& dir) {
    std::ifstream manifest(dir / "manifest.csv", std::ios::binary);
    if (!manifest)
        throw FormatError("read_noisy_set: cannot open manifest in " + dir.string());
    std::string line;
    if (!std::getline(manifest, line) || line.rfind("sample_id,", 0) != 0)
        throw FormatError("read_noisy_set: bad manifest header in " + dir.string());
    std::vector<NoisySample> out;
    while (std::getline(manifest, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        NoisySample s;
        std::string path;
        char comma;
        if (!(row >> s.sample_id >> comma >> s.true_label >> comma >> s.noise_pct >>
              comma >> s.seed >> comma))
            throw FormatError("read_noisy_set: bad manifest row '" + line + "'");
        std::getline(row, path);
        s.image = read_pgm_binary(dir / path);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace molmem
