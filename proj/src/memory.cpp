#include "molmem/memory.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "molmem/errors.hpp"

namespace molmem {

double MemoryPattern::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

const MemoryPattern& MemorySet::pattern(int label) const {
    if (label < 0 || label >= kNumPatterns)
        throw std::out_of_range("MemorySet: label out of range");
    return patterns[label];
}

MemoryPattern& MemorySet::pattern(int label) {
    if (label < 0 || label >= kNumPatterns)
        throw std::out_of_range("MemorySet: label out of range");
    return patterns[label];
}

bool MemorySet::finalized() const {
    for (const auto& p : patterns)
        if (!p.finalized) return false;
    return true;
}

MemoryPattern make_pattern(int label, int rows, int cols) {
    MemoryPattern p;
    p.label = label;
    p.rows = rows;
    p.cols = cols;
    p.weights.assign(static_cast<std::size_t>(rows) * cols, 0.0);
    p.stored = BinaryImage(rows, cols);

    // all possible unary and pairwise cliques, both colors at every location
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            for (Color color : {Color::Black, Color::White}) {
                const PixelCode center{r, c, color};
                p.full_bag.add(encode_pixel(center));
                for (const auto& [dr, dc] : kKingOffsets) {
                    const int rr = r + dr, cc = c + dc;
                    if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
                    for (Color nb_color : {Color::Black, Color::White})
                        p.full_bag.add(
                            make_pair_strand(center, {rr, cc, nb_color}));
                }
            }
        }
    }
    return p;
}

MemorySet init_memory(int rows, int cols) {
    MemorySet ms;
    ms.rows = rows;
    ms.cols = cols;
    ms.patterns.reserve(kNumPatterns);
    for (int m = 0; m < kNumPatterns; ++m)
        ms.patterns.push_back(make_pattern(m, rows, cols));
    return ms;
}

BinaryImage stored_binary(const MemoryPattern& p) {
    BinaryImage img(p.rows, p.cols);
    for (int r = 0; r < p.rows; ++r)
        for (int c = 0; c < p.cols; ++c)
            img.set(r, c, p.weight_at(r, c) > 0.0 ? 1 : 0);
    return img;
}

void derive_stored(MemoryPattern& p) {
    p.stored = stored_binary(p);
    p.white_bag = make_clique_strands(p.stored);
    p.finalized = true;
}

void save(const MemorySet& ms, const std::filesystem::path& path) {
    if (!ms.finalized())
        throw PipelineError("save: memory set is not finalized");
    std::ofstream out(path, std::ios::binary); // binary keeps LF endings
    if (!out) throw FormatError("save: cannot open " + path.string());
    out << "MOLMEM 1\n" << ms.rows << ' ' << ms.cols << ' ' << kNumPatterns << '\n';
    char buf[32];
    for (const auto& p : ms.patterns) {
        out << "label " << p.label << '\n';
        for (int r = 0; r < p.rows; ++r) {
            for (int c = 0; c < p.cols; ++c) {
                std::snprintf(buf, sizeof(buf), "%.17g", p.weight_at(r, c));
                out << (c ? " " : "") << buf;
            }
            out << '\n';
        }
    }
    if (!out) throw FormatError("save: write failed for " + path.string());
}

MemorySet load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load: cannot open " + path.string());

    std::string magic;
    int version = -1;
    if (!(in >> magic >> version) || magic != "MOLMEM")
        throw FormatError("load: malformed header (expected 'MOLMEM <version>')");
    if (version != 1)
        throw FormatError("load: unsupported version " + std::to_string(version));

    int rows = 0, cols = 0, count = 0;
    if (!(in >> rows >> cols >> count) || rows <= 0 || cols <= 0)
        throw FormatError("load: malformed dimensions line");
    if (count != kNumPatterns)
        throw FormatError("load: incomplete memory set (" + std::to_string(count) +
                          " patterns, need " + std::to_string(kNumPatterns) + ")");

    MemorySet ms = init_memory(rows, cols);
    for (int m = 0; m < kNumPatterns; ++m) {
        std::string key;
        int label = -1;
        if (!(in >> key >> label) || key != "label")
            throw FormatError("load: truncated payload before pattern " +
                              std::to_string(m));
        if (label != m)
            throw FormatError("load: unexpected label " + std::to_string(label));
        MemoryPattern& p = ms.patterns[m];
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (!(in >> p.weight_at(r, c)))
                    throw FormatError("load: truncated weight grid for pattern " +
                                      std::to_string(m));
        derive_stored(p);
    }
    return ms;
}

} // namespace molmem
