#include "molmem/pgm.hpp"

#include <fstream>

#include "molmem/errors.hpp"

namespace molmem {

namespace {

void write_pgm_bytes(const std::filesystem::path& path, int rows, int cols,
                     const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("write_pgm: cannot open " + path.string());
    out << "P5\n" << cols << ' ' << rows << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError("write_pgm: write failed for " + path.string());
}

// next whitespace-delimited token, skipping '#' comment lines
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {}
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    return tok;
}

int next_int(std::istream& in, const std::string& what) {
    const std::string tok = next_token(in);
    try {
        return std::stoi(tok);
    } catch (const std::exception&) {
        throw FormatError("read_pgm: bad " + what + " '" + tok + "'");
    }
}

} // namespace

void write_pgm(const std::filesystem::path& path, const BinaryImage& img) {
    std::vector<std::uint8_t> bytes(img.pixels().size());
    for (std::size_t i = 0; i < bytes.size(); ++i)
        bytes[i] = img.pixels()[i] ? 255 : 0;
    write_pgm_bytes(path, img.rows(), img.cols(), bytes);
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
    write_pgm_bytes(path, img.rows, img.cols, img.px);
}

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("read_pgm: cannot open " + path.string());
    const std::string magic = next_token(in);
    if (magic != "P2" && magic != "P5")
        throw FormatError("read_pgm: bad magic '" + magic + "' in " + path.string());

    GrayImage img;
    img.cols = next_int(in, "width");
    img.rows = next_int(in, "height");
    const int maxval = next_int(in, "maxval");
    if (img.cols <= 0 || img.rows <= 0 || maxval <= 0 || maxval > 255)
        throw FormatError("read_pgm: bad dimensions/maxval in " + path.string());
    const std::size_t n = static_cast<std::size_t>(img.rows) * img.cols;
    img.px.resize(n);

    if (magic == "P5") {
        // next_token already consumed the single whitespace after maxval
        in.read(reinterpret_cast<char*>(img.px.data()),
                static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n)
            throw FormatError("read_pgm: truncated pixel data in " + path.string());
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const int v = next_int(in, "pixel");
            if (v < 0 || v > maxval)
                throw FormatError("read_pgm: pixel value out of range in " +
                                  path.string());
            img.px[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

BinaryImage read_pgm_binary(const std::filesystem::path& path, int threshold) {
    return binarize(read_pgm(path), threshold);
}

} // namespace molmem
