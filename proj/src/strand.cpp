#include "molmem/strand.hpp"

#include <stdexcept>

namespace molmem {

namespace {

constexpr char kDigitToBase[4] = {'A', 'T', 'G', 'C'};

int base_to_digit(char b) {
    switch (b) {
        case 'A': return 0;
        case 'T': return 1;
        case 'G': return 2;
        case 'C': return 3;
        default: throw std::invalid_argument("invalid base character");
    }
}

char color_base(Color c) { return c == Color::White ? 'A' : 'T'; }

Color base_color(char b) {
    if (b == 'A') return Color::White;
    if (b == 'T') return Color::Black;
    throw std::invalid_argument("invalid color base");
}

PixelCode decode_code_at(std::string_view bases) {
    PixelCode p;
    p.row = decode_index(bases.substr(0, 3));
    p.col = decode_index(bases.substr(3, 3));
    p.color = base_color(bases[6]);
    return p;
}

} // namespace

Base complement(Base b) {
    switch (b) {
        case Base::A: return Base::T;
        case Base::T: return Base::A;
        case Base::G: return Base::C;
        case Base::C: return Base::G;
    }
    throw std::invalid_argument("invalid base");
}

std::array<int, 2> base_vector(Base b) {
    switch (b) {
        case Base::A: return {1, 0};
        case Base::T: return {-1, 0};
        case Base::G: return {0, 1};
        case Base::C: return {0, -1};
    }
    throw std::invalid_argument("invalid base");
}

Strand::Strand(std::string bases) : bases_(std::move(bases)) {
    if (bases_.size() != kUnaryLength && bases_.size() != kPairwiseLength)
        throw std::invalid_argument("Strand: length must be 7 or 14");
    for (char b : bases_) base_to_digit(b);
}

std::string encode_index(int u) {
    if (u < 0 || u > kMaxIndex)
        throw std::out_of_range("encode_index: index out of range");
    std::string out(3, 'A');
    out[0] = kDigitToBase[(u >> 4) & 3];
    out[1] = kDigitToBase[(u >> 2) & 3];
    out[2] = kDigitToBase[u & 3];
    return out;
}

int decode_index(std::string_view triplet) {
    if (triplet.size() != 3)
        throw std::invalid_argument("decode_index: need exactly 3 bases");
    return (base_to_digit(triplet[0]) << 4) | (base_to_digit(triplet[1]) << 2) |
           base_to_digit(triplet[2]);
}

Strand encode_pixel(const PixelCode& p) {
    std::string bases = encode_index(p.row) + encode_index(p.col);
    bases.push_back(color_base(p.color));
    return Strand(std::move(bases));
}

PixelCode decode_pixel(const Strand& s) {
    if (s.kind() != StrandKind::Unary)
        throw std::invalid_argument("decode_pixel: not a unary strand");
    return decode_code_at(s.bases());
}

Strand make_pair_strand(const PixelCode& center, const PixelCode& neighbor) {
    return Strand(encode_pixel(center).bases() + encode_pixel(neighbor).bases());
}

std::pair<PixelCode, PixelCode> decode_pair(const Strand& s) {
    if (s.kind() != StrandKind::Pairwise)
        throw std::invalid_argument("decode_pair: not a pairwise strand");
    const std::string_view b = s.bases();
    return {decode_code_at(b.substr(0, kUnaryLength)),
            decode_code_at(b.substr(kUnaryLength))};
}

Strand complement(const Strand& s) {
    std::string out = s.bases();
    for (char& b : out)
        b = static_cast<char>(complement(static_cast<Base>(b)));
    return Strand(std::move(out));
}

std::vector<std::array<int, 2>> to_vector(const Strand& s) {
    std::vector<std::array<int, 2>> m;
    m.reserve(s.length());
    for (std::size_t i = 0; i < s.length(); ++i) m.push_back(base_vector(s.base(i)));
    return m;
}

bool hybridize(const Strand& a, const Strand& b) {
    if (a.length() != b.length()) return false;
    const auto va = to_vector(a);
    const auto vb = to_vector(b);
    for (std::size_t i = 0; i < va.size(); ++i)
        if (va[i][0] + vb[i][0] != 0 || va[i][1] + vb[i][1] != 0) return false;
    return true;
}

void StrandBag::add(const Strand& s) {
    ++counts_[s.bases()];
    ++size_;
}

void StrandBag::add(const Strand& s, const std::string& tag) {
    add(s);
    tags_[tag].push_back(s.bases());
}

void StrandBag::add_all(const std::vector<Strand>& strands, const std::string& tag) {
    auto& log = tags_[tag];
    for (const Strand& s : strands) {
        add(s);
        log.push_back(s.bases());
    }
}

void StrandBag::remove(const Strand& s) {
    auto it = counts_.find(s.bases());
    if (it == counts_.end())
        throw std::invalid_argument("StrandBag::remove: strand not in bag");
    if (--it->second == 0) counts_.erase(it);
    --size_;
}

void StrandBag::melt(const std::string& tag) {
    auto it = tags_.find(tag);
    if (it == tags_.end())
        throw std::invalid_argument("StrandBag::melt: unknown tag '" + tag + "'");
    for (const std::string& bases : it->second) {
        auto cit = counts_.find(bases);
        if (--cit->second == 0) counts_.erase(cit);
        --size_;
    }
    tags_.erase(it);
}

bool StrandBag::contains(std::string_view bases) const {
    return counts_.find(std::string(bases)) != counts_.end();
}

int StrandBag::count(const Strand& s) const {
    auto it = counts_.find(s.bases());
    return it == counts_.end() ? 0 : it->second;
}

std::vector<Strand> clique_strands(const BinaryImage& img) {
    std::vector<Strand> out;
    out.reserve(static_cast<std::size_t>(img.size()) +
                directed_pair_count(img.rows(), img.cols()));
    for (int r = 0; r < img.rows(); ++r) {
        for (int c = 0; c < img.cols(); ++c) {
            const PixelCode center{r, c,
                                   img.is_white(r, c) ? Color::White : Color::Black};
            out.push_back(encode_pixel(center));
            for (const auto& [dr, dc] : kKingOffsets) {
                const int rr = r + dr, cc = c + dc;
                if (!img.in_bounds(rr, cc)) continue;
                const PixelCode nb{rr, cc,
                                   img.is_white(rr, cc) ? Color::White : Color::Black};
                out.push_back(make_pair_strand(center, nb));
            }
        }
    }
    return out;
}

StrandBag make_clique_strands(const BinaryImage& img) {
    StrandBag bag(BagOrigin::Image);
    for (const Strand& s : clique_strands(img)) bag.add(s);
    return bag;
}

std::vector<Strand> probe_strands(const BinaryImage& img) {
    std::vector<Strand> out = clique_strands(img);
    for (Strand& s : out) s = complement(s);
    return out;
}

StrandBag make_probe_strands(const BinaryImage& img) {
    StrandBag bag(BagOrigin::Image);
    for (const Strand& s : probe_strands(img)) bag.add(s);
    return bag;
}

} // namespace molmem
