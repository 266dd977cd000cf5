#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "molmem/image.hpp"

namespace molmem {

inline constexpr int kUnaryLength = 7;
inline constexpr int kPairwiseLength = 14;
inline constexpr int kMaxIndex = 63; // three base-4 digits

enum class Base : char { A = 'A', T = 'T', G = 'G', C = 'C' };
enum class Color : std::uint8_t { Black = 0, White = 1 };
enum class StrandKind { Unary, Pairwise };

Base complement(Base b);

// A -> [1,0], T -> [-1,0], G -> [0,1], C -> [0,-1]
std::array<int, 2> base_vector(Base b);

struct PixelCode {
    int row = 0;
    int col = 0;
    Color color = Color::Black;
    bool operator==(const PixelCode&) const = default;
};

// A single-stranded DNA molecule: 7 bases (unary clique) or 14 (pairwise).
class Strand {
public:
    explicit Strand(std::string bases);

    StrandKind kind() const {
        return bases_.size() == kUnaryLength ? StrandKind::Unary : StrandKind::Pairwise;
    }
    std::size_t length() const { return bases_.size(); }
    const std::string& bases() const { return bases_; }
    Base base(std::size_t i) const { return static_cast<Base>(bases_[i]); }

    bool operator==(const Strand&) const = default;

private:
    std::string bases_;
};

// Base-4 positional encoding, most significant digit first: 0->A 1->T 2->G 3->C.
std::string encode_index(int u);
int decode_index(std::string_view triplet);

Strand encode_pixel(const PixelCode& p);
PixelCode decode_pixel(const Strand& s);

Strand make_pair_strand(const PixelCode& center, const PixelCode& neighbor);
std::pair<PixelCode, PixelCode> decode_pair(const Strand& s);

Strand complement(const Strand& s);

// 2 x n matrix, one column per base.
std::vector<std::array<int, 2>> to_vector(const Strand& s);

// True iff equal lengths and the column-wise vector sum is the zero matrix.
bool hybridize(const Strand& a, const Strand& b);

enum class BagOrigin { Memory, Image };

// Multiset of strands with tagged additions; melt(tag) undoes one addition.
class StrandBag {
public:
    explicit StrandBag(BagOrigin origin = BagOrigin::Memory) : origin_(origin) {}

    BagOrigin origin() const { return origin_; }

    void add(const Strand& s);
    void add(const Strand& s, const std::string& tag);
    void add_all(const std::vector<Strand>& strands, const std::string& tag);

    // removes one copy; throws std::invalid_argument if absent
    void remove(const Strand& s);

    // removes exactly the strands added under `tag`; unknown tag throws
    void melt(const std::string& tag);

    bool contains(const Strand& s) const { return count(s) > 0; }
    bool contains(std::string_view bases) const;
    int count(const Strand& s) const;
    std::size_t size() const { return size_; }

    template <typename F>
    void for_each(F&& f) const {
        for (const auto& [bases, n] : counts_) f(Strand(bases), n);
    }

    bool operator==(const StrandBag& other) const {
        return counts_ == other.counts_;
    }

private:
    BagOrigin origin_;
    std::unordered_map<std::string, int> counts_;
    std::unordered_map<std::string, std::vector<std::string>> tags_;
    std::size_t size_ = 0;
};

// All unary and pairwise clique strands of an image: one unary strand per
// pixel and one pairwise strand per ordered (center, neighbor) king pair.
std::vector<Strand> clique_strands(const BinaryImage& img);
StrandBag make_clique_strands(const BinaryImage& img);

// Same cliques, every strand complemented (the image-side hybridization input).
std::vector<Strand> probe_strands(const BinaryImage& img);
StrandBag make_probe_strands(const BinaryImage& img);

} // namespace molmem
