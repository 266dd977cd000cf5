#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "molmem/image.hpp"
#include "molmem/strand.hpp"

namespace molmem {

// Hybridization-derived clique potentials: unary V1 per pixel and pairwise V2
// per (center pixel, king-offset slot). Off-lattice slots stay 0.
class PotentialField {
public:
    PotentialField(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::uint8_t v1(int r, int c) const { return v1_[index(r, c)]; }
    void set_v1(int r, int c, std::uint8_t v) { v1_[index(r, c)] = v ? 1 : 0; }

    std::uint8_t v2(int r, int c, int slot) const { return v2_[index(r, c)][slot]; }
    void set_v2(int r, int c, int slot, std::uint8_t v) {
        v2_[index(r, c)][slot] = v ? 1 : 0;
    }

    // sum of pairwise potentials centered at (r, c)
    int pair_sum(int r, int c) const;

private:
    std::size_t index(int r, int c) const;

    int rows_;
    int cols_;
    std::vector<std::uint8_t> v1_;
    std::vector<std::array<std::uint8_t, 8>> v2_;
};

// slot of a neighbor offset in kKingOffsets; throws on a non-king offset
int offset_slot(int dr, int dc);

// For each clique of the probed image, potential = 1 iff its probe strand
// finds a complementary strand in the memory bag.
PotentialField compute_potentials(const StrandBag& memory_bag,
                                  const StrandBag& probe_bag, int rows, int cols);

// U = -sum_ij [ V1(ij) + sum_kl V2(ij, kl) ]; lower = better agreement.
double energy(const PotentialField& pf);

// exp(V1 + sumV2) / (1 + exp(V1 + sumV2))
double cond_prob(int v1, int sum_v2);

// sum over foreground pixels (w > 0) of w * (V1 + sumV2) / (1 + |N_ij|)
double weighted_score(const std::vector<double>& weights, const PotentialField& pf);

std::vector<double> softmax(const std::vector<double>& scores);

} // namespace molmem
