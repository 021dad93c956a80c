#pragma once

#include <cstdint>
#include <vector>

#include "exceedkit/family.hpp"

namespace exceedkit {

// Shared parameters of the block-partition constructions: the ground set is
// split into s consecutive blocks of c elements ({(i−1)c+1, …, ic}); each
// output family is indexed by an a-subset A of block indices.
struct BlockParams {
    int s; // number of blocks
    int a; // designated blocks per family
    int c; // block width
    int k; // target ground size, s·c ≤ k

    void validate() const;
    // When 2^c = s/a the family size equals a^a(s−a)^{s−a}/s^s · 2^k exactly.
    bool exact_density() const { return (std::int64_t(a) << c) == s; }
    std::int64_t family_count() const;                // C(s, a)
    std::int64_t expected_block_size() const;         // (2^c−1)^{s−a} · 2^{k−sc}
};

struct ThresholdParams {
    int s, a, c, k;

    void validate() const;
    // d = (a/s)·2^c as an exact pair; m = ⌈d⌉ ≤ 2^{c−1}.
    std::int64_t d_num() const { return std::int64_t(a) << c; }
    std::int64_t d_den() const { return s; }
    std::int64_t m() const { return (d_num() + s - 1) / s; }
    std::int64_t family_count() const;                // C(s, a)
    std::int64_t expected_threshold_size() const;     // m^a (2^c−m)^{s−a} · 2^{k−sc}
};

// Extend families over [s] to [k] by freely adjoining the new elements:
// B'_i = {B ∪ A : B ∈ B_i, A ⊆ [k]∖[s]}. Sizes multiply by 2^{k−s} and
// pairwise incomparability is preserved. Inputs must be pairwise incomparable.
std::vector<Family> upscale(const std::vector<Family>& fams, GroundSize k);

// C(s,⌊s/2⌋) families {B ⊆ [k] : B ∩ [s] = M}, one per ⌊s/2⌋-subset M of [s],
// each of size 2^{k−s}. s = 0 yields the single family P([k]).
std::vector<Family> middle_layer(int s, GroundSize k);

// One family per a-subset A of [s]: membership decided by which block
// intersections are empty (exactly those indexed by A). Families are listed
// by ascending A, members ascending.
std::vector<Family> block_construction(const BlockParams& p);

// Threshold variant: block intersections must lie in a fixed antichain-split
// family D of the m smallest block subsets (by size, ties by ascending mask)
// exactly for the designated blocks.
std::vector<Family> threshold_construction(const ThresholdParams& p);

// The block-local member family D used by threshold_construction, as masks
// relative to one block of width c.
std::vector<mask_t> threshold_small_sets(int c, std::int64_t m);

std::int64_t binomial(int n, int r);

} // namespace exceedkit
