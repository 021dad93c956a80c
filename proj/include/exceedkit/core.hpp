#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "exceedkit/family.hpp"

namespace exceedkit {

// a ⊇ b on raw masks.
constexpr bool mask_superset(mask_t a, mask_t b) { return (b & ~a) == 0; }
constexpr bool mask_incomparable(mask_t a, mask_t b) {
    return !mask_superset(a, b) && !mask_superset(b, a);
}

bool superset(const Subset& a, const Subset& b);
bool incomparable(const Subset& a, const Subset& b);

// F ⊢ G: no A ∈ F contains a B ∈ G. Asymmetric.
bool vdash(const Family& f, const Family& g);

struct VdashViolation {
    mask_t container; // member of F
    mask_t contained; // member of G
};
// First (by F order, then G order) witness of a vdash failure, if any.
std::optional<VdashViolation> vdash_violation(const Family& f, const Family& g);

struct PairwiseViolation {
    std::size_t i, j; // family indices, i < j
    mask_t container, contained;
};
// Every cross pair of sets from distinct families is incomparable.
// Fewer than two families is vacuously true.
bool pairwise_incomparable(const std::vector<Family>& fams);
std::optional<PairwiseViolation> pairwise_incomparable_violation(const std::vector<Family>& fams);

// All subsets of members of F / all supersets of members of F.
// Computed by a 2^k bit-array sweep: O(2^k * k) regardless of |F|.
Family down_closure(const Family& f);
Family up_closure(const Family& f);

// Membership tables over P([k]) for the closures; index = mask.
std::vector<char> down_closure_table(const Family& f);
std::vector<char> up_closure_table(const Family& f);

struct Fraction {
    std::uint64_t num, den; // reduced
};
Fraction make_fraction(std::uint64_t num, std::uint64_t den);

// Exact cardinalities behind the correlation inequality
//   |X̂|/2^k · |X̌|/2^k ≥ |X̂ ∩ X̌|/2^k ≥ |X|/2^k.
// Counts are exact; fractions all share denominator 2^k, so callers can
// compare with integer cross-multiplication (no tolerance anywhere).
struct KleitmanCounts {
    std::uint64_t down_count, up_count, meet_count, family_count;
    int k;

    // |X̂|·|X̌| ≥ 2^k·|X̂∩X̌|
    bool product_inequality_holds() const {
        return down_count * up_count >= (std::uint64_t{1} << k) * meet_count;
    }
    // |X̂∩X̌| ≥ |X|
    bool meet_inequality_holds() const { return meet_count >= family_count; }

    std::array<Fraction, 4> fractions() const; // over denominator 2^k, reduced
};
KleitmanCounts kleitman_ratios(const Family& f);

} // namespace exceedkit
