#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exceedkit/core.hpp"
#include "exceedkit/family.hpp"

namespace exceedkit {

struct ExceedCheck {
    bool ok;
    // First violating pair, 0-based positions (i, j) with i < j, j - i ≤ d and
    // item_i ⊇ item_j (for families: some member of item_i contains one of item_j).
    std::optional<std::pair<std::size_t, std::size_t>> violation;
};

// B_i ⊉ B_j for all i < j with j − i ≤ d.
ExceedCheck check_d_exceeding(std::span<const mask_t> sets, int d);
ExceedCheck check_d_exceeding(const std::vector<Family>& fams, int d);

// Sentinel returned by max_exceedance when no window size ever fails
// (every gap between comparable positions exceeds the sequence length):
// the sequence is d-exceeding for every d, so the value is len(seq).
// Otherwise: max d for which the sequence is d-exceeding (possibly 0).
std::size_t max_exceedance(std::span<const mask_t> sets);

// A sequence of subsets of [k] whose claimed exceedance d has been verified.
class SetSeq {
  public:
    SetSeq(GroundSize ground, std::vector<mask_t> sets, int d);

    GroundSize ground() const { return k_; }
    const std::vector<mask_t>& sets() const { return sets_; }
    std::size_t length() const { return sets_.size(); }
    int d() const { return d_; }

  private:
    GroundSize k_;
    std::vector<mask_t> sets_;
    int d_;
};

// A sequence of families with verified exceedance d.
class FamilySeq {
  public:
    FamilySeq(std::vector<Family> items, int d);

    GroundSize ground() const { return items_.front().ground(); }
    const std::vector<Family>& items() const { return items_; }
    std::size_t length() const { return items_.size(); }
    int d() const { return d_; }

  private:
    std::vector<Family> items_;
    int d_;
};

// Repeat r pairwise incomparable families cyclically to length l.
// The result is (r−1)-exceeding.
FamilySeq cyclic_family_sequence(const std::vector<Family>& fams, std::size_t l);

// Lemma route from family sequences to set sequences: emit each family's
// members by non-decreasing cardinality (ties by ascending mask). Every
// family must have size exactly b; the result is (d·b)-exceeding.
SetSeq flatten_to_sets(const FamilySeq& fs, std::size_t b);

// The length-(2^k + 1) sequence with the largest window that still admits
// that length: all subsets of an anchor A = {1,…,⌊k/2⌋}, then everything
// incomparable to A, then all supersets of A, each block by non-decreasing
// size (ties by mask). A appears twice, exactly d+1 apart, where
// d = 2^k − 2^⌊k/2⌋ − 2^⌈k/2⌉ + 1. Verified d-exceeding on construction.
SetSeq anchor_split_sequence(GroundSize k);
int anchor_split_exceedance(int k);

// Named witness sequences shipped with the library, re-verified on access.
//   "k3_len10": the 3-exceeding sequence of length 10 over [3]
//   "k4_len24": the 6-exceeding sequence of length 24 over [4]
SetSeq builtin_witness(const std::string& name);
std::vector<std::string> builtin_witness_names();

} // namespace exceedkit
