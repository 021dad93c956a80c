#include "exceedkit/sequence.hpp"

#include <algorithm>
#include <bit>

namespace exceedkit {

ExceedCheck check_d_exceeding(std::span<const mask_t> sets, int d) {
    if (d < 0) throw usage_error("exceedance d must be >= 0");
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const std::size_t hi = std::min(sets.size(), i + std::size_t(d) + 1);
        for (std::size_t j = i + 1; j < hi; ++j)
            if (mask_superset(sets[i], sets[j])) return {false, std::make_pair(i, j)};
    }
    return {true, std::nullopt};
}

ExceedCheck check_d_exceeding(const std::vector<Family>& fams, int d) {
    if (d < 0) throw usage_error("exceedance d must be >= 0");
    for (std::size_t i = 1; i < fams.size(); ++i)
        require_same_ground(fams[0].ground(), fams[i].ground(), "check_d_exceeding");
    for (std::size_t i = 0; i < fams.size(); ++i) {
        const std::size_t hi = std::min(fams.size(), i + std::size_t(d) + 1);
        for (std::size_t j = i + 1; j < hi; ++j)
            if (!vdash(fams[i], fams[j])) return {false, std::make_pair(i, j)};
    }
    return {true, std::nullopt};
}

std::size_t max_exceedance(std::span<const mask_t> sets) {
    if (sets.empty()) throw usage_error("max_exceedance: empty sequence");
    // The predicate is monotone in d, so the answer is (smallest violating
    // gap) − 1; with no violating pair at all, the sentinel len(seq).
    std::size_t min_gap = sets.size() + 1;
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < std::min(sets.size(), i + min_gap); ++j)
            if (mask_superset(sets[i], sets[j])) {
                min_gap = j - i;
                break;
            }
    return min_gap > sets.size() ? sets.size() : min_gap - 1;
}

SetSeq::SetSeq(GroundSize ground, std::vector<mask_t> sets, int d)
    : k_(ground), sets_(std::move(sets)), d_(d) {
    for (mask_t m : sets_)
        if (m > k_.full_mask())
            throw usage_error("sequence mask " + std::to_string(m) + " out of range");
    const ExceedCheck c = check_d_exceeding(sets_, d_);
    if (!c.ok)
        throw usage_error("sequence is not " + std::to_string(d_) + "-exceeding: positions " +
                          std::to_string(c.violation->first) + " and " +
                          std::to_string(c.violation->second));
}

FamilySeq::FamilySeq(std::vector<Family> items, int d) : items_(std::move(items)), d_(d) {
    if (items_.empty()) throw usage_error("family sequence must be nonempty");
    const ExceedCheck c = check_d_exceeding(items_, d_);
    if (!c.ok)
        throw usage_error("family sequence is not " + std::to_string(d_) +
                          "-exceeding: positions " + std::to_string(c.violation->first) +
                          " and " + std::to_string(c.violation->second));
}

FamilySeq cyclic_family_sequence(const std::vector<Family>& fams, std::size_t l) {
    if (fams.empty()) throw usage_error("cyclic_family_sequence: need at least one family");
    if (auto v = pairwise_incomparable_violation(fams))
        throw usage_error("cyclic_family_sequence: families " + std::to_string(v->i) + " and " +
                          std::to_string(v->j) + " are not incomparable");
    std::vector<Family> items;
    items.reserve(l);
    for (std::size_t i = 0; i < l; ++i) items.push_back(fams[i % fams.size()]);
    return FamilySeq(std::move(items), int(fams.size()) - 1);
}

namespace {
// Non-decreasing cardinality, ties by ascending mask.
std::vector<mask_t> by_size_then_mask(std::vector<mask_t> ms) {
    std::sort(ms.begin(), ms.end(), [](mask_t a, mask_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    return ms;
}
} // namespace

SetSeq flatten_to_sets(const FamilySeq& fs, std::size_t b) {
    for (const Family& f : fs.items())
        if (f.size() != b)
            throw usage_error("flatten_to_sets: family size " + std::to_string(f.size()) +
                              " != b = " + std::to_string(b));
    std::vector<mask_t> out;
    out.reserve(fs.length() * b);
    for (const Family& f : fs.items())
        for (mask_t m : by_size_then_mask(f.members())) out.push_back(m);
    return SetSeq(fs.ground(), std::move(out), fs.d() * int(b));
}

int anchor_split_exceedance(int k) {
    return (1 << k) - (1 << (k / 2)) - (1 << ((k + 1) / 2)) + 1;
}

SetSeq anchor_split_sequence(GroundSize k) {
    if (k.value() < 2) throw usage_error("anchor_split_sequence: k must be >= 2");
    const mask_t anchor = (mask_t{1} << (k.value() / 2)) - 1;
    const Family just_anchor(k, {anchor});
    const std::vector<char> down = down_closure_table(just_anchor);
    const std::vector<char> up = up_closure_table(just_anchor);

    std::vector<mask_t> subs, rest, sups;
    for (mask_t m = 0; m < k.subset_count(); ++m) {
        if (down[m]) subs.push_back(m);
        if (up[m]) sups.push_back(m);
        if (!down[m] && !up[m]) rest.push_back(m);
    }
    std::vector<mask_t> out = by_size_then_mask(std::move(subs));
    for (mask_t m : by_size_then_mask(std::move(rest))) out.push_back(m);
    for (mask_t m : by_size_then_mask(std::move(sups))) out.push_back(m);

    SetSeq seq(k, std::move(out), anchor_split_exceedance(k.value()));
    if (seq.length() != std::size_t(k.subset_count()) + 1)
        throw check_failure("anchor_split_sequence: unexpected length");
    return seq;
}

namespace {
// Masks under the element-i ↔ bit-(i−1) encoding.
constexpr mask_t S(std::initializer_list<int> elems) {
    mask_t m = 0;
    for (int e : elems) m |= mask_t{1} << (e - 1);
    return m;
}
} // namespace

std::vector<std::string> builtin_witness_names() { return {"k3_len10", "k4_len24"}; }

SetSeq builtin_witness(const std::string& name) {
    if (name == "k3_len10") {
        // ∅, 1, 2, 3, 23, 1, 12, 13, 23, 123
        std::vector<mask_t> sets = {S({}),  S({1}),    S({2}),    S({3}),    S({2, 3}),
                                    S({1}), S({1, 2}), S({1, 3}), S({2, 3}), S({1, 2, 3})};
        return SetSeq(GroundSize(3), std::move(sets), 3);
    }
    if (name == "k4_len24") {
        // ∅, 1, 2, 3, 4, 23, 24, 34, 1, 12, 13, 14, 23, 24, 34, 234,
        // 12, 13, 14, 123, 124, 134, 234, 1234
        std::vector<mask_t> sets = {
            S({}),        S({1}),       S({2}),       S({3}),        S({4}),       S({2, 3}),
            S({2, 4}),    S({3, 4}),    S({1}),       S({1, 2}),     S({1, 3}),    S({1, 4}),
            S({2, 3}),    S({2, 4}),    S({3, 4}),    S({2, 3, 4}),  S({1, 2}),    S({1, 3}),
            S({1, 4}),    S({1, 2, 3}), S({1, 2, 4}), S({1, 3, 4}),  S({2, 3, 4}), S({1, 2, 3, 4})};
        return SetSeq(GroundSize(4), std::move(sets), 6);
    }
    throw usage_error("unknown witness name: " + name);
}

} // namespace exceedkit
