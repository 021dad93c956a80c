#include "exceedkit/construct.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "exceedkit/core.hpp"

namespace exceedkit {

std::int64_t binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    std::int64_t out = 1;
    for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

void BlockParams::validate() const {
    if (a < 1 || 2 * a > s) throw usage_error("block params: need 1 <= a <= s/2");
    if (c < 1) throw usage_error("block params: need c >= 1");
    if (std::int64_t(s) * c > k) throw usage_error("block params: need s*c <= k");
    GroundSize(k); // range check
}

std::int64_t BlockParams::family_count() const { return binomial(s, a); }

std::int64_t BlockParams::expected_block_size() const {
    std::int64_t size = std::int64_t{1} << (k - s * c);
    for (int i = 0; i < s - a; ++i) size *= (std::int64_t{1} << c) - 1;
    return size;
}

void ThresholdParams::validate() const {
    BlockParams{s, a, c, k}.validate();
    if (m() > (std::int64_t{1} << (c - 1)))
        throw usage_error("threshold params: ceil(d) exceeds 2^(c-1)");
}

std::int64_t ThresholdParams::family_count() const { return binomial(s, a); }

std::int64_t ThresholdParams::expected_threshold_size() const {
    std::int64_t size = std::int64_t{1} << (k - s * c);
    for (int i = 0; i < a; ++i) size *= m();
    for (int i = 0; i < s - a; ++i) size *= (std::int64_t{1} << c) - m();
    return size;
}

std::vector<Family> upscale(const std::vector<Family>& fams, GroundSize k) {
    if (fams.empty()) return {};
    const GroundSize s = fams.front().ground();
    if (s.value() > k.value()) throw usage_error("upscale: source ground exceeds target");
    if (auto v = pairwise_incomparable_violation(fams))
        throw usage_error("upscale: input families " + std::to_string(v->i) + " and " +
                          std::to_string(v->j) + " are not incomparable");
    if (s.value() == k.value()) return fams;

    const mask_t high = k.full_mask() & ~s.full_mask();
    std::vector<Family> out;
    out.reserve(fams.size());
    for (const Family& f : fams) {
        std::vector<mask_t> members;
        members.reserve(f.size() << std::popcount(high));
        for (mask_t m : f.members()) {
            // Enumerate all submasks of `high`, including 0.
            mask_t add = 0;
            do {
                members.push_back(m | add);
                add = (add - high) & high;
            } while (add != 0);
        }
        out.emplace_back(k, std::move(members));
    }
    return out;
}

namespace {
// All r-subsets of [n] as masks, ascending.
std::vector<mask_t> subsets_of_size(int n, int r) {
    std::vector<mask_t> out;
    for (mask_t m = 0; m < (mask_t{1} << n); ++m)
        if (std::popcount(m) == r) out.push_back(m);
    return out;
}
} // namespace

std::vector<Family> middle_layer(int s, GroundSize k) {
    if (s < 0 || s > k.value()) throw usage_error("middle_layer: need 0 <= s <= k");
    if (s == 0) return {Family::full_powerset(k)};
    const mask_t low = (mask_t{1} << s) - 1;
    std::vector<Family> out;
    for (mask_t mid : subsets_of_size(s, s / 2)) {
        std::vector<mask_t> members;
        for (mask_t m = 0; m < k.subset_count(); ++m)
            if ((m & low) == mid) members.push_back(m);
        out.emplace_back(k, std::move(members));
    }
    return out;
}

namespace {

// Core of both block constructions: per block i, a family is the product of
// per-block choices — `designated` subsets for i ∈ A, the complement choices
// otherwise. Built over [s·c], then upscaled to k.
std::vector<Family> product_block_families(int s, int a, int c, GroundSize k,
                                           const std::vector<mask_t>& designated_local) {
    const GroundSize base(s * c);
    const mask_t block_full = (mask_t{1} << c) - 1;

    std::vector<mask_t> other_local;
    for (mask_t m = 0; m <= block_full; ++m)
        if (!std::binary_search(designated_local.begin(), designated_local.end(), m))
            other_local.push_back(m);

    std::vector<Family> fams;
    for (mask_t A : subsets_of_size(s, a)) {
        std::vector<mask_t> members{0};
        for (int i = 0; i < s; ++i) {
            const bool designated = (A >> i) & 1;
            const std::vector<mask_t>& choices = designated ? designated_local : other_local;
            std::vector<mask_t> next;
            next.reserve(members.size() * choices.size());
            for (mask_t head : members)
                for (mask_t ch : choices) next.push_back(head | (ch << (i * c)));
            members = std::move(next);
        }
        fams.emplace_back(base, std::move(members));
    }
    return upscale(fams, k);
}

} // namespace

std::vector<Family> block_construction(const BlockParams& p) {
    p.validate();
    // Designated blocks contribute exactly the empty intersection.
    return product_block_families(p.s, p.a, p.c, GroundSize(p.k), {0});
}

std::vector<mask_t> threshold_small_sets(int c, std::int64_t m) {
    std::vector<mask_t> all(std::size_t{1} << c);
    for (mask_t i = 0; i < all.size(); ++i) all[i] = i;
    std::sort(all.begin(), all.end(), [](mask_t x, mask_t y) {
        const int px = std::popcount(x), py = std::popcount(y);
        return px != py ? px < py : x < y;
    });
    all.resize(std::size_t(m));
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<Family> threshold_construction(const ThresholdParams& p) {
    p.validate();
    return product_block_families(p.s, p.a, p.c, GroundSize(p.k),
                                  threshold_small_sets(p.c, p.m()));
}

} // namespace exceedkit
