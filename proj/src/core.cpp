#include "exceedkit/core.hpp"

#include <numeric>

namespace exceedkit {

bool superset(const Subset& a, const Subset& b) {
    require_same_ground(a.k, b.k, "superset");
    return mask_superset(a.mask, b.mask);
}

bool incomparable(const Subset& a, const Subset& b) {
    require_same_ground(a.k, b.k, "incomparable");
    return mask_incomparable(a.mask, b.mask);
}

namespace {

// Pairwise scan, the literal definition.
std::optional<VdashViolation> vdash_scan(const Family& f, const Family& g) {
    for (mask_t a : f.members())
        for (mask_t b : g.members())
            if (mask_superset(a, b)) return VdashViolation{a, b};
    return std::nullopt;
}

// Closure route: F ⊢ G iff G avoids the down-closure of F.
// O(2^k·k + |G|); wins when |F|·|G| is large.
std::optional<VdashViolation> vdash_via_closure(const Family& f, const Family& g) {
    std::vector<char> down = down_closure_table(f);
    for (mask_t b : g.members()) {
        if (!down[b]) continue;
        // Recover the first containing member of F for the report.
        for (mask_t a : f.members())
            if (mask_superset(a, b)) return VdashViolation{a, b};
    }
    return std::nullopt;
}

} // namespace

std::optional<VdashViolation> vdash_violation(const Family& f, const Family& g) {
    require_same_ground(f.ground(), g.ground(), "vdash");
    const std::uint64_t pairs = std::uint64_t{f.size()} * g.size();
    const std::uint64_t sweep =
        std::uint64_t{f.ground().subset_count()} * std::uint64_t(f.ground().value());
    if (pairs <= sweep) return vdash_scan(f, g);
    // First-violation order differs between routes; the closure route only
    // pre-filters, the report is recomputed in definition order above.
    return vdash_via_closure(f, g);
}

bool vdash(const Family& f, const Family& g) { return !vdash_violation(f, g).has_value(); }

std::optional<PairwiseViolation> pairwise_incomparable_violation(const std::vector<Family>& fams) {
    for (std::size_t i = 1; i < fams.size(); ++i)
        require_same_ground(fams[0].ground(), fams[i].ground(), "pairwise_incomparable");
    for (std::size_t i = 0; i < fams.size(); ++i) {
        for (std::size_t j = i + 1; j < fams.size(); ++j) {
            if (auto v = vdash_violation(fams[i], fams[j]))
                return PairwiseViolation{i, j, v->container, v->contained};
            if (auto v = vdash_violation(fams[j], fams[i]))
                return PairwiseViolation{i, j, v->container, v->contained};
        }
    }
    return std::nullopt;
}

bool pairwise_incomparable(const std::vector<Family>& fams) {
    return !pairwise_incomparable_violation(fams).has_value();
}

std::vector<char> down_closure_table(const Family& f) {
    const GroundSize k = f.ground();
    std::vector<char> marked(k.subset_count(), 0);
    for (mask_t m : f.members()) marked[m] = 1;
    for (int e = 0; e < k.value(); ++e) {
        const mask_t bit = mask_t{1} << e;
        for (mask_t m = 0; m < marked.size(); ++m)
            if ((m & bit) && marked[m]) marked[m ^ bit] = 1;
    }
    return marked;
}

std::vector<char> up_closure_table(const Family& f) {
    const GroundSize k = f.ground();
    std::vector<char> marked(k.subset_count(), 0);
    for (mask_t m : f.members()) marked[m] = 1;
    for (int e = 0; e < k.value(); ++e) {
        const mask_t bit = mask_t{1} << e;
        for (mask_t m = marked.size(); m-- > 0;)
            if (!(m & bit) && marked[m]) marked[m | bit] = 1;
    }
    return marked;
}

namespace {
Family table_to_family(GroundSize k, const std::vector<char>& table) {
    std::vector<mask_t> members;
    for (mask_t m = 0; m < table.size(); ++m)
        if (table[m]) members.push_back(m);
    return Family(k, std::move(members));
}
} // namespace

Family down_closure(const Family& f) { return table_to_family(f.ground(), down_closure_table(f)); }
Family up_closure(const Family& f) { return table_to_family(f.ground(), up_closure_table(f)); }

Fraction make_fraction(std::uint64_t num, std::uint64_t den) {
    const std::uint64_t g = std::gcd(num, den);
    return Fraction{g ? num / g : num, g ? den / g : den};
}

std::array<Fraction, 4> KleitmanCounts::fractions() const {
    const std::uint64_t den = std::uint64_t{1} << k;
    return {make_fraction(down_count, den), make_fraction(up_count, den),
            make_fraction(meet_count, den), make_fraction(family_count, den)};
}

KleitmanCounts kleitman_ratios(const Family& f) {
    const std::vector<char> down = down_closure_table(f);
    const std::vector<char> up = up_closure_table(f);
    KleitmanCounts c{0, 0, 0, f.size(), f.ground().value()};
    for (mask_t m = 0; m < down.size(); ++m) {
        c.down_count += down[m];
        c.up_count += up[m];
        c.meet_count += down[m] && up[m];
    }
    return c;
}

} // namespace exceedkit
