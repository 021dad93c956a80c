#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exceedkit::bounds {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// a^a (s−a)^{s−a} / s^s, the family-size density of the exact block
// construction (the 2^k factor removed). Requires 1 ≤ a ≤ s/2.
BigRat density_exact(int s, int a);

// (r−1)^{r−1}/r^r lies strictly between 1/(er) and 1/(e(r−1)).
// Evaluated in extended-precision floating arithmetic; margins shrink only
// like 1/r, far above rounding error for any reasonable r.
struct IntervalCheck {
    bool holds;
    double lower, value, upper;
};
IntervalCheck constant_r_interval_check(int r);

// The finite lower bounds on the maximal pumping window δ(k).
struct LowerBounds {
    std::int64_t middle_antichain;               // C(k,⌊k/2⌋) − 1
    std::optional<std::int64_t> block_s4_a2;     // (5/16)·2^k, k ≥ 4
    std::optional<std::int64_t> block_power2;    // (1−1/r)^r·2^k, r below
    int power2_r = 0;                            // largest 2^j with j·2^j ≤ k
    double near_e;                               // (1−2·log2k/k)·2^k/e, clamped at 0
    std::int64_t best;                           // max of the integer entries
};
LowerBounds delta_lower_bounds(int k);

// max{d ∈ ℕ : d^d/(d+1)^{d+1} · 2^k ≥ 1}, maximized with certified integer
// arithmetic (dyadic interval powering with escalating precision; exact ties
// are impossible for d ≥ 2, so the comparison always resolves). The result is
// provably < 2^k/e.
std::int64_t conjecture_upper(int k);

// Exact condition 2^k · d^d ≥ (d+1)^{d+1}, decided without floating point.
bool conjecture_condition(std::int64_t d, int k);

// The family-size density bound for windows of width r−1:
// 1/(2r) for even r; r − √(r²−1) for odd r (the root of β² − 2rβ + 1 = 0).
struct BetaValue {
    bool exact;           // true for even r
    BigRat rational;      // meaningful when exact
    double value;
    double residual;      // |β² − 2rβ + 1|, ~0 for odd r
};
BetaValue beta_general_r(int r);

// 2^{k−1} − 2, k ≥ 3.
std::int64_t halving_upper_bound(int k);

struct BoundEntry {
    std::string name;
    std::string value; // integer, "p/q", or decimal rendering
    bool exact;
};
struct BoundsReport {
    int k;
    std::optional<int> r;
    std::vector<BoundEntry> entries;
};
BoundsReport bounds_report(int k, std::optional<int> r);

std::string rational_string(const BigRat& q);

} // namespace exceedkit::bounds
