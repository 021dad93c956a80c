#include "exceedkit/bounds.hpp"

#include <cmath>
#include <sstream>

#include "exceedkit/construct.hpp"
#include "exceedkit/family.hpp"

namespace exceedkit::bounds {

namespace {
constexpr int kMaxBoundsK = 62; // 2^k must fit in int64

void check_k(int k) {
    if (k < 1 || k > kMaxBoundsK)
        throw usage_error("bounds: k must be in [1, " + std::to_string(kMaxBoundsK) + "]");
}

BigInt ipow(BigInt base, unsigned e) {
    BigInt out = 1;
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}
} // namespace

BigRat density_exact(int s, int a) {
    if (a < 1 || 2 * a > s) throw usage_error("density_exact: need 1 <= a <= s/2");
    return BigRat(ipow(a, a) * ipow(s - a, s - a), ipow(s, s));
}

IntervalCheck constant_r_interval_check(int r) {
    if (r < 2) throw usage_error("constant_r_interval_check: need r >= 2");
    const long double value =
        r == 2 ? 0.25L
               : std::exp((r - 1) * std::log((long double)(r - 1)) -
                          r * std::log((long double)r));
    const long double e = std::exp(1.0L);
    const long double lower = 1.0L / (e * r);
    const long double upper = 1.0L / (e * (r - 1));
    return IntervalCheck{lower < value && value < upper, double(lower), double(value),
                         double(upper)};
}

LowerBounds delta_lower_bounds(int k) {
    check_k(k);
    LowerBounds lb{};
    lb.middle_antichain = binomial(k, k / 2) - 1;
    lb.best = lb.middle_antichain;

    if (k >= 4) {
        lb.block_s4_a2 = std::int64_t{5} << (k - 4);
        lb.best = std::max(lb.best, *lb.block_s4_a2);
    }
    // Largest r = 2^j with j·2^j ≤ k gives (r−1)·(families of density
    // (r−1)^{r−1}/r^r), i.e. (r−1)^r·2^{k−jr} — an exact integer here.
    int j_best = 0;
    for (int j = 1; std::int64_t(j) << j <= k; ++j) j_best = j;
    if (j_best >= 1) {
        const int r = 1 << j_best;
        std::int64_t v = std::int64_t{1} << (k - j_best * r);
        for (int i = 0; i < r; ++i) v *= (r - 1);
        lb.power2_r = r;
        lb.block_power2 = v;
        lb.best = std::max(lb.best, v);
    }
    const double raw = (1.0 - 2.0 * std::log2(double(k)) / k) * std::exp2(double(k)) / std::exp(1.0);
    lb.near_e = std::max(0.0, raw);
    lb.best = std::max(lb.best, std::int64_t(std::floor(lb.near_e)));
    return lb;
}

namespace {

// Positive dyadic value mant·2^exp, mantissa kept to `prec` bits with
// directed rounding.
struct Dyadic {
    BigInt mant;
    long exp;
};

Dyadic round_to(BigInt mant, long exp, unsigned prec, bool round_up) {
    const unsigned bits = unsigned(msb(mant)) + 1;
    if (bits > prec) {
        const unsigned shift = bits - prec;
        const bool inexact = lsb(mant) < shift; // any dropped bit set?
        mant >>= shift;
        if (round_up && inexact) ++mant;
        exp += shift;
    }
    return Dyadic{std::move(mant), exp};
}

Dyadic mul(const Dyadic& a, const Dyadic& b, unsigned prec, bool round_up) {
    return round_to(a.mant * b.mant, a.exp + b.exp, prec, round_up);
}

// Certified bounds on ((d+1)/d)^d at the given mantissa precision.
std::pair<Dyadic, Dyadic> ratio_power_interval(std::int64_t d, unsigned prec) {
    const BigInt num = BigInt(d) + 1, den = d;
    Dyadic lo = round_to((num << (prec + 1)) / den, -long(prec + 1), prec, false);
    Dyadic hi = round_to(((num << (prec + 1)) + den - 1) / den, -long(prec + 1), prec, true);
    Dyadic rlo{1, 0}, rhi{1, 0};
    for (std::int64_t e = d; e;) {
        if (e & 1) {
            rlo = mul(rlo, lo, prec, false);
            rhi = mul(rhi, hi, prec, true);
        }
        e >>= 1;
        if (e) {
            lo = mul(lo, lo, prec, false);
            hi = mul(hi, hi, prec, true);
        }
    }
    return {rlo, rhi};
}

// sign of mant·2^exp − 2^k
int cmp_pow2(const BigInt& mant, long exp, long k) {
    BigInt lhs = mant, rhs = 1;
    if (exp >= k)
        lhs <<= unsigned(exp - k);
    else
        rhs <<= unsigned(k - exp);
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

} // namespace

bool conjecture_condition(std::int64_t d, int k) {
    check_k(k);
    if (d < 0) throw usage_error("conjecture_condition: d must be >= 0");
    if (d == 0) return true;                    // 0^0 = 1, and 2^k ≥ 1
    if (d == 1) return k >= 2;                  // 2^k ≥ 4
    // 2^k ≥ (d+1)·((d+1)/d)^d. Equality is impossible for d ≥ 2 (the right
    // side has a prime factor of d+1... the cleared form (d+1)^{d+1} = 2^k·d^d
    // fails mod any prime divisor of d), so interval refinement terminates.
    for (unsigned prec = 128;; prec *= 2) {
        auto [lo, hi] = ratio_power_interval(d, prec);
        if (cmp_pow2(hi.mant * BigInt(d + 1), hi.exp, k) <= 0) return true;
        if (cmp_pow2(lo.mant * BigInt(d + 1), lo.exp, k) > 0) return false;
        if (prec > 1u << 20)
            throw check_failure("conjecture_condition: interval refinement did not resolve");
    }
}

std::int64_t conjecture_upper(int k) {
    check_k(k);
    // The condition is monotone (true exactly for d up to the answer).
    std::int64_t lo = 0, hi = std::int64_t{1} << k; // condition false at hi
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (conjecture_condition(mid, k) ? lo : hi) = mid;
    }
    if (double(lo) >= std::exp2(double(k)) / std::exp(1.0))
        throw check_failure("conjecture_upper: value not below 2^k/e");
    return lo;
}

BetaValue beta_general_r(int r) {
    if (r < 1) throw usage_error("beta_general_r: need r >= 1");
    if (r % 2 == 0) {
        BigRat q(1, 2 * r);
        return BetaValue{true, q, 1.0 / (2.0 * r), 0.0};
    }
    // Stable root of β² − 2rβ + 1: the direct r − √(r²−1) cancels badly.
    const long double rl = r;
    const long double beta = 1.0L / (rl + std::sqrt(rl * rl - 1.0L));
    const long double residual = beta * beta - 2.0L * rl * beta + 1.0L;
    return BetaValue{false, BigRat(0), double(beta), double(std::fabs(residual))};
}

std::int64_t halving_upper_bound(int k) {
    if (k < 3) throw usage_error("halving_upper_bound: need k >= 3");
    check_k(k);
    return (std::int64_t{1} << (k - 1)) - 2;
}

std::string rational_string(const BigRat& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

namespace {
std::string float_string(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}
} // namespace

BoundsReport bounds_report(int k, std::optional<int> r) {
    check_k(k);
    BoundsReport rep{k, r, {}};
    const LowerBounds lb = delta_lower_bounds(k);
    rep.entries.push_back({"lower.middle_antichain", std::to_string(lb.middle_antichain), true});
    if (lb.block_s4_a2)
        rep.entries.push_back({"lower.block_s4_a2", std::to_string(*lb.block_s4_a2), true});
    if (lb.block_power2)
        rep.entries.push_back({"lower.block_power2_r" + std::to_string(lb.power2_r),
                               std::to_string(*lb.block_power2), true});
    rep.entries.push_back({"lower.near_e", float_string(lb.near_e), false});
    rep.entries.push_back({"lower.best", std::to_string(lb.best), true});
    rep.entries.push_back({"upper.conjectured_max", std::to_string(conjecture_upper(k)), true});
    if (k >= 3)
        rep.entries.push_back(
            {"upper.half_powerset_minus_two", std::to_string(halving_upper_bound(k)), true});
    if (r) {
        if (*r >= 2) {
            rep.entries.push_back(
                {"r.density_a1", rational_string(density_exact(*r, 1)), true});
            const IntervalCheck ic = constant_r_interval_check(*r);
            rep.entries.push_back({"r.interval_lower", float_string(ic.lower), false});
            rep.entries.push_back({"r.interval_value", float_string(ic.value), false});
            rep.entries.push_back({"r.interval_upper", float_string(ic.upper), false});
            rep.entries.push_back({"r.interval_holds", ic.holds ? "true" : "false", true});
        }
        const BetaValue b = beta_general_r(*r);
        rep.entries.push_back({"r.beta", b.exact ? rational_string(b.rational)
                                                 : float_string(b.value),
                               b.exact});
        if (!b.exact)
            rep.entries.push_back({"r.beta_residual", float_string(b.residual), false});
    }
    return rep;
}

} // namespace exceedkit::bounds
