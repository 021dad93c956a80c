#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace exceedkit {

// Parameter/precondition violations callers can repair. The CLI maps these
// to exit code 2.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A re-verification guard tripped: some object we just built fails its own
// verifier. Always a bug, never a caller mistake. CLI exit code 3.
struct check_failure : std::logic_error {
    using std::logic_error::logic_error;
};

using mask_t = std::uint32_t;

// Ground sets are capped so that 2^k tables stay in memory.
inline constexpr int kMaxGroundSize = 24;

// The ground set [k] = {1,...,k}. Element i corresponds to bit i-1.
class GroundSize {
  public:
    explicit GroundSize(int k) : k_(k) {
        if (k < 1 || k > kMaxGroundSize)
            throw usage_error("ground size must be in [1, " +
                              std::to_string(kMaxGroundSize) + "], got " + std::to_string(k));
    }
    int value() const { return k_; }
    std::uint32_t subset_count() const { return std::uint32_t{1} << k_; }
    mask_t full_mask() const { return subset_count() - 1; }
    friend bool operator==(GroundSize a, GroundSize b) { return a.k_ == b.k_; }
    friend bool operator!=(GroundSize a, GroundSize b) { return a.k_ != b.k_; }

  private:
    int k_;
};

// One subset of [k] as a bitmask.
struct Subset {
    Subset(mask_t m, GroundSize ground) : mask(m), k(ground) {
        if (mask > k.full_mask())
            throw usage_error("subset mask " + std::to_string(mask) +
                              " out of range for ground size " + std::to_string(k.value()));
    }
    mask_t mask;
    GroundSize k;
};

// A family of subsets of [k]: deduplicated, members sorted ascending by mask.
// Sorted storage gives canonical equality and deterministic output.
class Family {
  public:
    Family(GroundSize ground, std::vector<mask_t> members);

    static Family full_powerset(GroundSize ground);

    GroundSize ground() const { return k_; }
    const std::vector<mask_t>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(mask_t m) const;

    friend bool operator==(const Family& a, const Family& b) {
        return a.k_ == b.k_ && a.members_ == b.members_;
    }

  private:
    GroundSize k_;
    std::vector<mask_t> members_;
};

void require_same_ground(GroundSize a, GroundSize b, const char* where);

} // namespace exceedkit
