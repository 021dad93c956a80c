#include "exceedkit/family.hpp"

#include <algorithm>

namespace exceedkit {

Family::Family(GroundSize ground, std::vector<mask_t> members)
    : k_(ground), members_(std::move(members)) {
    for (mask_t m : members_) {
        if (m > k_.full_mask())
            throw usage_error("family member mask " + std::to_string(m) +
                              " out of range for ground size " + std::to_string(k_.value()));
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Family Family::full_powerset(GroundSize ground) {
    std::vector<mask_t> all(ground.subset_count());
    for (mask_t m = 0; m < all.size(); ++m) all[m] = m;
    return Family(ground, std::move(all));
}

bool Family::contains(mask_t m) const {
    return std::binary_search(members_.begin(), members_.end(), m);
}

void require_same_ground(GroundSize a, GroundSize b, const char* where) {
    if (a != b)
        throw usage_error(std::string(where) + ": ground size mismatch (" +
                          std::to_string(a.value()) + " vs " + std::to_string(b.value()) + ")");
}

} // namespace exceedkit
