#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "exceedkit/bounds.hpp"
#include "exceedkit/family.hpp"
#include "exceedkit/search.hpp"

namespace exceedkit::io {

// On-disk formats, schema v1: JSON, UTF-8, LF, keys sorted, masks as integers.

struct FamiliesFile {
    int k = 0;
    std::vector<std::vector<mask_t>> families; // inner lists strictly increasing
};

struct SequenceFile {
    int k = 0;
    int d_claimed = 0;
    std::vector<mask_t> sets; // order significant, duplicates allowed
};

std::string to_json(const FamiliesFile& f);
std::string to_json(const SequenceFile& f);
FamiliesFile families_from_json(const std::string& text);
SequenceFile sequence_from_json(const std::string& text);

FamiliesFile read_families(const std::string& path);
SequenceFile read_sequence(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// "." for the empty set; otherwise element digits ("234") while k ≤ 9,
// braces with commas beyond that.
std::string render_subset(mask_t m, int k);
std::string render_family(const std::vector<mask_t>& members, int k);

std::string verdict_json(const search::SearchResult& r, int threads);
std::string bounds_report_json(const bounds::BoundsReport& rep);

} // namespace exceedkit::io
