#include "exceedkit/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace exceedkit::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw usage_error("invalid JSON input");
    return j;
}

void check_schema(const json& j, const char* kind) {
    if (!j.is_object() || !j.contains("v") || j["v"] != 1)
        throw usage_error(std::string(kind) + ": missing or unsupported schema version");
    if (!j.contains("k") || !j["k"].is_number_integer())
        throw usage_error(std::string(kind) + ": missing ground size k");
}

std::vector<mask_t> mask_list(const json& arr, const GroundSize& k, const char* what) {
    if (!arr.is_array()) throw usage_error(std::string(what) + ": expected an array");
    std::vector<mask_t> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
            throw usage_error(std::string(what) + ": masks must be non-negative integers");
        const std::uint64_t m = v.get<std::uint64_t>();
        if (m > k.full_mask())
            throw usage_error(std::string(what) + ": mask " + std::to_string(m) +
                              " out of range for k=" + std::to_string(k.value()));
        out.push_back(mask_t(m));
    }
    return out;
}

} // namespace

std::string to_json(const FamiliesFile& f) {
    json j;
    j["v"] = 1;
    j["k"] = f.k;
    j["families"] = f.families;
    return j.dump(2) + "\n";
}

std::string to_json(const SequenceFile& f) {
    json j;
    j["v"] = 1;
    j["k"] = f.k;
    j["d_claimed"] = f.d_claimed;
    j["sets"] = f.sets;
    return j.dump(2) + "\n";
}

FamiliesFile families_from_json(const std::string& text) {
    const json j = parse(text);
    check_schema(j, "families file");
    FamiliesFile out;
    out.k = j["k"].get<int>();
    const GroundSize k(out.k);
    if (!j.contains("families") || !j["families"].is_array())
        throw usage_error("families file: missing families array");
    for (const auto& fam : j["families"]) {
        std::vector<mask_t> ms = mask_list(fam, k, "families file");
        for (std::size_t i = 1; i < ms.size(); ++i)
            if (ms[i - 1] >= ms[i])
                throw usage_error("families file: members must be strictly increasing");
        out.families.push_back(std::move(ms));
    }
    return out;
}

SequenceFile sequence_from_json(const std::string& text) {
    const json j = parse(text);
    check_schema(j, "sequence file");
    SequenceFile out;
    out.k = j["k"].get<int>();
    if (!j.contains("d_claimed") || !j["d_claimed"].is_number_integer() ||
        j["d_claimed"].get<int>() < 0)
        throw usage_error("sequence file: missing or negative d_claimed");
    out.d_claimed = j["d_claimed"].get<int>();
    if (!j.contains("sets")) throw usage_error("sequence file: missing sets array");
    out.sets = mask_list(j["sets"], GroundSize(out.k), "sequence file");
    return out;
}

FamiliesFile read_families(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return families_from_json(ss.str());
}

SequenceFile read_sequence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return sequence_from_json(ss.str());
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary); // LF endings everywhere
    if (!out) throw usage_error("cannot write " + path);
    out << text;
}

std::string render_subset(mask_t m, int k) {
    if (m == 0) return ".";
    std::string out;
    if (k <= 9) {
        for (int i = 0; i < k; ++i)
            if (m & (mask_t{1} << i)) out += char('1' + i);
        return out;
    }
    out = "{";
    bool first = true;
    for (int i = 0; i < k; ++i)
        if (m & (mask_t{1} << i)) {
            if (!first) out += ",";
            out += std::to_string(i + 1);
            first = false;
        }
    return out + "}";
}

std::string render_family(const std::vector<mask_t>& members, int k) {
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += " ";
        out += render_subset(members[i], k);
    }
    return out + "}";
}

std::string verdict_json(const search::SearchResult& r, int threads) {
    json j;
    switch (r.kind) {
        case search::Verdict::value: j["kind"] = "value"; break;
        case search::Verdict::exists: j["kind"] = "exists"; break;
        case search::Verdict::not_exists: j["kind"] = "not-exists"; break;
    }
    if (r.value) j["value"] = *r.value;
    if (r.witness_sets) {
        json w;
        w["sets"] = *r.witness_sets;
        if (r.witness_period) w["period"] = *r.witness_period;
        if (r.witness_d) w["d"] = *r.witness_d;
        j["witness"] = std::move(w);
    }
    if (!r.witness_families.empty()) {
        json fams = json::array();
        for (const Family& f : r.witness_families) fams.push_back(f.members());
        j["witness_families"] = std::move(fams);
    }
    j["states_explored"] = r.states_explored;
    j["elapsed_secs"] = r.elapsed_secs;
    j["threads"] = threads;
    return j.dump(2) + "\n";
}

std::string bounds_report_json(const bounds::BoundsReport& rep) {
    json j;
    j["k"] = rep.k;
    if (rep.r) j["r"] = *rep.r;
    json entries;
    for (const auto& e : rep.entries) {
        entries[e.name] = {{"value", e.value}, {"exact", e.exact}};
    }
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

} // namespace exceedkit::io
