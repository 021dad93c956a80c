#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "exceedkit/bounds.hpp"
#include "exceedkit/construct.hpp"
#include "exceedkit/core.hpp"
#include "exceedkit/family.hpp"
#include "exceedkit/search.hpp"
#include "exceedkit/sequence.hpp"

namespace py = pybind11;
namespace ek = exceedkit;

namespace {

ek::Family family_of(int k, const std::vector<ek::mask_t>& members) {
    return ek::Family(ek::GroundSize(k), members);
}

std::vector<ek::Family> families_of(int k, const std::vector<std::vector<ek::mask_t>>& fams) {
    std::vector<ek::Family> out;
    out.reserve(fams.size());
    for (const auto& f : fams) out.push_back(family_of(k, f));
    return out;
}

std::vector<std::vector<ek::mask_t>> members_of(const std::vector<ek::Family>& fams) {
    std::vector<std::vector<ek::mask_t>> out;
    out.reserve(fams.size());
    for (const auto& f : fams) out.push_back(f.members());
    return out;
}

ek::search::Budget budget_of(std::uint64_t states, double secs) { return {states, secs}; }

py::dict verdict_dict(const ek::search::SearchResult& r) {
    py::dict d;
    switch (r.kind) {
        case ek::search::Verdict::value: d["kind"] = "value"; break;
        case ek::search::Verdict::exists: d["kind"] = "exists"; break;
        case ek::search::Verdict::not_exists: d["kind"] = "not-exists"; break;
    }
    if (r.value) d["value"] = *r.value;
    if (r.witness_sets) d["witness_sets"] = *r.witness_sets;
    if (r.witness_period) d["witness_period"] = *r.witness_period;
    if (r.witness_d) d["witness_d"] = *r.witness_d;
    if (!r.witness_families.empty()) d["witness_families"] = members_of(r.witness_families);
    d["states_explored"] = r.states_explored;
    d["elapsed_secs"] = r.elapsed_secs;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "incomparable set families and exceeding sequences over small ground sets";

    py::register_exception<ek::search::Inconclusive>(m, "Inconclusive", PyExc_RuntimeError);

    // relations and closures
    m.def("superset", [](int k, ek::mask_t a, ek::mask_t b) {
        return ek::superset(ek::Subset(a, ek::GroundSize(k)), ek::Subset(b, ek::GroundSize(k)));
    }, py::arg("k"), py::arg("a"), py::arg("b"));
    m.def("incomparable", [](int k, ek::mask_t a, ek::mask_t b) {
        return ek::incomparable(ek::Subset(a, ek::GroundSize(k)),
                                ek::Subset(b, ek::GroundSize(k)));
    }, py::arg("k"), py::arg("a"), py::arg("b"));
    m.def("vdash", [](int k, const std::vector<ek::mask_t>& f, const std::vector<ek::mask_t>& g) {
        return ek::vdash(family_of(k, f), family_of(k, g));
    }, py::arg("k"), py::arg("f"), py::arg("g"));
    m.def("pairwise_incomparable",
          [](int k, const std::vector<std::vector<ek::mask_t>>& fams) {
              return ek::pairwise_incomparable(families_of(k, fams));
          }, py::arg("k"), py::arg("families"));
    m.def("down_closure", [](int k, const std::vector<ek::mask_t>& f) {
        return ek::down_closure(family_of(k, f)).members();
    }, py::arg("k"), py::arg("family"));
    m.def("up_closure", [](int k, const std::vector<ek::mask_t>& f) {
        return ek::up_closure(family_of(k, f)).members();
    }, py::arg("k"), py::arg("family"));
    m.def("kleitman_counts", [](int k, const std::vector<ek::mask_t>& f) {
        const auto c = ek::kleitman_ratios(family_of(k, f));
        return py::make_tuple(c.down_count, c.up_count, c.meet_count, c.family_count);
    }, py::arg("k"), py::arg("family"),
       "(|down|, |up|, |down ∩ up|, |family|) over P([k])");

    // constructions
    m.def("upscale", [](int s, const std::vector<std::vector<ek::mask_t>>& fams, int k) {
        return members_of(ek::upscale(families_of(s, fams), ek::GroundSize(k)));
    }, py::arg("s"), py::arg("families"), py::arg("k"));
    m.def("middle_layer", [](int s, int k) {
        return members_of(ek::middle_layer(s, ek::GroundSize(k)));
    }, py::arg("s"), py::arg("k"));
    m.def("block_construction", [](int s, int a, int c, int k) {
        return members_of(ek::block_construction(ek::BlockParams{s, a, c, k}));
    }, py::arg("s"), py::arg("a"), py::arg("c"), py::arg("k"));
    m.def("threshold_construction", [](int s, int a, int c, int k) {
        return members_of(ek::threshold_construction(ek::ThresholdParams{s, a, c, k}));
    }, py::arg("s"), py::arg("a"), py::arg("c"), py::arg("k"));

    // sequences
    m.def("check_d_exceeding", [](int k, const std::vector<ek::mask_t>& sets, int d) {
        for (ek::mask_t s : sets) (void)ek::Subset(s, ek::GroundSize(k));
        const auto c = ek::check_d_exceeding(sets, d);
        return c.ok ? py::make_tuple(true, py::none())
                    : py::make_tuple(false, py::make_tuple(c.violation->first,
                                                           c.violation->second));
    }, py::arg("k"), py::arg("sets"), py::arg("d"));
    m.def("max_exceedance", [](int k, const std::vector<ek::mask_t>& sets) {
        for (ek::mask_t s : sets) (void)ek::Subset(s, ek::GroundSize(k));
        return ek::max_exceedance(sets);
    }, py::arg("k"), py::arg("sets"),
       "max d for which the sequence is d-exceeding; len(sets) means every d");
    m.def("cyclic_family_sequence",
          [](int k, const std::vector<std::vector<ek::mask_t>>& fams, std::size_t l) {
              const auto fs = ek::cyclic_family_sequence(families_of(k, fams), l);
              return py::make_tuple(members_of(fs.items()), fs.d());
          }, py::arg("k"), py::arg("families"), py::arg("l"));
    m.def("flatten_to_sets",
          [](int k, const std::vector<std::vector<ek::mask_t>>& items, int d, std::size_t b) {
              const ek::FamilySeq fs(families_of(k, items), d);
              const auto seq = ek::flatten_to_sets(fs, b);
              return py::make_tuple(seq.sets(), seq.d());
          }, py::arg("k"), py::arg("items"), py::arg("d"), py::arg("b"));
    m.def("anchor_split_sequence", [](int k) {
        const auto seq = ek::anchor_split_sequence(ek::GroundSize(k));
        return py::make_tuple(seq.sets(), seq.d());
    }, py::arg("k"));
    m.def("builtin_witness", [](const std::string& name) {
        const auto seq = ek::builtin_witness(name);
        py::dict d;
        d["k"] = seq.ground().value();
        d["sets"] = seq.sets();
        d["d"] = seq.d();
        return d;
    }, py::arg("name"));

    // searches
    const auto kStates = std::uint64_t{100'000'000};
    m.def("delta", [](int k, std::uint64_t states, double secs) {
        return verdict_dict(ek::search::delta(ek::GroundSize(k), budget_of(states, secs)));
    }, py::arg("k"), py::arg("budget_states") = kStates, py::arg("budget_secs") = 600.0);
    m.def("exists_arbitrarily_long", [](int k, int d, std::uint64_t states, double secs) {
        return verdict_dict(
            ek::search::exists_arbitrarily_long(ek::GroundSize(k), d, budget_of(states, secs)));
    }, py::arg("k"), py::arg("d"), py::arg("budget_states") = kStates,
       py::arg("budget_secs") = 600.0);
    m.def("longest_sequence", [](int k, int d, std::uint64_t states, double secs) {
        return verdict_dict(
            ek::search::longest_sequence(ek::GroundSize(k), d, budget_of(states, secs)));
    }, py::arg("k"), py::arg("d"), py::arg("budget_states") = kStates,
       py::arg("budget_secs") = 600.0);
    m.def("seymour_max_pair", [](int k, std::uint64_t states, double secs) {
        return verdict_dict(
            ek::search::seymour_max_pair(ek::GroundSize(k), budget_of(states, secs)));
    }, py::arg("k"), py::arg("budget_states") = kStates, py::arg("budget_secs") = 600.0);
    m.def("exceeding_quad_search", [](int k, std::uint64_t states, double secs) {
        return verdict_dict(
            ek::search::exceeding_quad_search(ek::GroundSize(k), budget_of(states, secs)));
    }, py::arg("k"), py::arg("budget_states") = kStates, py::arg("budget_secs") = 600.0);
    m.def("squeeze_search", [](int k, std::uint64_t states, double secs) {
        return verdict_dict(
            ek::search::squeeze_search(ek::GroundSize(k), budget_of(states, secs)));
    }, py::arg("k"), py::arg("budget_states") = kStates, py::arg("budget_secs") = 600.0);

    // bounds
    m.def("density_exact", [](int s, int a) {
        return ek::bounds::rational_string(ek::bounds::density_exact(s, a));
    }, py::arg("s"), py::arg("a"));
    m.def("constant_r_interval_check", [](int r) {
        const auto c = ek::bounds::constant_r_interval_check(r);
        py::dict d;
        d["holds"] = c.holds;
        d["lower"] = c.lower;
        d["value"] = c.value;
        d["upper"] = c.upper;
        return d;
    }, py::arg("r"));
    m.def("delta_lower_bounds", [](int k) {
        const auto lb = ek::bounds::delta_lower_bounds(k);
        py::dict d;
        d["middle_antichain"] = lb.middle_antichain;
        if (lb.block_s4_a2) d["block_s4_a2"] = *lb.block_s4_a2;
        if (lb.block_power2) {
            d["block_power2"] = *lb.block_power2;
            d["power2_r"] = lb.power2_r;
        }
        d["near_e"] = lb.near_e;
        d["best"] = lb.best;
        return d;
    }, py::arg("k"));
    m.def("conjecture_upper", &ek::bounds::conjecture_upper, py::arg("k"));
    m.def("beta_general_r", [](int r) {
        const auto b = ek::bounds::beta_general_r(r);
        py::dict d;
        d["exact"] = b.exact;
        d["value"] = b.value;
        d["residual"] = b.residual;
        if (b.exact) d["rational"] = ek::bounds::rational_string(b.rational);
        return d;
    }, py::arg("r"));
    m.def("halving_upper_bound", &ek::bounds::halving_upper_bound, py::arg("k"));
}
