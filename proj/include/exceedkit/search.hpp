#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "exceedkit/family.hpp"
#include "exceedkit/sequence.hpp"

namespace exceedkit::search {

struct Budget {
    std::uint64_t max_states = 100'000'000;
    double max_secs = 600.0;
};

// A search that could not finish within budget. Never a verdict: callers see
// either a certified answer or this. The CLI maps it to exit code 4.
struct Inconclusive : std::runtime_error {
    Inconclusive(const std::string& what, std::uint64_t states,
                 std::optional<std::pair<std::int64_t, std::int64_t>> bracket = std::nullopt)
        : std::runtime_error(what), states_explored(states), value_bracket(bracket) {}
    std::uint64_t states_explored;
    // For delta: [largest d proven to pump, smallest d left undecided].
    std::optional<std::pair<std::int64_t, std::int64_t>> value_bracket;
};

enum class Verdict { value, exists, not_exists };

struct SearchResult {
    Verdict kind;
    std::optional<std::int64_t> value;

    // Pumping certificate (exists verdicts): d + period sets whose last d
    // entries equal the first d, so the final `period` entries repeat forever.
    std::optional<std::vector<mask_t>> witness_sets;
    std::optional<std::size_t> witness_period;
    std::optional<int> witness_d;

    // Family witnesses: the incomparable pair, or an exceeding chain
    // (+ squeezed singleton appended as witness_sets of length 1).
    std::vector<Family> witness_families;

    std::uint64_t states_explored = 0;
    double elapsed_secs = 0.0;
};

// --- The window-graph characterization -------------------------------------
//
// A sequence is d-exceeding iff every append keeps the invariant "none of the
// previous d sets contains the new one". Feasibility therefore depends only
// on the trailing d sets — the *window*. Windows are internally consistent
// tuples (earlier ⊉ later) and appending x is legal iff no window entry
// contains x. Runs of this automaton are exactly the d-exceeding sequences of
// length ≥ d (a consistent window is itself one of length d).
//
// Arbitrarily long d-exceeding sequences exist iff the window graph has a
// directed cycle:
//  * a cycle reached from one of its own nodes can be pumped forever;
//  * conversely a sequence longer than (number of windows) + d revisits a
//    window, and the segment between the visits is a cycle.
// This makes the "for all lengths" quantifier finitely decidable. The claim is
// cross-checked against length-capped brute force in the tests.

// Does an arbitrarily long d-exceeding sequence of subsets of [k] exist?
// `exists` verdicts carry a pumping certificate.
SearchResult exists_arbitrarily_long(GroundSize k, int d, const Budget& budget = {});

// δ(k): the largest d admitting arbitrarily long d-exceeding sequences.
// Monotone scan seeded at the best closed-form lower bound.
SearchResult delta(GroundSize k, const Budget& budget = {});

// Maximal length of a d-exceeding sequence (kind=value with a witness), or
// kind=exists with a pumping certificate when lengths are unbounded.
// Witness = lexicographically least among the longest sequences.
SearchResult longest_sequence(GroundSize k, int d, const Budget& budget = {});

// Largest b admitting two incomparable families of size b each; witness pair
// included (lexicographically least by member lists).
SearchResult seymour_max_pair(GroundSize k, const Budget& budget = {});

// Exhaustive check that no chain F_1 ⊢ F_2 ⊢ F_3 ⊢ F_4 of families of size
// ⌈2^k/3⌉ exists. A found chain refutes the size bound and is reported.
SearchResult exceeding_quad_search(GroundSize k, const Budget& budget = {});

// Exhaustive check that no exceeding chain of 4·⌊√(2^{k−1})⌋ families of size
// 2^k/4 admits an extra set squeezed between the two middle families.
SearchResult squeeze_search(GroundSize k, const Budget& budget = {});

// Shared engine behind the two checks above, exposed so tests can drive the
// exists/witness branch with non-extremal sizes.
SearchResult exceeding_chain_search(GroundSize k, std::size_t family_size, std::size_t length,
                                    bool squeeze_middle, const Budget& budget = {});

// Validates a pumping certificate: seq has length d + period, is d-exceeding,
// and seq[i] == seq[i + period] for i < d.
bool pump_certificate_valid(GroundSize k, std::span<const mask_t> seq, std::size_t period, int d);

} // namespace exceedkit::search
