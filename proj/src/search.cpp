#include "exceedkit/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "exceedkit/bounds.hpp"
#include "exceedkit/core.hpp"

namespace exceedkit::search {

namespace {

using steady = std::chrono::steady_clock;

struct Ticker {
    const Budget& budget;
    const char* what;
    std::uint64_t states = 0;
    steady::time_point t0 = steady::now();

    void visit() {
        if (++states > budget.max_states)
            throw Inconclusive(std::string(what) + ": state budget exceeded", states);
        if ((states & 0xFFFF) == 0) check_time();
    }
    void check_time() const {
        if (elapsed() > budget.max_secs)
            throw Inconclusive(std::string(what) + ": time budget exceeded", states);
    }
    double elapsed() const { return std::chrono::duration<double>(steady::now() - t0).count(); }
};

// Packed window of the last d sets; oldest set in the highest k bits, so the
// numeric order of encodings is the lexicographic order of windows.
struct WindowSpace {
    int k, d, bits;
    mask_t setmask;
    std::uint64_t statemask;

    WindowSpace(GroundSize ground, int depth)
        : k(ground.value()), d(depth), bits(k * d), setmask(ground.full_mask()),
          statemask(bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1) {}

    mask_t elem(std::uint64_t s, int i) const { // i = 0 oldest … d-1 newest
        return mask_t(s >> ((d - 1 - i) * k)) & setmask;
    }
    bool consistent(std::uint64_t s) const {
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (mask_superset(elem(s, i), elem(s, j))) return false;
        return true;
    }
    bool can_append(std::uint64_t s, mask_t x) const {
        for (int i = 0; i < d; ++i)
            if (mask_superset(elem(s, i), x)) return false;
        return true;
    }
    std::uint64_t next(std::uint64_t s, mask_t x) const { return ((s << k) | x) & statemask; }
    // y may precede window s iff y contains no element of s; then
    // next(pred(s,y) shifted window, newest element of s) == s.
    bool can_precede(std::uint64_t s, mask_t y) const {
        for (int i = 0; i < d; ++i)
            if (mask_superset(y, elem(s, i))) return false;
        return true;
    }
    std::uint64_t pred(std::uint64_t s, mask_t y) const {
        return (std::uint64_t(y) << ((d - 1) * k)) | (s >> k);
    }
    std::vector<mask_t> decode(std::uint64_t s) const {
        std::vector<mask_t> out(d);
        for (int i = 0; i < d; ++i) out[i] = elem(s, i);
        return out;
    }
};

// Dense storage is affordable up to 2^24 states; larger spaces fall back to
// hashing, where the state budget is the real limit.
constexpr int kDenseBits = 24;
// Lexicographically-least cycle witnesses need SCC + distance arrays; above
// this size the witness is the first cycle found (still deterministic).
constexpr int kLexCycleBits = 22;

class U32Store {
  public:
    U32Store(int bits, std::uint32_t init) : init_(init) {
        if (bits <= kDenseBits) {
            dense_.assign(std::size_t{1} << bits, init);
        }
    }
    std::uint32_t get(std::uint64_t s) const {
        if (!dense_.empty()) return dense_[s];
        auto it = map_.find(s);
        return it == map_.end() ? init_ : it->second;
    }
    void set(std::uint64_t s, std::uint32_t v) {
        if (!dense_.empty())
            dense_[s] = v;
        else
            map_[s] = v;
    }

  private:
    std::uint32_t init_;
    std::vector<std::uint32_t> dense_;
    std::unordered_map<std::uint64_t, std::uint32_t> map_;
};

class ColorStore {
  public:
    explicit ColorStore(int bits) {
        if (bits <= kDenseBits) dense_.assign(std::size_t{1} << bits, 0);
    }
    std::uint8_t get(std::uint64_t s) const {
        if (!dense_.empty()) return dense_[s];
        auto it = map_.find(s);
        return it == map_.end() ? 0 : it->second;
    }
    void set(std::uint64_t s, std::uint8_t v) {
        if (!dense_.empty())
            dense_[s] = v;
        else
            map_[s] = v;
    }

  private:
    std::vector<std::uint8_t> dense_;
    std::unordered_map<std::uint64_t, std::uint8_t> map_;
};

// Enumerate consistent windows in ascending encoding order.
template <class Fn>
void for_each_consistent_window(const WindowSpace& ws, Fn&& fn) {
    std::vector<mask_t> prefix(std::size_t(ws.d));
    auto rec = [&](auto&& self, int p, std::uint64_t enc) -> void {
        if (p == ws.d) {
            fn(enc);
            return;
        }
        for (mask_t x = 0;; ++x) {
            bool ok = true;
            for (int i = 0; i < p; ++i)
                if (mask_superset(prefix[i], x)) {
                    ok = false;
                    break;
                }
            if (ok) {
                prefix[std::size_t(p)] = x;
                self(self, p + 1, (enc << ws.k) | x);
            }
            if (x == ws.setmask) break;
        }
    };
    rec(rec, 0, 0);
}

// --- cycle detection --------------------------------------------------------

// Colors: 0 unvisited, 1 on the DFS stack, 2 done. Returns the first closed
// walk found (as its state cycle), or nullopt when the graph is acyclic.
std::optional<std::vector<std::uint64_t>> find_cycle(const WindowSpace& ws, Ticker& ticker) {
    ColorStore color(ws.bits);
    struct Frame {
        std::uint64_t state;
        mask_t next_x;
    };
    std::vector<Frame> stack;
    std::optional<std::vector<std::uint64_t>> cycle;

    for_each_consistent_window(ws, [&](std::uint64_t root) {
        if (cycle || color.get(root) != 0) return;
        color.set(root, 1);
        ticker.visit();
        stack.assign(1, Frame{root, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            bool descended = false;
            while (f.next_x <= ws.setmask) {
                const mask_t x = f.next_x++;
                if (!ws.can_append(f.state, x)) {
                    if (x == ws.setmask) break;
                    continue;
                }
                const std::uint64_t nxt = ws.next(f.state, x);
                const std::uint8_t c = color.get(nxt);
                if (c == 1) {
                    // Back edge: the stack segment from nxt to the top is a cycle.
                    std::vector<std::uint64_t> cyc;
                    std::size_t i = stack.size();
                    while (i > 0 && stack[i - 1].state != nxt) --i;
                    for (; i < stack.size(); ++i) cyc.push_back(stack[i].state);
                    cycle = std::move(cyc);
                    return;
                }
                if (c == 0) {
                    color.set(nxt, 1);
                    ticker.visit();
                    stack.push_back(Frame{nxt, 0});
                    descended = true;
                    break;
                }
                if (x == ws.setmask) break;
            }
            if (!descended) {
                color.set(f.state, 2);
                stack.pop_back();
            }
        }
    });
    return cycle;
}

// States lying on some cycle are exactly those in SCCs of size >= 2 (there
// are no self-loops: a window can never re-produce itself in one append,
// since that would force all entries equal and break consistency). Returns
// the smallest such state.
std::optional<std::uint64_t> least_state_on_cycle(const WindowSpace& ws, Ticker& ticker) {
    constexpr std::uint32_t UNSET = 0xFFFFFFFFu;
    const std::size_t n = std::size_t{1} << ws.bits;
    std::vector<std::uint32_t> index(n, UNSET), lowlink(n, UNSET);
    std::vector<std::uint8_t> onstack(n, 0);
    std::vector<std::uint64_t> comp;
    std::uint32_t counter = 0;
    std::optional<std::uint64_t> best;

    struct Frame {
        std::uint64_t state;
        mask_t next_x;
        std::uint64_t last_child;
        bool has_child;
    };
    std::vector<Frame> stack;

    for_each_consistent_window(ws, [&](std::uint64_t root) {
        if (index[root] != UNSET) return;
        stack.assign(1, Frame{root, 0, 0, false});
        index[root] = lowlink[root] = counter++;
        onstack[root] = 1;
        comp.push_back(root);
        ticker.visit();
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.has_child) {
                lowlink[f.state] = std::min(lowlink[f.state], lowlink[f.last_child]);
                f.has_child = false;
            }
            bool descended = false;
            while (f.next_x <= ws.setmask) {
                const mask_t x = f.next_x++;
                if (ws.can_append(f.state, x)) {
                    const std::uint64_t nxt = ws.next(f.state, x);
                    if (index[nxt] == UNSET) {
                        f.last_child = nxt;
                        f.has_child = true;
                        stack.push_back(Frame{nxt, 0, 0, false});
                        index[nxt] = lowlink[nxt] = counter++;
                        onstack[nxt] = 1;
                        comp.push_back(nxt);
                        ticker.visit();
                        descended = true;
                        break;
                    }
                    if (onstack[nxt])
                        lowlink[f.state] = std::min(lowlink[f.state], index[nxt]);
                }
                if (x == ws.setmask) break;
            }
            if (descended) continue;
            if (lowlink[f.state] == index[f.state]) {
                std::size_t first = comp.size();
                while (first > 0 && comp[first - 1] != f.state) --first;
                --first;
                const std::size_t sz = comp.size() - first;
                if (sz >= 2) {
                    for (std::size_t i = first; i < comp.size(); ++i)
                        if (!best || comp[i] < *best) best = comp[i];
                }
                for (std::size_t i = first; i < comp.size(); ++i) onstack[comp[i]] = 0;
                comp.resize(first);
            }
            stack.pop_back();
        }
    });
    return best;
}

struct PumpCertificate {
    std::uint64_t anchor;
    std::vector<mask_t> appends;
};

// Lexicographically canonical cycle witness: the least on-cycle window, then
// the shortest cycle through it, ties broken by least appended set.
PumpCertificate lex_least_cycle(const WindowSpace& ws, std::uint64_t wstar, Ticker& ticker) {
    constexpr std::uint32_t UNSET = 0xFFFFFFFFu;
    std::vector<std::uint32_t> dist(std::size_t{1} << ws.bits, UNSET);
    std::vector<std::uint64_t> queue{wstar};
    dist[wstar] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint64_t s = queue[head];
        for (mask_t y = 0;; ++y) {
            if (ws.can_precede(s, y)) {
                const std::uint64_t p = ws.pred(s, y);
                if (dist[p] == UNSET) {
                    dist[p] = dist[s] + 1;
                    queue.push_back(p);
                    ticker.visit();
                }
            }
            if (y == ws.setmask) break;
        }
    }
    std::uint32_t len = UNSET;
    for (mask_t x = 0;; ++x) {
        if (ws.can_append(wstar, x)) {
            const std::uint64_t nxt = ws.next(wstar, x);
            if (dist[nxt] != UNSET) len = std::min(len, dist[nxt] + 1);
        }
        if (x == ws.setmask) break;
    }
    if (len == UNSET) throw check_failure("cycle witness: anchor cannot close a cycle");

    PumpCertificate cert{wstar, {}};
    std::uint64_t cur = wstar;
    for (std::uint32_t remaining = len; remaining > 0; --remaining) {
        bool stepped = false;
        for (mask_t x = 0;; ++x) {
            if (ws.can_append(cur, x)) {
                const std::uint64_t nxt = ws.next(cur, x);
                if (dist[nxt] == remaining - 1) {
                    cert.appends.push_back(x);
                    cur = nxt;
                    stepped = true;
                    break;
                }
            }
            if (x == ws.setmask) break;
        }
        if (!stepped) throw check_failure("cycle witness: greedy step failed");
    }
    if (cur != wstar) throw check_failure("cycle witness: walk did not return to anchor");
    return cert;
}

// Fallback for state spaces too large for the arrays above: rotate the first
// DFS cycle so its least state anchors the certificate.
PumpCertificate cycle_from_states(const WindowSpace& ws, std::vector<std::uint64_t> cyc) {
    const auto least = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), least, cyc.end());
    PumpCertificate cert{cyc.front(), {}};
    for (std::size_t i = 1; i < cyc.size(); ++i)
        cert.appends.push_back(mask_t(cyc[i]) & ws.setmask);
    cert.appends.push_back(mask_t(cyc.front()) & ws.setmask);
    return cert;
}

SearchResult certificate_result(const WindowSpace& ws, GroundSize k, int d,
                                const PumpCertificate& cert, Ticker& ticker) {
    SearchResult r;
    r.kind = Verdict::exists;
    std::vector<mask_t> seq = ws.decode(cert.anchor);
    seq.insert(seq.end(), cert.appends.begin(), cert.appends.end());
    if (!pump_certificate_valid(k, seq, cert.appends.size(), d))
        throw check_failure("exists_arbitrarily_long: pump certificate failed re-verification");
    r.witness_sets = std::move(seq);
    r.witness_period = cert.appends.size();
    r.witness_d = d;
    r.states_explored = ticker.states;
    r.elapsed_secs = ticker.elapsed();
    return r;
}

} // namespace

bool pump_certificate_valid(GroundSize k, std::span<const mask_t> seq, std::size_t period,
                            int d) {
    if (period == 0 || seq.size() != period + std::size_t(d)) return false;
    for (mask_t m : seq)
        if (m > k.full_mask()) return false;
    if (!check_d_exceeding(seq, d).ok) return false;
    for (std::size_t i = 0; i + period < seq.size(); ++i)
        if (seq[i] != seq[i + period]) return false;
    return true;
}

SearchResult exists_arbitrarily_long(GroundSize k, int d, const Budget& budget) {
    if (d < 0) throw usage_error("exists_arbitrarily_long: d must be >= 0");
    Ticker ticker{budget, "exists_arbitrarily_long"};

    SearchResult r;
    if (d == 0) {
        // No constraints at all: pump the empty set.
        r.kind = Verdict::exists;
        r.witness_sets = std::vector<mask_t>{0};
        r.witness_period = 1;
        r.witness_d = 0;
        r.elapsed_secs = ticker.elapsed();
        return r;
    }
    if (std::uint64_t(d) >= k.subset_count()) {
        // A consistent window needs d pairwise-distinct sets, so none exist;
        // every sequence of length >= d is impossible, let alone unbounded.
        r.kind = Verdict::not_exists;
        r.elapsed_secs = ticker.elapsed();
        return r;
    }

    const WindowSpace ws(k, d);
    if (ws.bits > 62)
        throw Inconclusive("exists_arbitrarily_long: window state space exceeds 2^62",
                           ticker.states);

    const auto cycle = find_cycle(ws, ticker);
    if (!cycle) {
        r.kind = Verdict::not_exists;
        r.states_explored = ticker.states;
        r.elapsed_secs = ticker.elapsed();
        return r;
    }
    if (ws.bits <= kLexCycleBits) {
        const auto wstar = least_state_on_cycle(ws, ticker);
        if (!wstar) throw check_failure("exists_arbitrarily_long: cycle vanished in SCC pass");
        return certificate_result(ws, k, d, lex_least_cycle(ws, *wstar, ticker), ticker);
    }
    return certificate_result(ws, k, d, cycle_from_states(ws, *cycle), ticker);
}

SearchResult delta(GroundSize k, const Budget& budget) {
    Ticker total{budget, "delta"};
    std::int64_t seed = bounds::delta_lower_bounds(k.value()).best;
    seed = std::clamp<std::int64_t>(seed, 0, k.subset_count());

    std::uint64_t states = 0;
    std::optional<SearchResult> best_true;
    std::int64_t best_true_d = -1;

    auto probe = [&](std::int64_t d) -> bool {
        Budget rest = budget;
        rest.max_states = budget.max_states > states ? budget.max_states - states : 0;
        rest.max_secs = budget.max_secs - total.elapsed();
        try {
            SearchResult r = exists_arbitrarily_long(k, int(d), rest);
            states += r.states_explored;
            if (r.kind == Verdict::exists) {
                best_true = std::move(r);
                best_true_d = d;
                return true;
            }
            return false;
        } catch (Inconclusive& inc) {
            throw Inconclusive("delta: " + std::string(inc.what()), states + inc.states_explored,
                               std::make_pair(best_true_d, d));
        }
    };

    std::int64_t d = seed;
    if (probe(d)) {
        while (probe(++d)) {
        }
    } else {
        while (d > 0 && !probe(--d)) {
        }
    }

    SearchResult r = std::move(*best_true);
    r.kind = Verdict::value;
    r.value = best_true_d;
    r.states_explored = states;
    r.elapsed_secs = total.elapsed();
    return r;
}

namespace {

constexpr std::uint32_t PATH_UNSET = 0;
constexpr std::uint32_t PATH_ONSTACK = 0xFFFFFFFFu;

// Longest path (in visited nodes) over the acyclic window graph, memoized.
// Returns {max nodes, least state attaining it}.
std::pair<std::uint32_t, std::uint64_t> longest_path_lengths(const WindowSpace& ws,
                                                             U32Store& pathlen, Ticker& ticker) {
    struct Frame {
        std::uint64_t state;
        mask_t next_x;
        std::uint32_t best;
    };
    std::vector<Frame> stack;
    std::uint32_t best_len = 0;
    std::uint64_t best_state = 0;
    bool have_best = false;

    for_each_consistent_window(ws, [&](std::uint64_t root) {
        if (pathlen.get(root) == PATH_UNSET) {
            pathlen.set(root, PATH_ONSTACK);
            ticker.visit();
            stack.assign(1, Frame{root, 0, 0});
            while (!stack.empty()) {
                Frame& f = stack.back();
                bool descended = false;
                while (f.next_x <= ws.setmask) {
                    const mask_t x = f.next_x++;
                    if (ws.can_append(f.state, x)) {
                        const std::uint64_t nxt = ws.next(f.state, x);
                        const std::uint32_t pl = pathlen.get(nxt);
                        if (pl == PATH_ONSTACK)
                            throw check_failure("longest_sequence: cycle in supposedly acyclic graph");
                        if (pl == PATH_UNSET) {
                            pathlen.set(nxt, PATH_ONSTACK);
                            ticker.visit();
                            stack.push_back(Frame{nxt, 0, 0});
                            descended = true;
                            break;
                        }
                        f.best = std::max(f.best, pl);
                    }
                    if (x == ws.setmask) break;
                }
                if (descended) continue;
                const std::uint32_t total = f.best + 1;
                pathlen.set(f.state, total);
                stack.pop_back();
                if (!stack.empty()) stack.back().best = std::max(stack.back().best, total);
            }
        }
        const std::uint32_t pl = pathlen.get(root);
        if (!have_best || pl > best_len) {
            best_len = pl;
            best_state = root;
            have_best = true;
        }
    });
    return {best_len, best_state};
}

} // namespace

SearchResult longest_sequence(GroundSize k, int d, const Budget& budget) {
    if (d < 0) throw usage_error("longest_sequence: d must be >= 0");
    Ticker ticker{budget, "longest_sequence"};

    {
        SearchResult ex = exists_arbitrarily_long(k, d, budget);
        if (ex.kind == Verdict::exists) return ex; // unbounded: report the pump
        ticker.states += ex.states_explored;
    }

    SearchResult r;
    r.kind = Verdict::value;
    if (std::uint64_t(d) >= k.subset_count()) {
        // Every length <= d sequence is constrained on all pairs, hence has
        // distinct sets; ascending masks realize the maximum 2^k.
        std::vector<mask_t> all(k.subset_count());
        std::iota(all.begin(), all.end(), 0);
        r.value = std::int64_t(all.size());
        SetSeq verified(k, all, d); // re-verify
        r.witness_sets = std::move(all);
        r.witness_d = d;
        r.states_explored = ticker.states;
        r.elapsed_secs = ticker.elapsed();
        return r;
    }

    const WindowSpace ws(k, d);
    U32Store pathlen(ws.bits, PATH_UNSET);
    const auto [max_nodes, start] = longest_path_lengths(ws, pathlen, ticker);
    if (max_nodes == 0) throw check_failure("longest_sequence: no consistent window found");

    std::vector<mask_t> seq = ws.decode(start);
    std::uint64_t cur = start;
    for (std::uint32_t remaining = max_nodes; remaining > 1; --remaining) {
        bool stepped = false;
        for (mask_t x = 0;; ++x) {
            if (ws.can_append(cur, x) && pathlen.get(ws.next(cur, x)) == remaining - 1) {
                seq.push_back(x);
                cur = ws.next(cur, x);
                stepped = true;
                break;
            }
            if (x == ws.setmask) break;
        }
        if (!stepped) throw check_failure("longest_sequence: witness reconstruction failed");
    }

    r.value = std::int64_t(d) + max_nodes - 1;
    if (std::int64_t(seq.size()) != *r.value)
        throw check_failure("longest_sequence: witness length mismatch");
    SetSeq verified(k, seq, d); // re-verify before returning
    r.witness_sets = std::move(seq);
    r.witness_d = d;
    r.states_explored = ticker.states;
    r.elapsed_secs = ticker.elapsed();
    return r;
}

namespace {
std::vector<mask_t> family_mask_members(std::uint64_t fam) {
    std::vector<mask_t> out;
    while (fam) {
        out.push_back(mask_t(std::countr_zero(fam)));
        fam &= fam - 1;
    }
    return out;
}
} // namespace

SearchResult seymour_max_pair(GroundSize k, const Budget& budget) {
    Ticker ticker{budget, "seymour_max_pair"};
    const int n = int(k.subset_count());
    if (n > 32 || (n < 64 && (std::uint64_t{1} << n) > budget.max_states))
        throw Inconclusive("seymour_max_pair: 2^(2^k) families exceed the state budget",
                           ticker.states);

    std::vector<std::uint64_t> inc(std::size_t(n), 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (mask_incomparable(mask_t(x), mask_t(y))) inc[std::size_t(x)] |= std::uint64_t{1} << y;

    // Mutually incomparable pairs (F, G) exist iff G fits inside the common
    // incomparability set S(F) = ∩_{x∈F} inc[x]; so the optimum is
    // max_F min(|F|, |S(F)|) and no pair search is needed.
    auto common = [&](std::uint64_t fam) {
        std::uint64_t s = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        for (std::uint64_t f = fam; f;) {
            s &= inc[std::size_t(std::countr_zero(f))];
            f &= f - 1;
        }
        return s;
    };

    int best = 0;
    const std::uint64_t end = std::uint64_t{1} << n;
    for (std::uint64_t fam = 1; fam < end; ++fam) {
        ticker.visit();
        best = std::max(best, std::min(std::popcount(fam), std::popcount(common(fam))));
    }

    SearchResult r;
    r.kind = Verdict::value;
    r.value = best;
    if (best > 0) {
        // Witness: among optimal pairs, least (F, G) by member lists.
        std::optional<std::pair<std::vector<mask_t>, std::vector<mask_t>>> pick;
        for (std::uint64_t fam = 1; fam < end; ++fam) {
            if (std::popcount(fam) != best) continue;
            const std::uint64_t s = common(fam);
            if (std::popcount(s) < best) continue;
            std::vector<mask_t> fm = family_mask_members(fam);
            std::vector<mask_t> gm = family_mask_members(s);
            gm.resize(std::size_t(best));
            auto cand = std::make_pair(std::move(fm), std::move(gm));
            if (!pick || cand < *pick) pick = std::move(cand);
        }
        Family f(k, pick->first), g(k, pick->second);
        if (!pairwise_incomparable({f, g}) || f.size() != g.size() ||
            int(f.size()) != best)
            throw check_failure("seymour_max_pair: witness failed re-verification");
        r.witness_families = {std::move(f), std::move(g)};
    }
    r.states_explored = ticker.states;
    r.elapsed_secs = ticker.elapsed();
    return r;
}

namespace {

// All m-subsets of the 2^k masks, in lexicographic member-list order.
std::vector<std::vector<mask_t>> all_families_of_size(int n, int m) {
    std::vector<std::vector<mask_t>> out;
    std::vector<mask_t> cur;
    auto rec = [&](auto&& self, int from) -> void {
        if (int(cur.size()) == m) {
            out.push_back(cur);
            return;
        }
        for (int x = from; x <= n - (m - int(cur.size())); ++x) {
            cur.push_back(mask_t(x));
            self(self, x + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Down/up closure of a member list, as a bitmask over P([k]).
std::uint32_t down_bits(const std::vector<mask_t>& members, int k) {
    std::uint32_t bits = 0;
    for (mask_t m : members) bits |= std::uint32_t{1} << m;
    for (int e = 0; e < k; ++e)
        for (int m = (1 << k) - 1; m >= 0; --m)
            if ((m & (1 << e)) && (bits >> m & 1)) bits |= std::uint32_t{1} << (m ^ (1 << e));
    return bits;
}
std::uint32_t up_bits(const std::vector<mask_t>& members, int k) {
    std::uint32_t bits = 0;
    for (mask_t m : members) bits |= std::uint32_t{1} << m;
    for (int e = 0; e < k; ++e)
        for (int m = 0; m < (1 << k); ++m)
            if (!(m & (1 << e)) && (bits >> m & 1)) bits |= std::uint32_t{1} << (m | (1 << e));
    return bits;
}

std::int64_t isqrt64(std::int64_t v) {
    auto r = std::int64_t(std::sqrt(double(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

} // namespace

SearchResult exceeding_chain_search(GroundSize k, std::size_t family_size, std::size_t length,
                                    bool squeeze_middle, const Budget& budget) {
    if (family_size < 1 || family_size > k.subset_count())
        throw usage_error("exceeding_chain_search: family size out of range");
    if (length < 2) throw usage_error("exceeding_chain_search: length must be >= 2");
    if (squeeze_middle && length % 2 != 0)
        throw usage_error("exceeding_chain_search: squeeze needs an even length");
    if (k.value() > 5)
        throw Inconclusive("exceeding_chain_search: family enumeration beyond k=5", 0);

    Ticker ticker{budget, "exceeding_chain_search"};
    const int n = int(k.subset_count());
    const double fcount_est = double(binomial(n, int(family_size)));
    if (fcount_est * fcount_est > double(budget.max_states))
        throw Inconclusive("exceeding_chain_search: family-pair count exceeds the state budget",
                           ticker.states);

    const auto fams = all_families_of_size(n, int(family_size));
    const std::size_t F = fams.size();
    std::vector<std::uint32_t> dn(F), up(F), membits(F);
    for (std::size_t i = 0; i < F; ++i) {
        dn[i] = down_bits(fams[i], k.value());
        up[i] = up_bits(fams[i], k.value());
        for (mask_t m : fams[i]) membits[i] |= std::uint32_t{1} << m;
    }

    // adj[i][j] = F_i ⊢ F_j, i.e. F_j avoids the down-closure of F_i.
    std::vector<std::vector<char>> adj(F, std::vector<char>(F));
    for (std::size_t i = 0; i < F; ++i)
        for (std::size_t j = 0; j < F; ++j) {
            ticker.visit();
            adj[i][j] = (dn[i] & membits[j]) == 0;
        }

    // reach_fwd[t][i]: a path of t edges can start at i.
    // reach_any[t][j]: a path of t edges can end at j.
    const std::size_t half = length / 2;
    const std::size_t need_out = squeeze_middle ? half - 1 : length - 1;
    std::vector<std::vector<char>> fwd(need_out + 1, std::vector<char>(F, 0));
    fwd[0].assign(F, 1);
    for (std::size_t t = 1; t <= need_out; ++t)
        for (std::size_t i = 0; i < F; ++i) {
            for (std::size_t j = 0; j < F; ++j)
                if (adj[i][j] && fwd[t - 1][j]) {
                    fwd[t][i] = 1;
                    break;
                }
            ticker.check_time();
        }

    SearchResult r;
    r.states_explored = ticker.states;

    if (!squeeze_middle) {
        std::size_t start = F;
        for (std::size_t i = 0; i < F; ++i)
            if (fwd[length - 1][i]) {
                start = i;
                break;
            }
        if (start == F) {
            r.kind = Verdict::not_exists;
            r.elapsed_secs = ticker.elapsed();
            return r;
        }
        // Refutation: reconstruct the least chain greedily.
        r.kind = Verdict::exists;
        std::vector<Family> chain{Family(k, fams[start])};
        std::size_t cur = start;
        for (std::size_t t = length - 1; t > 0; --t) {
            for (std::size_t j = 0; j < F; ++j)
                if (adj[cur][j] && fwd[t - 1][j]) {
                    chain.emplace_back(k, fams[j]);
                    cur = j;
                    break;
                }
        }
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            if (!vdash(chain[i], chain[i + 1]))
                throw check_failure("exceeding_chain_search: witness chain failed re-verification");
        r.witness_families = std::move(chain);
        r.states_explored = ticker.states;
        r.elapsed_secs = ticker.elapsed();
        return r;
    }

    std::vector<std::vector<char>> into(half, std::vector<char>(F, 0));
    into[0].assign(F, 1);
    for (std::size_t t = 1; t < half; ++t)
        for (std::size_t j = 0; j < F; ++j) {
            for (std::size_t i = 0; i < F; ++i)
                if (adj[i][j] && into[t - 1][i]) {
                    into[t][j] = 1;
                    break;
                }
            ticker.check_time();
        }

    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::size_t u = 0; u < F; ++u) {
        if (!into[half - 1][u]) continue;
        for (std::size_t v = 0; v < F; ++v) {
            if (!adj[u][v] || !fwd[half - 1][v]) continue;
            // A set B fits between u and v iff no member of u contains it and
            // it contains no member of v.
            const std::uint32_t candidates = full & ~dn[u] & ~up[v];
            if (candidates == 0) continue;

            // Loud refutation path.
            r.kind = Verdict::exists;
            const mask_t b = mask_t(std::countr_zero(candidates));
            // Chain into u: walk backwards choosing least predecessors.
            std::vector<std::size_t> left{u};
            for (std::size_t t = half - 1; t > 0; --t)
                for (std::size_t i = 0; i < F; ++i)
                    if (adj[i][left.back()] && into[t - 1][i]) {
                        left.push_back(i);
                        break;
                    }
            std::reverse(left.begin(), left.end());
            std::vector<std::size_t> idx = left;
            idx.push_back(v);
            for (std::size_t t = half - 1; t > 0; --t)
                for (std::size_t j = 0; j < F; ++j)
                    if (adj[idx.back()][j] && fwd[t - 1][j]) {
                        idx.push_back(j);
                        break;
                    }
            std::vector<Family> chain;
            for (std::size_t i : idx) chain.emplace_back(k, fams[i]);
            for (std::size_t i = 0; i + 1 < chain.size(); ++i)
                if (!vdash(chain[i], chain[i + 1]))
                    throw check_failure("squeeze witness: chain failed re-verification");
            const Family squeezed(k, {b});
            if (!vdash(chain[half - 1], squeezed) || !vdash(squeezed, chain[half]))
                throw check_failure("squeeze witness: middle set failed re-verification");
            r.witness_families = std::move(chain);
            r.witness_sets = std::vector<mask_t>{b};
            r.states_explored = ticker.states;
            r.elapsed_secs = ticker.elapsed();
            return r;
        }
    }
    r.kind = Verdict::not_exists;
    r.states_explored = ticker.states;
    r.elapsed_secs = ticker.elapsed();
    return r;
}

SearchResult exceeding_quad_search(GroundSize k, const Budget& budget) {
    const std::size_t m = (k.subset_count() + 2) / 3; // ⌈2^k/3⌉
    return exceeding_chain_search(k, m, 4, false, budget);
}

SearchResult squeeze_search(GroundSize k, const Budget& budget) {
    if (k.value() < 2) throw usage_error("squeeze_search: k must be >= 2");
    const std::size_t b = k.subset_count() / 4;
    const std::int64_t s = isqrt64(std::int64_t{1} << (k.value() - 1)); // ⌊2^{(k−1)/2}⌋
    return exceeding_chain_search(k, b, std::size_t(4 * s), true, budget);
}

} // namespace exceedkit::search
