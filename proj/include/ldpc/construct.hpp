#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <tuple>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldpc/rng.hpp"
#include "ldpc/tanner_graph.hpp"
#include "ldpc/trapping_sets.hpp"

namespace ldpc {

struct ConstructionParams {
    int n = 0;
    int m = 0;
    int gamma = 3;               // correctness claims hold for 3 only
    int max_check_degree = 7;
    int tree_depth = 6;          // edge-levels; new edges close cycles >= tree_depth + 2
    std::uint64_t rng_seed = 0;
    bool randomize = false;      // permute variable processing order by rng_seed
    bool avoid_53 = true;        // reject candidates that create a (5,3) structure
    int repair_attempts = 100;
    int ripup_attempts = 300;    // rip-up/re-route budget for wedged growth
};

namespace detail {

// Seeded tie-break among equal-degree candidates. Plain lowest-index ties
// funnel consecutive variables onto the same low-index checks and the
// growth jams on (5,3) rejections; hashing the tie keeps the choice
// deterministic per seed while spreading the load.
inline std::uint64_t tie_hash(std::uint64_t seed, int variable, int k, int check) {
    std::uint64_t z = seed ^ (static_cast<std::uint64_t>(variable) << 32) ^
                      (static_cast<std::uint64_t>(k) << 24) ^
                      static_cast<std::uint64_t>(check);
    z = (z + 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline void order_candidates(std::vector<int>& candidates, const TannerGraph& g,
                             std::uint64_t seed, int variable, int k) {
    std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        return std::tuple(g.chk_degree(a), tie_hash(seed, variable, k, a), a) <
               std::tuple(g.chk_degree(b), tie_hash(seed, variable, k, b), b);
    });
}

}  // namespace detail

inline void check_feasible(const ConstructionParams& p) {
    if (p.n < 1 || p.m < 1) throw std::invalid_argument("construct: n, m must be >= 1");
    if (p.gamma < 1) throw std::invalid_argument("construct: gamma must be >= 1");
    if (p.tree_depth < 2) throw std::invalid_argument("construct: tree_depth must be >= 2");
    if (static_cast<long long>(p.n) * p.gamma >
        static_cast<long long>(p.m) * p.max_check_degree)
        throw std::invalid_argument(
            "construct: infeasible degrees, n*gamma > m*max_check_degree");
}

struct EdgeDecision {
    int seq = 0;               // global event order, shared with rip-ups/repairs
    int variable = 0;
    int k = 0;                 // which edge of the variable
    int chosen_check = -1;
    int candidate_count = 0;   // candidate set size before rejections
    std::vector<int> rejected; // checks rejected for creating a (5,3)
};

struct RipupAction {
    int seq = 0;
    int blocked_variable = 0;   // the variable whose wiring was stuck
    int ripped_variable = 0;    // the variable whose edges were removed
    std::vector<int> removed_checks;
};

struct RepairAction {
    int seq = 0;
    int variable = 0;
    int removed_check = 0;
    int added_check = 0;
    std::vector<int> codeword;  // the support being broken up
};

struct ConstructionLog {
    std::vector<EdgeDecision> decisions;
    std::vector<RipupAction> ripups;
    std::vector<RepairAction> repairs;
    int next_seq = 0;
};

class CandidateExhausted : public std::runtime_error {
public:
    CandidateExhausted(int variable, int k, ConstructionLog log)
        : std::runtime_error("construction: candidate set exhausted at variable " +
                             std::to_string(variable) + ", edge " + std::to_string(k)),
          variable(variable), k(k), log(std::move(log)) {}
    int variable, k;
    ConstructionLog log;
};

class RepairFailed : public std::runtime_error {
public:
    explicit RepairFailed(std::vector<std::vector<int>> survivors)
        : std::runtime_error("repair: weight-8 codewords remain after attempt budget"),
          survivors(std::move(survivors)) {}
    std::vector<std::vector<int>> survivors;
};

/// Checks at graph distance > depth (in edges) from variable j, excluding
/// checks at the max-degree cap, ordered by (degree asc, index asc).
/// Connecting j to any returned check creates only cycles of length
/// >= depth + 2.
inline std::vector<int> candidate_checks(const TannerGraph& g, int j, int depth,
                                         int max_check_degree) {
    check_var_index(g, j);
    // BFS over nodes; variables at even distance, checks at odd distance.
    std::vector<int> vdist(g.n, -1), cdist(g.m, -1);
    vdist[j] = 0;
    std::queue<std::pair<int, bool>> q;  // (index, is_check)
    q.push({j, false});
    while (!q.empty()) {
        auto [u, is_check] = q.front();
        q.pop();
        int d = is_check ? cdist[u] : vdist[u];
        if (d >= depth) continue;
        if (is_check) {
            for (int v : g.chk_adj[u])
                if (vdist[v] < 0) {
                    vdist[v] = d + 1;
                    q.push({v, false});
                }
        } else {
            for (int c : g.var_adj[u])
                if (cdist[c] < 0) {
                    cdist[c] = d + 1;
                    q.push({c, true});
                }
        }
    }
    std::vector<int> out;
    for (int c = 0; c < g.m; ++c)
        if (cdist[c] < 0 && g.chk_degree(c) < max_check_degree) out.push_back(c);
    std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
        return std::pair(g.chk_degree(a), a) < std::pair(g.chk_degree(b), b);
    });
    return out;
}

namespace detail {

/// Candidate list for one edge slot of variable j: slot 0 scans all
/// unsaturated checks, later slots take the BFS candidates. Ordered by
/// (degree, seeded tie-break).
inline std::vector<int> slot_candidates(const TannerGraph& g, int j, int k,
                                        const ConstructionParams& p, int excluded) {
    std::vector<int> candidates;
    if (k == 0) {
        // Smallest degree, zero included and preferred.
        for (int c = 0; c < g.m; ++c)
            if (c != excluded && g.chk_degree(c) < p.max_check_degree)
                candidates.push_back(c);
    } else {
        candidates = candidate_checks(g, j, p.tree_depth, p.max_check_degree);
        if (excluded >= 0)
            std::erase(candidates, excluded);
    }
    order_candidates(candidates, g, p.rng_seed, j, k);
    return candidates;
}

// Growth keeps girth >= 8 by construction, so the fast K_{2,3} search is
// exact here.
inline bool creates_53(const TannerGraph& g, int j, const ConstructionParams& p) {
    return p.avoid_53 && !find_53_supports_girth8(g, j).empty();
}

/// Place one edge for variable j (edge slot k): first candidate whose
/// addition creates no (5,3) structure. Used by repair, where only a single
/// edge moves.
inline void place_edge(TannerGraph& g, int j, int k, const ConstructionParams& p,
                       ConstructionLog& log, int excluded = -1) {
    EdgeDecision dec;
    dec.variable = j;
    dec.k = k;
    auto candidates = slot_candidates(g, j, k, p, excluded);
    dec.candidate_count = static_cast<int>(candidates.size());
    for (int c : candidates) {
        add_edge(g, j, c);
        if (creates_53(g, j, p)) {
            remove_edge(g, j, c);
            dec.rejected.push_back(c);
            continue;
        }
        dec.chosen_check = c;
        dec.seq = log.next_seq++;
        log.decisions.push_back(std::move(dec));
        return;
    }
    dec.seq = log.next_seq++;
    log.decisions.push_back(std::move(dec));
    throw CandidateExhausted(j, k, log);
}

/// Wire all gamma edges of variable j with bounded backtracking: when a slot
/// exhausts its candidates, the previous slot's choice is undone and its next
/// candidate tried. Placement attempts are capped so a hopeless variable
/// fails fast instead of thrashing.
inline void place_variable(TannerGraph& g, int j, const ConstructionParams& p,
                           ConstructionLog& log) {
    constexpr int kAttemptCap = 200000;
    int attempts = 0;
    std::vector<EdgeDecision> slots;  // accepted decisions, one per wired slot
    // Per-slot iteration state: candidate list + next index to try.
    std::vector<std::pair<std::vector<int>, std::size_t>> iters;
    int k = 0;
    while (k < p.gamma) {
        if (static_cast<int>(iters.size()) == k)
            iters.push_back({slot_candidates(g, j, k, p, -1), 0});
        auto& [cands, next] = iters[k];
        bool placed = false;
        EdgeDecision dec;
        dec.variable = j;
        dec.k = k;
        dec.candidate_count = static_cast<int>(cands.size());
        while (next < cands.size()) {
            int c = cands[next++];
            if (g.chk_degree(c) >= p.max_check_degree || g.has_edge(j, c)) continue;
            if (++attempts > kAttemptCap) {
                for (auto& s : slots) remove_edge(g, j, s.chosen_check);
                throw CandidateExhausted(j, k, log);
            }
            add_edge(g, j, c);
            if (creates_53(g, j, p)) {
                remove_edge(g, j, c);
                dec.rejected.push_back(c);
                continue;
            }
            dec.chosen_check = c;
            placed = true;
            break;
        }
        if (placed) {
            slots.push_back(std::move(dec));
            ++k;
        } else if (k > 0) {
            // Backtrack: undo the previous slot and resume its candidate scan.
            iters.pop_back();
            remove_edge(g, j, slots.back().chosen_check);
            slots.pop_back();
            --k;
        } else {
            dec.seq = log.next_seq++;
            log.decisions.push_back(std::move(dec));
            throw CandidateExhausted(j, 0, log);
        }
    }
    for (auto& s : slots) {
        s.seq = log.next_seq++;
        log.decisions.push_back(std::move(s));
    }
}

}  // namespace detail

/// Modified progressive edge growth: every variable gets gamma edges, each
/// new edge closes only cycles of length >= tree_depth + 2, and candidates
/// that would create a (5,3) structure are rejected. When a variable cannot
/// be wired at all, a seeded-random fully wired variable is ripped up and
/// re-queued; the budget for this is ripup_attempts. Deterministic given
/// rng_seed.
inline std::pair<TannerGraph, ConstructionLog> peg_construct(const ConstructionParams& p) {
    check_feasible(p);
    TannerGraph g = new_graph(p.n, p.m);
    ConstructionLog log;

    std::vector<int> order(p.n);
    std::iota(order.begin(), order.end(), 0);
    if (p.randomize) {
        CounterRng rng(p.rng_seed, 0);
        // Fisher-Yates with the counter stream.
        for (int i = p.n - 1; i > 0; --i)
            std::swap(order[i], order[rng.next() % (i + 1)]);
    }

    CounterRng rip_rng(p.rng_seed, 9999);  // stream reserved for rip-up picks
    std::deque<int> pending(order.begin(), order.end());
    int ripups = 0;
    while (!pending.empty()) {
        int j = pending.front();
        try {
            detail::place_variable(g, j, p, log);
            pending.pop_front();
        } catch (const CandidateExhausted& blocked) {
            if (++ripups > p.ripup_attempts)
                throw CandidateExhausted(blocked.variable, blocked.k, log);
            std::vector<int> wired;
            for (int v = 0; v < p.n; ++v)
                if (v != j && g.var_degree(v) == static_cast<std::size_t>(p.gamma))
                    wired.push_back(v);
            if (wired.empty()) throw CandidateExhausted(blocked.variable, blocked.k, log);
            int victim = wired[rip_rng.next() % wired.size()];
            RipupAction rip;
            rip.seq = log.next_seq++;
            rip.blocked_variable = j;
            rip.ripped_variable = victim;
            rip.removed_checks = g.var_adj[victim];
            for (int c : rip.removed_checks) remove_edge(g, victim, c);
            log.ripups.push_back(std::move(rip));
            pending.push_back(victim);
        }
    }
    return {std::move(g), std::move(log)};
}

/// Replay a construction log against an empty graph; reproduces the output
/// graph exactly. Events are applied in global seq order so rip-ups and
/// repairs interleave correctly with edge decisions.
inline TannerGraph replay_log(const ConstructionParams& p, const ConstructionLog& log) {
    TannerGraph g = new_graph(p.n, p.m);
    enum class Kind { Decision, Ripup, Repair };
    std::vector<std::pair<int, std::pair<Kind, std::size_t>>> events;
    for (std::size_t i = 0; i < log.decisions.size(); ++i)
        events.push_back({log.decisions[i].seq, {Kind::Decision, i}});
    for (std::size_t i = 0; i < log.ripups.size(); ++i)
        events.push_back({log.ripups[i].seq, {Kind::Ripup, i}});
    for (std::size_t i = 0; i < log.repairs.size(); ++i)
        events.push_back({log.repairs[i].seq, {Kind::Repair, i}});
    std::sort(events.begin(), events.end());
    for (const auto& [seq, ev] : events) {
        switch (ev.first) {
            case Kind::Decision: {
                const auto& d = log.decisions[ev.second];
                if (d.chosen_check >= 0) add_edge(g, d.variable, d.chosen_check);
                break;
            }
            case Kind::Ripup: {
                const auto& r = log.ripups[ev.second];
                for (int c : r.removed_checks) remove_edge(g, r.ripped_variable, c);
                break;
            }
            case Kind::Repair: {
                const auto& r = log.repairs[ev.second];
                remove_edge(g, r.variable, r.removed_check);
                add_edge(g, r.variable, r.added_check);
                break;
            }
        }
    }
    return g;
}

/// Remove weight-8 codewords by edge swapping: delete the most constrained
/// edge of the least constrained variable on each codeword's induced
/// subgraph, then re-run single-edge placement for that variable excluding
/// the deleted check. Girth, (5,3)-freeness and variable degrees are
/// preserved by the placement rule. Returns the graph plus the input log
/// extended with the repairs, so the combined log replays to the final graph.
inline std::pair<TannerGraph, ConstructionLog> repair_weight8(TannerGraph g,
                                                              const ConstructionParams& p,
                                                              const ConstructionLog& construction_log = {}) {
    ConstructionLog log = construction_log;
    // Rejection counts from construction, used to pick the least constrained
    // variable to rewire.
    std::vector<int> rejections(g.n, 0);
    for (const auto& d : construction_log.decisions)
        rejections[d.variable] += static_cast<int>(d.rejected.size());

    for (int attempt = 0; attempt < p.repair_attempts; ++attempt) {
        auto found = find_80_codewords(g);
        if (found.supports.empty()) return {std::move(g), std::move(log)};

        const auto& cw = found.supports.front();
        int v = *std::min_element(cw.begin(), cw.end(), [&](int a, int b) {
            return std::pair(rejections[a], a) < std::pair(rejections[b], b);
        });
        // Among v's edges on the codeword's induced subgraph, drop the one
        // with the highest-degree check.
        int drop = -1;
        for (int c : g.var_adj[v])
            if (drop < 0 || g.chk_degree(c) > g.chk_degree(drop)) drop = c;
        remove_edge(g, v, drop);
        int before = static_cast<int>(log.decisions.size());
        try {
            detail::place_edge(g, v, 1, p, log, drop);
        } catch (const CandidateExhausted&) {
            // Put the edge back and give up on this codeword ordering.
            add_edge(g, v, drop);
            throw RepairFailed(found.supports);
        }
        RepairAction action;
        action.seq = log.next_seq++;
        action.variable = v;
        action.removed_check = drop;
        action.added_check = log.decisions.back().chosen_check;
        action.codeword = cw;
        log.repairs.push_back(std::move(action));
        log.decisions.resize(before);  // repairs are recorded as RepairActions
        rejections[v] += 1;
    }
    auto remaining = find_80_codewords(g);
    if (remaining.supports.empty()) return {std::move(g), std::move(log)};
    throw RepairFailed(remaining.supports);
}

}  // namespace ldpc
