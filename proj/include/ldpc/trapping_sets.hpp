#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldpc/decoder.hpp"
#include "ldpc/tanner_graph.hpp"

namespace ldpc {

/// (V, C) classification of a variable-node subset against the two
/// trapping-set conditions: (a) every variable sees at least two even-degree
/// and at most one odd-degree induced check, (b) no outside variable touches
/// two odd checks.
struct SubgraphReport {
    std::vector<int> vars;         // sorted
    std::vector<int> odd_checks;   // sorted, size C
    std::vector<int> even_checks;  // sorted, size s
    bool cond_a = false;
    bool cond_b = false;
    bool is_trapping_set = false;  // cond_a && cond_b

    int v_count() const { return static_cast<int>(vars.size()); }
    int c_count() const { return static_cast<int>(odd_checks.size()); }
};

inline SubgraphReport classify_subset(const TannerGraph& g, const std::vector<int>& vars) {
    if (vars.empty()) throw std::invalid_argument("classify_subset: empty set");
    SubgraphReport rep;
    rep.vars = vars;
    std::sort(rep.vars.begin(), rep.vars.end());
    rep.vars.erase(std::unique(rep.vars.begin(), rep.vars.end()), rep.vars.end());

    auto deg = induced_subgraph_degrees(g, rep.vars);
    for (const auto& [c, d] : deg)
        (d % 2 ? rep.odd_checks : rep.even_checks).push_back(c);

    // (a): per variable, count odd-degree induced neighbors among its checks.
    rep.cond_a = true;
    for (int v : rep.vars) {
        int odd = 0, even = 0;
        for (int c : g.var_adj[v])
            (deg.at(c) % 2 ? odd : even)++;
        if (even < 2 || odd > 1) {
            rep.cond_a = false;
            break;
        }
    }

    // (b): no variable outside the set adjacent to two or more odd checks.
    rep.cond_b = true;
    std::set<int> inside(rep.vars.begin(), rep.vars.end());
    std::map<int, int> outside_hits;
    for (int c : rep.odd_checks)
        for (int v : g.chk_adj[c])
            if (!inside.count(v) && ++outside_hits[v] >= 2) {
                rep.cond_b = false;
                break;
            }

    rep.is_trapping_set = rep.cond_a && rep.cond_b;
    return rep;
}

/// All variable triples lying on a six-cycle. Empty iff girth >= 8.
inline std::vector<std::array<int, 3>> find_three_three(const TannerGraph& g) {
    // A six-cycle is three variables pairwise sharing three distinct checks.
    // Build the shared-check adjacency between variables, then scan ordered
    // triples u < v < w.
    std::vector<std::vector<std::pair<int, int>>> shared(g.n);  // v -> (u, check), u > v
    for (int c = 0; c < g.m; ++c) {
        const auto& a = g.chk_adj[c];
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                shared[a[i]].push_back({a[j], c});
    }
    auto shared_checks = [&](int u, int v) {  // u < v
        std::vector<int> cs;
        for (auto [w, c] : shared[u])
            if (w == v) cs.push_back(c);
        return cs;
    };
    std::vector<std::array<int, 3>> out;
    for (int u = 0; u < g.n; ++u) {
        std::vector<int> partners;
        for (auto [v, c] : shared[u]) partners.push_back(v);
        std::sort(partners.begin(), partners.end());
        partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
        for (std::size_t i = 0; i < partners.size(); ++i)
            for (std::size_t j = i + 1; j < partners.size(); ++j) {
                int v = partners[i], w = partners[j];
                auto cuv = shared_checks(u, v);
                auto cvw = shared_checks(v, w);
                if (cvw.empty()) continue;
                auto cuw = shared_checks(u, w);
                bool found = false;
                for (int c1 : cuv)
                    for (int c2 : cvw)
                        for (int c3 : cuw)
                            if (c1 != c2 && c2 != c3 && c1 != c3) found = true;
                if (found) out.push_back({u, v, w});
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

/// Enumerate connected variable subsets (variables adjacent iff they share a
/// check) of a given size containing `root`. When `root_is_min` the root must
/// be the smallest index in the set (global dedup); otherwise every subset
/// containing root is visited once. Visit returns void; prune decides whether
/// a partial set may still extend to a useful full set.
template <typename Visit, typename Prune>
void enumerate_connected_subsets(const TannerGraph& g, int root, int size,
                                 bool root_is_min, Visit&& visit, Prune&& prune,
                                 std::uint64_t* budget = nullptr) {
    std::vector<int> current{root};
    std::vector<std::uint8_t> in_set(g.n, 0), banned(g.n, 0);
    in_set[root] = 1;

    auto var_neighbors = [&](int v, auto&& fn) {
        for (int c : g.var_adj[v])
            for (int u : g.chk_adj[c])
                if (u != v) fn(u);
    };

    // Classic connected-subgraph enumeration: extend with frontier vertices,
    // banning each extension choice on backtrack so every subset appears once.
    auto rec = [&](auto&& self, const std::vector<int>& frontier) -> bool {
        if (budget) {
            if (*budget == 0) return false;
            --*budget;
        }
        if (static_cast<int>(current.size()) == size) {
            visit(current);
            return true;
        }
        if (!prune(current)) return true;
        std::vector<int> chosen;
        bool ok = true;
        for (std::size_t i = 0; i < frontier.size() && ok; ++i) {
            int v = frontier[i];
            if (banned[v] || in_set[v]) continue;
            current.push_back(v);
            in_set[v] = 1;
            std::vector<int> next_frontier(frontier.begin() + i + 1, frontier.end());
            var_neighbors(v, [&](int u) {
                if (!in_set[u] && !banned[u] && (!root_is_min || u > root))
                    next_frontier.push_back(u);
            });
            std::sort(next_frontier.begin(), next_frontier.end());
            next_frontier.erase(std::unique(next_frontier.begin(), next_frontier.end()),
                                next_frontier.end());
            ok = self(self, next_frontier);
            in_set[v] = 0;
            current.pop_back();
            banned[v] = 1;
            chosen.push_back(v);
        }
        for (int v : chosen) banned[v] = 0;
        return ok;
    };

    std::vector<int> frontier;
    var_neighbors(root, [&](int u) {
        if (!root_is_min || u > root) frontier.push_back(u);
    });
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    rec(rec, frontier);
}

inline int odd_induced_count(const TannerGraph& g, const std::vector<int>& vars) {
    int odd = 0;
    for (const auto& [c, d] : induced_subgraph_degrees(g, vars))
        if (d % 2) ++odd;
    return odd;
}

}  // namespace detail

/// Under girth >= 8, a (5,3)-profile subset containing j is exactly a
/// K_{2,3} in the check-sharing graph: parts {a,b} and {x,y,z} where each
/// cross pair shares one check (six distinct degree-2 checks) and no same-
/// side pair shares any. Searches both roles of j. Fast path used
/// incrementally during construction.
inline std::vector<std::vector<int>> find_53_supports_girth8(const TannerGraph& g, int j) {
    check_var_index(g, j);
    std::vector<std::vector<int>> out;
    std::set<std::vector<int>> seen;

    // Check-sharing neighbors of a variable (unique vars).
    auto neighbors = [&](int v) {
        std::vector<int> ns;
        for (int c : g.var_adj[v])
            for (int u : g.chk_adj[c])
                if (u != v) ns.push_back(u);
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
        return ns;
    };
    auto shares = [&](int u, int v) {
        for (int c : g.var_adj[u])
            if (g.has_edge(v, c)) return true;
        return false;
    };
    auto emit = [&](std::vector<int> vars) {
        std::sort(vars.begin(), vars.end());
        if (seen.insert(vars).second) out.push_back(std::move(vars));
    };

    auto nj = neighbors(j);

    // Role 1: j on the two-side. Partner b at sharing-distance two with at
    // least three common neighbors.
    {
        std::map<int, std::vector<int>> common;  // b -> common neighbors with j
        for (int x : nj)
            for (int b : neighbors(x))
                if (b != j) common[b].push_back(x);
        for (auto& [b, xs] : common) {
            if (xs.size() < 3 || shares(j, b)) continue;
            std::sort(xs.begin(), xs.end());
            xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
            const int t = static_cast<int>(xs.size());
            for (int i = 0; i < t; ++i)
                for (int k = i + 1; k < t; ++k) {
                    if (shares(xs[i], xs[k])) continue;
                    for (int l = k + 1; l < t; ++l) {
                        if (shares(xs[i], xs[l]) || shares(xs[k], xs[l])) continue;
                        emit({j, b, xs[i], xs[k], xs[l]});
                    }
                }
        }
    }

    // Role 2: j on the three-side. a, b are neighbors of j that do not share
    // with each other; y, z come from their other common neighbors.
    for (std::size_t i = 0; i < nj.size(); ++i)
        for (std::size_t k = i + 1; k < nj.size(); ++k) {
            int a = nj[i], b = nj[k];
            if (shares(a, b)) continue;
            auto na = neighbors(a), nb = neighbors(b);
            std::vector<int> common;
            std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                                  std::back_inserter(common));
            std::erase(common, j);
            for (std::size_t s = 0; s < common.size(); ++s)
                for (std::size_t t = s + 1; t < common.size(); ++t) {
                    int y = common[s], z = common[t];
                    if (shares(j, y) || shares(j, z) || shares(y, z)) continue;
                    emit({a, b, j, y, z});
                }
        }

    return out;
}

inline bool matches_53_profile(const TannerGraph& g, const std::vector<int>& vars) {
    auto deg = induced_subgraph_degrees(g, vars);
    int d1 = 0, d2 = 0;
    for (const auto& [c, d] : deg) {
        if (d == 1) ++d1;
        else if (d == 2) ++d2;
        else return false;
    }
    return d1 == 3 && d2 == 6;
}

/// All 5-variable sets whose induced subgraph has exactly three degree-1
/// checks and six degree-2 checks with condition (a) satisfied. Condition (b)
/// is reported but not required. Exact under girth >= 8 (where the fast
/// K_{2,3} characterization applies); approximate on girth-6 inputs, which
/// fall back to connected-subset enumeration. When restrict_to_var is set,
/// only sets containing that variable are searched (incremental mode for
/// construction).
inline std::vector<SubgraphReport> find_53_structures(
    const TannerGraph& g, std::optional<int> restrict_to_var = std::nullopt,
    std::optional<bool> girth_at_least_8 = std::nullopt) {
    bool g8 = girth_at_least_8 ? *girth_at_least_8 : girth(g) >= 8;
    std::vector<SubgraphReport> out;
    std::set<std::vector<int>> seen;

    auto emit = [&](const std::vector<int>& vars) {
        if (!matches_53_profile(g, vars)) return;
        std::vector<int> key = vars;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) return;
        auto rep = classify_subset(g, key);
        if (rep.cond_a) out.push_back(std::move(rep));
    };

    if (g8) {
        if (restrict_to_var) {
            for (auto& s : find_53_supports_girth8(g, *restrict_to_var)) emit(s);
        } else {
            for (int v = 0; v < g.n; ++v)
                for (auto& s : find_53_supports_girth8(g, v)) emit(s);
        }
    } else {
        // Each added variable has three edges, so it can reduce the induced
        // odd count by at most three.
        auto prune = [&](const std::vector<int>& vars) {
            int remaining = 5 - static_cast<int>(vars.size());
            return detail::odd_induced_count(g, vars) <= 3 + 3 * remaining;
        };
        if (restrict_to_var) {
            check_var_index(g, *restrict_to_var);
            detail::enumerate_connected_subsets(g, *restrict_to_var, 5, false, emit, prune);
        } else {
            for (int v = 0; v < g.n; ++v)
                detail::enumerate_connected_subsets(g, v, 5, true, emit, prune);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SubgraphReport& a, const SubgraphReport& b) { return a.vars < b.vars; });
    return out;
}

struct CodewordSearchResult {
    std::vector<std::vector<int>> supports;  // sorted supports, sorted list
    bool exhaustive = true;                  // false when budget ran out
};

/// All codeword supports of weight <= 8 discoverable by connected-subset
/// growth. Every codeword support of a connected code decomposes into
/// connected components which are themselves codewords, so connected growth
/// up to size 8 covers everything of weight 8 and below. `budget` caps node
/// expansions; 0 means unlimited.
inline CodewordSearchResult find_80_codewords(const TannerGraph& g,
                                              std::uint64_t budget = 0) {
    CodewordSearchResult res;
    std::set<std::vector<int>> seen;
    std::uint64_t budget_left = budget ? budget : UINT64_MAX;
    bool limited = budget != 0;

    for (int v = 0; v < g.n; ++v) {
        // Visit every connected subset of size up to 8 rooted at its minimum
        // variable; record the zero-odd-check ones.
        auto prune = [&](const std::vector<int>& vars) {
            int size = static_cast<int>(vars.size());
            int odd = detail::odd_induced_count(g, vars);
            if (odd == 0 && size >= 1) {
                if (support_is_codeword(g, vars)) {
                    std::vector<int> key = vars;
                    std::sort(key.begin(), key.end());
                    if (seen.insert(key).second) res.supports.push_back(std::move(key));
                }
            }
            return odd <= 3 * (8 - size);
        };
        auto visit = [&](const std::vector<int>& vars) { prune(vars); };
        detail::enumerate_connected_subsets(g, v, 8, true, visit, prune,
                                            limited ? &budget_left : nullptr);
        if (limited && budget_left == 0) {
            res.exhaustive = false;
            break;
        }
    }
    std::sort(res.supports.begin(), res.supports.end());
    return res;
}

struct CriticalNumberResult {
    bool found = false;
    int value = 0;          // valid when found
    int search_bound = 0;   // max subset size examined
    std::vector<int> witness;  // failing error pattern when found
};

/// Minimal k such that some k-subset of `vars`, used as the error pattern,
/// fails to decode back to the all-zero codeword. Exhaustive over subsets of
/// the given structure only (a failure subset of size equal to the critical
/// number exists inside the trapping set).
inline CriticalNumberResult critical_number(const TannerGraph& g,
                                            const std::vector<int>& vars,
                                            const DecoderConfig& cfg = {}) {
    if (vars.size() > 10)
        throw std::invalid_argument("critical_number: structure larger than exhaustivity bound");
    std::vector<int> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    const int nvars = static_cast<int>(sorted.size());
    CriticalNumberResult res;
    res.search_bound = nvars;
    Decoder dec(g, cfg);

    std::vector<int> subset;
    for (int k = 1; k <= nvars; ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            subset.clear();
            for (int i : idx) subset.push_back(sorted[i]);
            auto outcome = dec.decode_support(subset);
            bool ok = outcome.status == DecodeStatus::Converged &&
                      outcome.residual_error_support.empty();
            if (!ok) {
                res.found = true;
                res.value = k;
                res.witness = subset;
                return res;
            }
            // next combination
            int i = k - 1;
            while (i >= 0 && idx[i] == nvars - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return res;
}

}  // namespace ldpc
