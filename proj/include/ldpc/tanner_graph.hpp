#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldpc {

/// Bipartite Tanner graph: n variable nodes, m check nodes, both adjacency
/// views kept mutually consistent. Neighbor lists are sorted ascending once
/// construction is finished (see sort_adjacency / add_edge keeps them sorted).
struct TannerGraph {
    int n = 0;  // variable nodes
    int m = 0;  // check nodes
    std::vector<std::vector<int>> var_adj;  // per variable: check neighbors
    std::vector<std::vector<int>> chk_adj;  // per check: variable neighbors

    int var_degree(int v) const { return static_cast<int>(var_adj[v].size()); }
    int chk_degree(int c) const { return static_cast<int>(chk_adj[c].size()); }

    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto& a : var_adj) e += a.size();
        return e;
    }

    bool has_edge(int v, int c) const {
        const auto& a = var_adj[v];
        return std::binary_search(a.begin(), a.end(), c);
    }

    bool operator==(const TannerGraph&) const = default;
};

inline TannerGraph new_graph(int n, int m) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("new_graph: n and m must be >= 1");
    TannerGraph g;
    g.n = n;
    g.m = m;
    g.var_adj.resize(n);
    g.chk_adj.resize(m);
    return g;
}

inline void check_var_index(const TannerGraph& g, int v) {
    if (v < 0 || v >= g.n) throw std::out_of_range("variable index out of range");
}

inline void check_chk_index(const TannerGraph& g, int c) {
    if (c < 0 || c >= g.m) throw std::out_of_range("check index out of range");
}

/// Insert edge (v, c), keeping both neighbor lists sorted. Parallel edges are
/// rejected: a parallel edge is a 2-cycle and the girth-8 regime excludes it.
inline void add_edge(TannerGraph& g, int v, int c) {
    check_var_index(g, v);
    check_chk_index(g, c);
    auto& va = g.var_adj[v];
    auto it = std::lower_bound(va.begin(), va.end(), c);
    if (it != va.end() && *it == c)
        throw std::invalid_argument("duplicate edge");
    va.insert(it, c);
    auto& ca = g.chk_adj[c];
    ca.insert(std::lower_bound(ca.begin(), ca.end(), v), v);
}

inline void remove_edge(TannerGraph& g, int v, int c) {
    check_var_index(g, v);
    check_chk_index(g, c);
    auto& va = g.var_adj[v];
    auto it = std::lower_bound(va.begin(), va.end(), c);
    if (it == va.end() || *it != c)
        throw std::invalid_argument("remove_edge: edge absent");
    va.erase(it);
    auto& ca = g.chk_adj[c];
    ca.erase(std::lower_bound(ca.begin(), ca.end(), v));
}

inline void sort_adjacency(TannerGraph& g) {
    for (auto& a : g.var_adj) std::sort(a.begin(), a.end());
    for (auto& a : g.chk_adj) std::sort(a.begin(), a.end());
}

inline bool is_column_weight_three(const TannerGraph& g) {
    return std::all_of(g.var_adj.begin(), g.var_adj.end(),
                       [](const auto& a) { return a.size() == 3; });
}

constexpr int kInfiniteGirth = std::numeric_limits<int>::max();

/// Shortest cycle length, or kInfiniteGirth for a forest. BFS from every node
/// with parent-edge exclusion; exact for bipartite graphs (all cycles even).
inline int girth(const TannerGraph& g) {
    const int total = g.n + g.m;  // variables first, then checks
    auto neighbors = [&](int u, auto&& fn) {
        if (u < g.n)
            for (int c : g.var_adj[u]) fn(g.n + c);
        else
            for (int v : g.chk_adj[u - g.n]) fn(v);
    };
    int best = kInfiniteGirth;
    std::vector<int> dist(total), parent(total);
    std::vector<int> q;
    q.reserve(total);
    for (int root = 0; root < total; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[root] = 0;
        parent[root] = -1;
        q.clear();
        q.push_back(root);
        for (std::size_t head = 0; head < q.size(); ++head) {
            int u = q[head];
            if (2 * dist[u] >= best) break;  // cannot improve further
            neighbors(u, [&](int w) {
                if (w == parent[u]) return;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push_back(w);
                } else {
                    // Non-tree edge closes a walk of length dist[u]+dist[w]+1,
                    // which contains a cycle no longer than that.
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            });
        }
    }
    return best;
}

/// For every check adjacent to at least one variable in `vars`, its induced
/// degree (edge count into `vars`). Checks with zero edges are omitted.
inline std::map<int, int> induced_subgraph_degrees(const TannerGraph& g,
                                                   const std::vector<int>& vars) {
    std::map<int, int> deg;
    for (int v : vars) {
        check_var_index(g, v);
        for (int c : g.var_adj[v]) ++deg[c];
    }
    return deg;
}

inline std::vector<std::uint8_t> syndrome(const TannerGraph& g,
                                          const std::vector<std::uint8_t>& word) {
    if (static_cast<int>(word.size()) != g.n)
        throw std::invalid_argument("syndrome: word length != n");
    std::vector<std::uint8_t> s(g.m, 0);
    for (int c = 0; c < g.m; ++c) {
        std::uint8_t acc = 0;
        for (int v : g.chk_adj[c]) acc ^= word[v];
        s[c] = acc;
    }
    return s;
}

inline bool is_codeword(const TannerGraph& g, const std::vector<std::uint8_t>& word) {
    if (static_cast<int>(word.size()) != g.n)
        throw std::invalid_argument("is_codeword: word length != n");
    for (int c = 0; c < g.m; ++c) {
        std::uint8_t acc = 0;
        for (int v : g.chk_adj[c]) acc ^= word[v];
        if (acc) return false;
    }
    return true;
}

/// Zero syndrome restricted to a support set; avoids materializing the word.
inline bool support_is_codeword(const TannerGraph& g, const std::vector<int>& support) {
    for (const auto& [c, d] : induced_subgraph_degrees(g, support))
        if (d % 2 != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// alist I/O (1-based neighbor lists, as in the published code archives)

inline TannerGraph read_alist(std::istream& in) {
    auto next_int = [&](const char* what) {
        long long x;
        if (!(in >> x)) throw std::runtime_error(std::string("alist: missing ") + what);
        return x;
    };
    long long n = next_int("n"), m = next_int("m");
    if (n < 1 || m < 1 || n > 10'000'000 || m > 10'000'000)
        throw std::runtime_error("alist: malformed counts");
    long long max_vd = next_int("max var degree"), max_cd = next_int("max chk degree");
    TannerGraph g = new_graph(static_cast<int>(n), static_cast<int>(m));
    std::vector<int> vdeg(g.n), cdeg(g.m);
    for (int v = 0; v < g.n; ++v) {
        long long d = next_int("var degree");
        if (d < 0 || d > max_vd) throw std::runtime_error("alist: var degree out of range");
        vdeg[v] = static_cast<int>(d);
    }
    for (int c = 0; c < g.m; ++c) {
        long long d = next_int("chk degree");
        if (d < 0 || d > max_cd) throw std::runtime_error("alist: chk degree out of range");
        cdeg[c] = static_cast<int>(d);
    }
    for (int v = 0; v < g.n; ++v) {
        for (int k = 0; k < max_vd; ++k) {
            long long c = next_int("var neighbor");
            if (k < vdeg[v]) {
                if (c < 1 || c > g.m) throw std::runtime_error("alist: neighbor index out of range (1-based)");
                add_edge(g, v, static_cast<int>(c - 1));
            } else if (c != 0) {
                throw std::runtime_error("alist: expected 0 padding");
            }
        }
    }
    // Check-side lists must agree with what the variable side declared.
    for (int c = 0; c < g.m; ++c) {
        std::vector<int> listed;
        for (int k = 0; k < max_cd; ++k) {
            long long v = next_int("chk neighbor");
            if (k < cdeg[c]) {
                if (v < 1 || v > g.n) throw std::runtime_error("alist: neighbor index out of range (1-based)");
                listed.push_back(static_cast<int>(v - 1));
            } else if (v != 0) {
                throw std::runtime_error("alist: expected 0 padding");
            }
        }
        std::sort(listed.begin(), listed.end());
        if (listed != g.chk_adj[c])
            throw std::runtime_error("alist: degree/list mismatch between views");
    }
    return g;
}

inline TannerGraph read_alist(const std::string& text) {
    std::istringstream in(text);
    return read_alist(in);
}

inline void write_alist(const TannerGraph& g, std::ostream& out) {
    int max_vd = 0, max_cd = 0;
    for (int v = 0; v < g.n; ++v) max_vd = std::max(max_vd, g.var_degree(v));
    for (int c = 0; c < g.m; ++c) max_cd = std::max(max_cd, g.chk_degree(c));
    out << g.n << ' ' << g.m << '\n' << max_vd << ' ' << max_cd << '\n';
    for (int v = 0; v < g.n; ++v) out << g.var_degree(v) << (v + 1 < g.n ? ' ' : '\n');
    for (int c = 0; c < g.m; ++c) out << g.chk_degree(c) << (c + 1 < g.m ? ' ' : '\n');
    for (int v = 0; v < g.n; ++v) {
        for (int k = 0; k < max_vd; ++k) {
            if (k) out << ' ';
            out << (k < g.var_degree(v) ? g.var_adj[v][k] + 1 : 0);
        }
        out << '\n';
    }
    for (int c = 0; c < g.m; ++c) {
        for (int k = 0; k < max_cd; ++k) {
            if (k) out << ' ';
            out << (k < g.chk_degree(c) ? g.chk_adj[c][k] + 1 : 0);
        }
        out << '\n';
    }
}

inline std::string write_alist(const TannerGraph& g) {
    std::ostringstream out;
    write_alist(g, out);
    return out.str();
}

// Diagnostic edge-list format, "v c" per line (0-based). Not a compatibility
// surface.
inline void write_edge_list(const TannerGraph& g, std::ostream& out) {
    for (int v = 0; v < g.n; ++v)
        for (int c : g.var_adj[v]) out << v << ' ' << c << '\n';
}

}  // namespace ldpc
