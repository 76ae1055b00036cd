#pragma once

// Hand-built graphs used across the test suites.

#include "ldpc/construct.hpp"
#include "ldpc/tanner_graph.hpp"

namespace fixtures {

// 3 variables, 3 checks, each variable on 2 checks cyclically. Girth 6.
inline ldpc::TannerGraph six_cycle() {
    auto g = ldpc::new_graph(3, 3);
    ldpc::add_edge(g, 0, 0);
    ldpc::add_edge(g, 1, 0);
    ldpc::add_edge(g, 1, 1);
    ldpc::add_edge(g, 2, 1);
    ldpc::add_edge(g, 2, 2);
    ldpc::add_edge(g, 0, 2);
    return g;
}

// Column-weight-three (3,3) gadget: the six-cycle above plus one private
// degree-1 check per variable. Support {0,1,2} is a trapping set with
// critical number three.
inline ldpc::TannerGraph three_three_gadget() {
    auto g = ldpc::new_graph(3, 6);
    ldpc::add_edge(g, 0, 0);
    ldpc::add_edge(g, 1, 0);
    ldpc::add_edge(g, 1, 1);
    ldpc::add_edge(g, 2, 1);
    ldpc::add_edge(g, 2, 2);
    ldpc::add_edge(g, 0, 2);
    ldpc::add_edge(g, 0, 3);
    ldpc::add_edge(g, 1, 4);
    ldpc::add_edge(g, 2, 5);
    return g;
}

// (5,3) gadget: variable-sharing graph is K_{2,3} (parts {0,1} and {2,3,4}),
// giving six degree-2 checks; variables 2,3,4 get one private check each.
// Tanner girth 8 (K_{2,3} has girth 4).
inline ldpc::TannerGraph five_three_gadget() {
    auto g = ldpc::new_graph(5, 9);
    int c = 0;
    for (int u : {0, 1})
        for (int v : {2, 3, 4}) {
            ldpc::add_edge(g, u, c);
            ldpc::add_edge(g, v, c);
            ++c;
        }
    ldpc::add_edge(g, 2, 6);
    ldpc::add_edge(g, 3, 7);
    ldpc::add_edge(g, 4, 8);
    return g;
}

// (8,0) gadget: variable-sharing graph is the cube Q3 (3-regular, girth 4),
// so the Tanner graph has 12 degree-2 checks and girth 8. The full support
// is a weight-8 codeword.
inline ldpc::TannerGraph eight_zero_gadget() {
    auto g = ldpc::new_graph(8, 12);
    int c = 0;
    for (int v = 0; v < 8; ++v)
        for (int bit = 0; bit < 3; ++bit) {
            int u = v ^ (1 << bit);
            if (u > v) {
                ldpc::add_edge(g, v, c);
                ldpc::add_edge(g, u, c);
                ++c;
            }
        }
    return g;
}

// A small forest: 4 variables hanging off 2 checks, no cycle.
inline ldpc::TannerGraph tree_graph() {
    auto g = ldpc::new_graph(4, 2);
    ldpc::add_edge(g, 0, 0);
    ldpc::add_edge(g, 1, 0);
    ldpc::add_edge(g, 2, 1);
    ldpc::add_edge(g, 3, 1);
    return g;
}

// Cached clean construction (girth >= 8, no (5,3), repaired) shared by the
// heavier suites. n below ~200 tends to wedge the (5,3)-avoiding growth.
inline const ldpc::TannerGraph& clean_code(int n = 200, std::uint64_t seed = 1) {
    static ldpc::TannerGraph g = [&] {
        ldpc::ConstructionParams p;
        p.n = n;
        p.m = n / 2;
        p.rng_seed = seed;
        auto [built, log] = ldpc::peg_construct(p);
        auto [repaired, rlog] = ldpc::repair_weight8(std::move(built), p, log);
        return repaired;
    }();
    return g;
}

// Same growth with the (5,3) rejection switched off: girth >= 8 but (5,3)
// structures are allowed in. Used as the weaker comparison code.
inline const ldpc::TannerGraph& control_code(int n = 150, std::uint64_t seed = 1) {
    static ldpc::TannerGraph g = [&] {
        ldpc::ConstructionParams p;
        p.n = n;
        p.m = n / 2;
        p.rng_seed = seed;
        p.avoid_53 = false;
        return ldpc::peg_construct(p).first;
    }();
    return g;
}

// Shallower tree depth gives girth 6: six-cycles, hence (3,3) structures,
// appear. Used to demonstrate weight-three decoding failures.
inline const ldpc::TannerGraph& girth6_code(int n = 150, std::uint64_t seed = 1) {
    static ldpc::TannerGraph g = [&] {
        ldpc::ConstructionParams p;
        p.n = n;
        p.m = n / 2;
        p.rng_seed = seed;
        p.tree_depth = 4;
        p.avoid_53 = false;
        return ldpc::peg_construct(p).first;
    }();
    return g;
}

}  // namespace fixtures
