#pragma once

#include "ldpc/channel_sim.hpp"
#include "ldpc/construct.hpp"
#include "ldpc/decoder.hpp"
#include "ldpc/rng.hpp"
#include "ldpc/tanner_graph.hpp"
#include "ldpc/trapping_sets.hpp"

namespace ldpc {
inline constexpr const char* kVersion = "0.1.0";
}
