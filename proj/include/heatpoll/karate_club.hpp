#pragma once

#include <array>

namespace heatpoll {

struct WeightedEdge {
    int u;
    int v;
    int weight;
};

inline constexpr int kKarateNodeCount = 34;
inline constexpr int kKarateEdgeCount = 78;

// Zachary's karate club network with the original interaction weights.
const std::array<WeightedEdge, kKarateEdgeCount>& karate_club_edges();

} // namespace heatpoll
