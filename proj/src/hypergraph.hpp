#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "threshold.hpp"

namespace mixcore {

// Hypergraph on nodes 0..n-1 with edges stored contiguously (CSR layout both
// ways).  Nodes within one edge are distinct; edges may repeat.
struct Hypergraph {
    uint64_t n = 0;
    std::vector<uint32_t> edge_nodes;    // concatenated node lists
    std::vector<uint64_t> edge_offsets;  // m+1 offsets into edge_nodes
    std::vector<uint32_t> inc_edges;     // concatenated incident-edge lists
    std::vector<uint64_t> inc_offsets;   // n+1 offsets into inc_edges

    uint64_t edge_count() const { return edge_offsets.empty() ? 0 : edge_offsets.size() - 1; }

    std::span<const uint32_t> edge(uint64_t e) const {
        return {edge_nodes.data() + edge_offsets[e],
                edge_nodes.data() + edge_offsets[e + 1]};
    }
    std::span<const uint32_t> incident(uint64_t v) const {
        return {inc_edges.data() + inc_offsets[v], inc_edges.data() + inc_offsets[v + 1]};
    }
};

// Build a hypergraph from explicit edges (used by tests and the text reader).
Hypergraph make_hypergraph(uint64_t n, const std::vector<std::vector<uint32_t>>& edges);

// Sample m edges with replacement: round(fraction_i * m) edges of size_i for
// every size but the last, which takes the remainder.  Each edge is a
// uniformly random set of distinct nodes.  Deterministic in seed.
Hypergraph generate_mixed(uint64_t n, uint64_t m, const EdgeMix& mix, uint64_t seed);

// One peeling step removed this node, together with the edge it still
// belonged to (kNoEdge when the node had become isolated).
struct RemovedPair {
    static constexpr uint32_t kNoEdge = UINT32_MAX;
    uint32_t node;
    uint32_t edge;
};

struct PeelResult {
    uint64_t core_node_count = 0;
    uint64_t core_edge_count = 0;
    std::vector<RemovedPair> removed_pairs;  // in removal order
};

// Repeatedly remove a node of degree <= 1 along with its incident edge until
// only the 2-core remains.  Runs in O(n + total edge length).
PeelResult peel(const Hypergraph& h);

// True when peeling leaves no edge behind.  Skips recording removal pairs.
bool has_empty_core(const Hypergraph& h);

// Text round-trip: header line "n m", then one edge per line as
// space-separated node ids.
std::string to_edge_list(const Hypergraph& h);
Hypergraph from_edge_list(const std::string& text);

}  // namespace mixcore
