#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "threshold.hpp"

namespace mixcore {

// Static function from keys to r-bit values: each key XORs together the
// cells its edge touches.  Built by peeling, so it only exists when the
// key hypergraph has an empty 2-core.
struct RetrievalStructure {
    std::vector<uint64_t> cells;  // n cells, each holding r significant bits
    int r = 0;
    EdgeMix mix;
    double alpha_star = 0.0;  // fraction of keys mapped to the small edge size
    uint64_t n = 0;           // cell count
    uint64_t m = 0;           // key count
    uint64_t seed = 0;        // seed that produced an empty core
};

// Where one key lands: its digest, which size class it drew, and the cells
// it touches (distinct, in [0,n)).
struct EdgeAssignment {
    uint64_t digest = 0;
    bool small_class = false;
    std::vector<uint32_t> nodes;
};

// Deterministic mapping of a key to an edge.  The size-class draw uses the
// first hash word; cell indices come from subsequent words with rejection on
// duplicates.  Supports one- and two-size mixtures.
EdgeAssignment assign_edge(std::span<const uint8_t> key, uint64_t seed, const EdgeMix& mix,
                           uint64_t n);

// Build a structure over key/value pairs at build density c_build (cells =
// ceil(m / c_build)).  On a non-empty core the seed is advanced by one and
// construction retried, at most max_retries times; BuildFailedError after
// that.  Values are truncated to r bits (r <= 64).
RetrievalStructure build(std::span<const std::pair<std::string, uint64_t>> pairs,
                         double c_build, const EdgeMix& mix, int r, uint64_t seed,
                         int max_retries);

uint64_t query(const RetrievalStructure& s, std::span<const uint8_t> key);
uint64_t query(const RetrievalStructure& s, const std::string& key);

struct SpaceReport {
    double bits_per_key = 0.0;   // n * r / m
    double overhead_factor = 0.0;  // n / m
};

SpaceReport space_report(const RetrievalStructure& s);

// Little-endian binary round-trip.  Header carries layout and mixture; cells
// are bit-packed at r bits each.
std::vector<uint8_t> serialize(const RetrievalStructure& s);
RetrievalStructure deserialize(std::span<const uint8_t> bytes);

}  // namespace mixcore
