#include "hypergraph.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"

namespace mixcore {

namespace {

// Fill the incidence side of the CSR layout from the edge side.
void build_incidence(Hypergraph& h) {
    h.inc_offsets.assign(h.n + 1, 0);
    for (uint32_t v : h.edge_nodes) h.inc_offsets[v + 1]++;
    for (uint64_t v = 0; v < h.n; ++v) h.inc_offsets[v + 1] += h.inc_offsets[v];
    h.inc_edges.resize(h.edge_nodes.size());
    std::vector<uint64_t> cursor(h.inc_offsets.begin(), h.inc_offsets.end() - 1);
    const uint64_t m = h.edge_count();
    for (uint64_t e = 0; e < m; ++e) {
        for (uint32_t v : h.edge(e)) h.inc_edges[cursor[v]++] = static_cast<uint32_t>(e);
    }
}

// Shared peeling loop; removal pairs are recorded only when asked for.
void peel_impl(const Hypergraph& h, PeelResult& result, bool record) {
    const uint64_t m = h.edge_count();
    std::vector<uint32_t> degree(h.n);
    for (uint64_t v = 0; v < h.n; ++v) {
        degree[v] = static_cast<uint32_t>(h.inc_offsets[v + 1] - h.inc_offsets[v]);
    }
    std::vector<uint8_t> edge_dead(m, 0);
    std::vector<uint8_t> node_removed(h.n, 0);

    std::vector<uint32_t> queue;
    queue.reserve(h.n);
    for (uint64_t v = 0; v < h.n; ++v) {
        if (degree[v] <= 1) queue.push_back(static_cast<uint32_t>(v));
    }
    if (record) result.removed_pairs.reserve(h.n);

    for (size_t head = 0; head < queue.size(); ++head) {
        const uint32_t v = queue[head];
        if (node_removed[v]) continue;  // stale entry
        node_removed[v] = 1;

        uint32_t removed_edge = RemovedPair::kNoEdge;
        for (uint32_t e : h.incident(v)) {
            if (edge_dead[e]) continue;
            edge_dead[e] = 1;
            removed_edge = e;
            for (uint32_t u : h.edge(e)) {
                if (--degree[u] <= 1 && !node_removed[u]) queue.push_back(u);
            }
            break;  // degree(v) <= 1, so this was its only live edge
        }
        if (record) result.removed_pairs.push_back({v, removed_edge});
    }

    uint64_t dead_edges = 0;
    for (uint8_t d : edge_dead) dead_edges += d;
    result.core_edge_count = m - dead_edges;
    uint64_t removed_nodes = 0;
    for (uint8_t r : node_removed) removed_nodes += r;
    result.core_node_count = h.n - removed_nodes;
}

}  // namespace

Hypergraph make_hypergraph(uint64_t n, const std::vector<std::vector<uint32_t>>& edges) {
    Hypergraph h;
    h.n = n;
    h.edge_offsets.reserve(edges.size() + 1);
    h.edge_offsets.push_back(0);
    for (const auto& e : edges) {
        for (uint32_t v : e) {
            if (v >= n) throw InvalidParamsError("make_hypergraph: node id out of range");
            h.edge_nodes.push_back(v);
        }
        h.edge_offsets.push_back(h.edge_nodes.size());
    }
    build_incidence(h);
    return h;
}

Hypergraph generate_mixed(uint64_t n, uint64_t m, const EdgeMix& mix, uint64_t seed) {
    const size_t s = mix.sizes.size();
    if (n < static_cast<uint64_t>(mix.sizes.back())) {
        throw InvalidParamsError("generate_mixed: need at least max(sizes) nodes");
    }

    // round(fraction * m) edges per size, remainder to the last size.
    std::vector<uint64_t> counts(s);
    uint64_t assigned = 0;
    for (size_t i = 0; i + 1 < s; ++i) {
        counts[i] = static_cast<uint64_t>(std::llround(mix.fractions[i] * static_cast<double>(m)));
        assigned += counts[i];
    }
    if (assigned > m) throw InvalidParamsError("generate_mixed: rounded fractions exceed m");
    counts[s - 1] = m - assigned;

    Hypergraph h;
    h.n = n;
    uint64_t total_len = 0;
    for (size_t i = 0; i < s; ++i) total_len += counts[i] * mix.sizes[i];
    h.edge_nodes.reserve(total_len);
    h.edge_offsets.reserve(m + 1);
    h.edge_offsets.push_back(0);

    std::mt19937_64 rng(seed);
    std::vector<uint32_t> scratch(mix.sizes.back());
    for (size_t i = 0; i < s; ++i) {
        const int k = mix.sizes[i];
        for (uint64_t e = 0; e < counts[i]; ++e) {
            int filled = 0;
            while (filled < k) {
                const auto v = static_cast<uint32_t>(bounded_u64(rng, n));
                bool dup = false;
                for (int j = 0; j < filled; ++j) {
                    if (scratch[j] == v) {
                        dup = true;
                        break;
                    }
                }
                if (!dup) scratch[filled++] = v;
            }
            h.edge_nodes.insert(h.edge_nodes.end(), scratch.data(), scratch.data() + k);
            h.edge_offsets.push_back(h.edge_nodes.size());
        }
    }
    build_incidence(h);
    return h;
}

PeelResult peel(const Hypergraph& h) {
    PeelResult result;
    peel_impl(h, result, true);
    return result;
}

bool has_empty_core(const Hypergraph& h) {
    PeelResult result;
    peel_impl(h, result, false);
    return result.core_edge_count == 0;
}

std::string to_edge_list(const Hypergraph& h) {
    std::ostringstream out;
    out << h.n << ' ' << h.edge_count() << '\n';
    const uint64_t m = h.edge_count();
    for (uint64_t e = 0; e < m; ++e) {
        bool first = true;
        for (uint32_t v : h.edge(e)) {
            if (!first) out << ' ';
            out << v;
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

Hypergraph from_edge_list(const std::string& text) {
    std::istringstream in(text);
    uint64_t n = 0, m = 0;
    std::string header;
    if (!std::getline(in, header)) throw ParseError("edge list: missing header");
    {
        std::istringstream hs(header);
        if (!(hs >> n >> m)) throw ParseError("edge list: header must be 'n m'");
    }
    std::vector<std::vector<uint32_t>> edges;
    edges.reserve(m);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<uint32_t> edge;
        uint64_t v = 0;
        while (ls >> v) {
            if (v >= n) throw ParseError("edge list: node id out of range");
            edge.push_back(static_cast<uint32_t>(v));
        }
        edges.push_back(std::move(edge));
    }
    if (edges.size() != m) throw ParseError("edge list: edge count does not match header");
    return make_hypergraph(n, edges);
}

}  // namespace mixcore
