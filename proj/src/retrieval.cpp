#include "retrieval.hpp"

#include <cmath>
#include <cstring>

#include "errors.hpp"
#include "hypergraph.hpp"
#include "rng.hpp"

namespace mixcore {

namespace {

constexpr char kMagic[8] = {'M', 'X', 'R', 'E', 'T', 'R', 'V', '1'};
constexpr uint32_t kVersion = 1;

uint64_t value_mask(int r) { return r == 64 ? ~0ull : (1ull << r) - 1; }

void check_mix_for_retrieval(const EdgeMix& mix) {
    if (mix.sizes.size() > 2) {
        throw InvalidParamsError("retrieval: at most two edge sizes are supported");
    }
}

uint64_t xor_of_edge(const RetrievalStructure& s, const EdgeAssignment& edge) {
    uint64_t v = 0;
    for (uint32_t node : edge.nodes) v ^= s.cells[node];
    return v;
}

void append_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void append_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void append_f64(std::vector<uint8_t>& out, double v) {
    uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    append_u64(out, bits);
}

class Reader {
public:
    explicit Reader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    uint32_t u32() {
        uint32_t v = 0;
        need(4);
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(bytes_[pos_++]) << (8 * i);
        return v;
    }
    uint64_t u64() {
        uint64_t v = 0;
        need(8);
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(bytes_[pos_++]) << (8 * i);
        return v;
    }
    double f64() {
        const uint64_t bits = u64();
        double v = 0.0;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
    std::span<const uint8_t> rest() { return bytes_.subspan(pos_); }
    void need(size_t n) const {
        if (pos_ + n > bytes_.size()) throw ParseError("retrieval blob truncated");
    }

private:
    std::span<const uint8_t> bytes_;
    size_t pos_ = 0;
};

}  // namespace

EdgeAssignment assign_edge(std::span<const uint8_t> key, uint64_t seed, const EdgeMix& mix,
                           uint64_t n) {
    check_mix_for_retrieval(mix);
    if (n < static_cast<uint64_t>(mix.sizes.back())) {
        throw InvalidParamsError("assign_edge: need at least max(sizes) cells");
    }
    EdgeAssignment edge;
    edge.digest = fnv1a64(key.data(), key.size());

    // Independent hash words per (key, seed, counter); bumping the seed by
    // one on a rebuild rehashes every key from scratch.
    const uint64_t stream = splitmix64(seed);
    const auto word = [&](uint64_t counter) {
        return splitmix64(edge.digest ^ (stream + counter * 0x9e3779b97f4a7c15ull));
    };

    edge.small_class = true;
    if (mix.sizes.size() == 2) {
        edge.small_class = to_unit_interval(word(0)) < mix.fractions[0];
    }
    const int k = edge.small_class ? mix.sizes.front() : mix.sizes.back();
    edge.nodes.reserve(k);
    uint64_t counter = 1;
    while (edge.nodes.size() < static_cast<size_t>(k)) {
        const auto v = static_cast<uint32_t>(map_to_range(word(counter++), n));
        bool dup = false;
        for (uint32_t u : edge.nodes) {
            if (u == v) {
                dup = true;
                break;
            }
        }
        if (!dup) edge.nodes.push_back(v);
    }
    return edge;
}

RetrievalStructure build(std::span<const std::pair<std::string, uint64_t>> pairs,
                         double c_build, const EdgeMix& mix, int r, uint64_t seed,
                         int max_retries) {
    check_mix_for_retrieval(mix);
    if (r < 1 || r > 64) throw InvalidParamsError("build: r must be in 1..64");
    if (!(c_build > 0.0)) throw InvalidParamsError("build: c_build must be positive");
    if (pairs.empty()) throw InvalidParamsError("build: need at least one pair");
    if (max_retries < 0) throw InvalidParamsError("build: max_retries must be non-negative");

    const uint64_t m = pairs.size();
    const auto n = static_cast<uint64_t>(
        std::ceil(static_cast<double>(m) / c_build));
    const uint64_t mask = value_mask(r);

    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        const uint64_t attempt_seed = seed + static_cast<uint64_t>(attempt);

        std::vector<std::vector<uint32_t>> edges;
        edges.reserve(m);
        for (const auto& [key, value] : pairs) {
            (void)value;
            edges.push_back(assign_edge({reinterpret_cast<const uint8_t*>(key.data()),
                                         key.size()},
                                        attempt_seed, mix, n)
                                .nodes);
        }
        const Hypergraph h = make_hypergraph(n, edges);
        const PeelResult peeled = peel(h);
        if (peeled.core_edge_count != 0) continue;

        RetrievalStructure s{{}, r, mix, mix.fractions.front(), n, m, attempt_seed};
        s.cells.assign(n, 0);
        // Back-substitute in reverse removal order: when (node, edge) was
        // peeled, every other node of that edge was peeled later, so their
        // cells are already final here.
        for (auto it = peeled.removed_pairs.rbegin(); it != peeled.removed_pairs.rend(); ++it) {
            if (it->edge == RemovedPair::kNoEdge) continue;
            uint64_t acc = pairs[it->edge].second & mask;
            for (uint32_t u : h.edge(it->edge)) {
                if (u != it->node) acc ^= s.cells[u];
            }
            s.cells[it->node] = acc;
        }
        return s;
    }
    throw BuildFailedError("build: no empty 2-core within retry budget");
}

uint64_t query(const RetrievalStructure& s, std::span<const uint8_t> key) {
    const EdgeAssignment edge = assign_edge(key, s.seed, s.mix, s.n);
    return xor_of_edge(s, edge) & value_mask(s.r);
}

uint64_t query(const RetrievalStructure& s, const std::string& key) {
    return query(s, {reinterpret_cast<const uint8_t*>(key.data()), key.size()});
}

SpaceReport space_report(const RetrievalStructure& s) {
    if (s.m == 0) throw InvalidParamsError("space_report: empty structure");
    const double overhead = static_cast<double>(s.n) / static_cast<double>(s.m);
    return {overhead * s.r, overhead};
}

std::vector<uint8_t> serialize(const RetrievalStructure& s) {
    std::vector<uint8_t> out;
    const uint64_t packed_bytes = (s.n * s.r + 7) / 8;
    out.reserve(64 + 12 * s.mix.sizes.size() + packed_bytes);
    for (char c : kMagic) out.push_back(static_cast<uint8_t>(c));
    append_u32(out, kVersion);
    append_u32(out, static_cast<uint32_t>(s.r));
    append_u64(out, s.n);
    append_u64(out, s.m);
    append_u64(out, s.seed);
    append_u32(out, static_cast<uint32_t>(s.mix.sizes.size()));
    for (int k : s.mix.sizes) append_u32(out, static_cast<uint32_t>(k));
    for (double f : s.mix.fractions) append_f64(out, f);

    // Cells packed LSB-first at r bits each.
    out.resize(out.size() + packed_bytes, 0);
    uint8_t* cells_out = out.data() + out.size() - packed_bytes;
    const uint64_t mask = value_mask(s.r);
    for (uint64_t i = 0; i < s.n; ++i) {
        const uint64_t v = s.cells[i] & mask;
        const uint64_t bit = i * s.r;
        for (int j = 0; j < s.r; ++j) {
            if (v >> j & 1) cells_out[(bit + j) / 8] |= static_cast<uint8_t>(1u << ((bit + j) % 8));
        }
    }
    return out;
}

RetrievalStructure deserialize(std::span<const uint8_t> bytes) {
    Reader in(bytes);
    in.need(sizeof kMagic);
    if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
        throw ParseError("retrieval blob: bad magic");
    }
    Reader body(bytes.subspan(sizeof kMagic));
    const uint32_t version = body.u32();
    if (version != kVersion) throw ParseError("retrieval blob: unsupported version");
    const auto r = static_cast<int>(body.u32());
    if (r < 1 || r > 64) throw ParseError("retrieval blob: bad r");
    const uint64_t n = body.u64();
    const uint64_t m = body.u64();
    const uint64_t seed = body.u64();
    const uint32_t s_count = body.u32();
    if (s_count < 1 || s_count > 2) throw ParseError("retrieval blob: bad mixture size");
    std::vector<int> sizes(s_count);
    for (auto& k : sizes) k = static_cast<int>(body.u32());
    std::vector<double> fractions(s_count);
    for (auto& f : fractions) f = body.f64();

    EdgeMix mix(sizes, fractions);
    RetrievalStructure s{{}, r, mix, fractions.front(), n, m, seed};
    const uint64_t packed_bytes = (n * static_cast<uint64_t>(r) + 7) / 8;
    const auto cells_in = body.rest();
    if (cells_in.size() != packed_bytes) throw ParseError("retrieval blob: bad cell payload");
    s.cells.assign(n, 0);
    for (uint64_t i = 0; i < n; ++i) {
        uint64_t v = 0;
        const uint64_t bit = i * static_cast<uint64_t>(r);
        for (int j = 0; j < r; ++j) {
            if (cells_in[(bit + j) / 8] >> ((bit + j) % 8) & 1) v |= 1ull << j;
        }
        s.cells[i] = v;
    }
    return s;
}

}  // namespace mixcore
