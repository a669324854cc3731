#include "ontoforge/vstore/hnsw.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "ontoforge/error.hpp"
#include "ontoforge/vstore/binary_io.hpp"

namespace ontoforge {

namespace {

constexpr char kGraphMagic[4] = {'O', 'F', 'H', 'N'};

using MaxHeap = std::priority_queue<HnswIndex::Neighbor>;
using MinHeap = std::priority_queue<HnswIndex::Neighbor, std::vector<HnswIndex::Neighbor>, std::greater<>>;

float dot(std::span<const float> a, std::span<const float> b) noexcept {
    float sum = 0.0f;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

} // namespace

HnswIndex::HnswIndex(std::size_t dim, HnswParams params)
    : dim_(dim), params_(params), level_mult_(0.0), rng_(params.seed) {
    if (dim_ == 0) throw DimMismatch("HNSW dimension must be positive");
    if (params_.m < 2) throw ConfigError("HNSW m must be >= 2");
    if (params_.ef_construction == 0 || params_.ef_search == 0) throw ConfigError("HNSW ef must be >= 1");
    level_mult_ = 1.0 / std::log(static_cast<double>(params_.m));
}

float HnswIndex::distance(std::span<const float> a, std::uint32_t b) const noexcept {
    return 1.0f - dot(a, vector(b));
}

int HnswIndex::draw_level() {
    // u in (0, 1]
    const double u = 1.0 - static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return static_cast<int>(std::floor(-std::log(u) * level_mult_));
}

std::vector<HnswIndex::Neighbor> HnswIndex::search_layer(std::span<const float> q, std::vector<Neighbor> entry,
                                                         std::size_t ef, int layer) const {
    std::vector<char> visited(size(), 0);
    MinHeap candidates;
    MaxHeap best;
    for (const auto& e : entry) {
        visited[e.second] = 1;
        candidates.push(e);
        best.push(e);
    }
    while (best.size() > ef) best.pop();

    while (!candidates.empty()) {
        const auto current = candidates.top();
        if (best.size() >= ef && current.first > best.top().first) break;
        candidates.pop();
        for (std::uint32_t nb : links_[current.second][layer]) {
            if (visited[nb]) continue;
            visited[nb] = 1;
            const Neighbor cand{distance(q, nb), nb};
            if (best.size() < ef || cand < best.top()) {
                candidates.push(cand);
                best.push(cand);
                if (best.size() > ef) best.pop();
            }
        }
    }
    std::vector<Neighbor> out;
    out.reserve(best.size());
    while (!best.empty()) {
        out.push_back(best.top());
        best.pop();
    }
    std::reverse(out.begin(), out.end());
    return out;
}

// Keeps a candidate only if it is closer to the base point than to every
// neighbor already kept, which spreads links across directions. Free slots
// are then refilled with the nearest pruned candidates; on high-dimensional
// data the heuristic alone leaves nodes badly under-connected.
std::vector<std::uint32_t> HnswIndex::select_neighbors(std::vector<Neighbor> candidates, std::size_t m) const {
    std::sort(candidates.begin(), candidates.end());
    std::vector<std::uint32_t> kept;
    std::vector<std::uint32_t> pruned;
    for (const auto& [dist, id] : candidates) {
        if (kept.size() >= m) break;
        bool diverse = true;
        for (std::uint32_t k : kept) {
            if (distance(vector(id), k) < dist) {
                diverse = false;
                break;
            }
        }
        if (diverse) kept.push_back(id);
        else pruned.push_back(id);
    }
    for (std::size_t i = 0; i < pruned.size() && kept.size() < m; ++i) kept.push_back(pruned[i]);
    return kept;
}

std::uint32_t HnswIndex::add(std::span<const float> vec) {
    if (vec.size() != dim_) throw DimMismatch("vector dim " + std::to_string(vec.size()) + " != " + std::to_string(dim_));
    const auto id = static_cast<std::uint32_t>(size());
    const int level = draw_level();
    data_.insert(data_.end(), vec.begin(), vec.end());
    levels_.push_back(level);
    links_.emplace_back(static_cast<std::size_t>(level) + 1);

    if (entry_ == kNone) {
        entry_ = id;
        max_level_ = level;
        return id;
    }

    const auto q = vector(id);
    Neighbor ep{distance(q, entry_), entry_};
    for (int layer = max_level_; layer > level; --layer) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::uint32_t nb : links_[ep.second][layer]) {
                const Neighbor cand{distance(q, nb), nb};
                if (cand < ep) {
                    ep = cand;
                    changed = true;
                }
            }
        }
    }

    std::vector<Neighbor> entry{ep};
    for (int layer = std::min(level, max_level_); layer >= 0; --layer) {
        auto found = search_layer(q, entry, params_.ef_construction, layer);
        auto chosen = select_neighbors(found, params_.m);
        links_[id][layer] = chosen;
        for (std::uint32_t nb : chosen) {
            auto& nb_links = links_[nb][layer];
            nb_links.push_back(id);
            if (nb_links.size() > max_links(layer)) {
                std::vector<Neighbor> pool;
                pool.reserve(nb_links.size());
                for (std::uint32_t x : nb_links) pool.push_back({distance(vector(nb), x), x});
                nb_links = select_neighbors(std::move(pool), max_links(layer));
            }
        }
        entry = std::move(found);
    }

    if (level > max_level_) {
        max_level_ = level;
        entry_ = id;
    }
    return id;
}

std::vector<HnswIndex::Neighbor> HnswIndex::search(std::span<const float> query, std::size_t k, std::size_t ef) const {
    if (query.size() != dim_) throw DimMismatch("query dim " + std::to_string(query.size()) + " != " + std::to_string(dim_));
    if (entry_ == kNone || k == 0) return {};
    Neighbor ep{distance(query, entry_), entry_};
    for (int layer = max_level_; layer > 0; --layer) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::uint32_t nb : links_[ep.second][layer]) {
                const Neighbor cand{distance(query, nb), nb};
                if (cand < ep) {
                    ep = cand;
                    changed = true;
                }
            }
        }
    }
    auto found = search_layer(query, {ep}, std::max(ef, k), 0);
    if (found.size() > k) found.resize(k);
    return found;
}

void HnswIndex::write_graph(std::ostream& out) const {
    out.write(kGraphMagic, 4);
    binio::write_u8(out, kFormatVersion);
    binio::write_u32(out, static_cast<std::uint32_t>(params_.m));
    binio::write_u32(out, static_cast<std::uint32_t>(params_.ef_construction));
    binio::write_u32(out, static_cast<std::uint32_t>(params_.ef_search));
    binio::write_u64(out, params_.seed);
    binio::write_u8(out, static_cast<std::uint8_t>(params_.metric));
    binio::write_u64(out, size());
    binio::write_u32(out, static_cast<std::uint32_t>(max_level_ + 1));
    binio::write_u32(out, entry_);
    for (std::size_t id = 0; id < size(); ++id) {
        binio::write_u32(out, static_cast<std::uint32_t>(levels_[id]));
        for (const auto& layer : links_[id]) {
            binio::write_u32(out, static_cast<std::uint32_t>(layer.size()));
            for (std::uint32_t nb : layer) binio::write_u32(out, nb);
        }
    }
}

HnswIndex HnswIndex::read_graph(std::istream& in, std::size_t dim, std::vector<float> vectors) {
    char magic[4];
    binio::read_exact(in, magic, 4, "hnsw magic");
    if (!std::equal(magic, magic + 4, kGraphMagic)) throw VersionMismatch("not an ontoforge HNSW file");
    if (const auto v = binio::read_u8(in); v != kFormatVersion) {
        throw VersionMismatch("HNSW format version " + std::to_string(v) + ", expected " + std::to_string(kFormatVersion));
    }
    HnswParams p;
    p.m = binio::read_u32(in);
    p.ef_construction = binio::read_u32(in);
    p.ef_search = binio::read_u32(in);
    p.seed = binio::read_u64(in);
    const auto metric = binio::read_u8(in);
    if (metric != static_cast<std::uint8_t>(Metric::cosine)) throw VersionMismatch("unknown metric");
    const auto count = binio::read_u64(in);
    if (vectors.size() != count * dim) throw IoError("HNSW node count does not match vector file");

    HnswIndex index(dim, p);
    index.max_level_ = static_cast<int>(binio::read_u32(in)) - 1;
    index.entry_ = binio::read_u32(in);
    if ((count == 0) != (index.entry_ == kNone) || (count && index.entry_ >= count)) {
        throw IoError("HNSW entry point out of range");
    }
    index.data_ = std::move(vectors);
    index.levels_.resize(count);
    index.links_.resize(count);
    for (std::size_t id = 0; id < count; ++id) {
        const auto level = binio::read_u32(in);
        if (static_cast<int>(level) > index.max_level_) throw IoError("HNSW node level exceeds max level");
        index.levels_[id] = static_cast<int>(level);
        index.links_[id].resize(level + 1);
        for (auto& layer : index.links_[id]) {
            const auto n = binio::read_u32(in);
            if (n > 2 * p.m) throw IoError("HNSW link list too long");
            layer.resize(n);
            for (auto& nb : layer) {
                nb = binio::read_u32(in);
                if (nb >= count) throw IoError("HNSW link out of range");
            }
        }
    }
    binio::expect_eof(in, "hnsw");
    // Continue the level sequence exactly where the original build stopped.
    index.rng_.discard(count);
    return index;
}

} // namespace ontoforge
