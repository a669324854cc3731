#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace ontoforge {

enum class Metric : std::uint8_t { cosine = 0 };

struct HnswParams {
    std::size_t m = 16;
    std::size_t ef_construction = 200;
    std::size_t ef_search = 100;
    Metric metric = Metric::cosine;
    std::uint64_t seed = 42;

    bool operator==(const HnswParams&) const = default;
};

// Layered proximity graph over unit vectors (distance = 1 - dot).
// Node ids are dense insertion indices. Vectors are owned by the index.
class HnswIndex {
public:
    using Neighbor = std::pair<float, std::uint32_t>;  // (distance, id)

    HnswIndex(std::size_t dim, HnswParams params);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return levels_.size(); }
    const HnswParams& params() const noexcept { return params_; }

    // `vec` must already be unit length. Returns the new node id.
    std::uint32_t add(std::span<const float> vec);

    // Up to k nearest by distance, ascending, searched with beam width max(ef, k).
    std::vector<Neighbor> search(std::span<const float> query, std::size_t k, std::size_t ef) const;

    std::span<const float> vector(std::uint32_t id) const noexcept {
        return {data_.data() + static_cast<std::size_t>(id) * dim_, dim_};
    }
    const std::vector<std::uint32_t>& links(std::uint32_t id, int layer) const { return links_[id][layer]; }
    int level(std::uint32_t id) const noexcept { return levels_[id]; }
    int max_level() const noexcept { return max_level_; }

    // Graph only; vectors are persisted separately and handed back to read_graph.
    void write_graph(std::ostream& out) const;
    static HnswIndex read_graph(std::istream& in, std::size_t dim, std::vector<float> vectors);

    static constexpr std::uint8_t kFormatVersion = 1;

private:
    float distance(std::span<const float> a, std::uint32_t b) const noexcept;
    int draw_level();
    std::vector<Neighbor> search_layer(std::span<const float> q, std::vector<Neighbor> entry, std::size_t ef,
                                       int layer) const;
    std::vector<std::uint32_t> select_neighbors(std::vector<Neighbor> candidates, std::size_t m) const;
    std::size_t max_links(int layer) const noexcept { return layer == 0 ? 2 * params_.m : params_.m; }

    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    std::size_t dim_;
    HnswParams params_;
    double level_mult_;
    std::mt19937_64 rng_;
    std::vector<float> data_;
    std::vector<int> levels_;
    std::vector<std::vector<std::vector<std::uint32_t>>> links_;
    std::uint32_t entry_ = kNone;
    int max_level_ = -1;
};

} // namespace ontoforge
