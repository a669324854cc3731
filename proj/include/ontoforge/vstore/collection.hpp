#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontoforge/embed/embedding.hpp"
#include "ontoforge/vstore/hnsw.hpp"

namespace ontoforge {

struct CollectionItem {
    std::string key;
    nlohmann::json payload;
    EmbeddingVector vector;
};

struct SearchHit {
    std::string key;
    double similarity = 0.0;

    bool operator==(const SearchHit&) const = default;
};

// Orders hits by similarity descending, then key ascending.
void sort_hits(std::vector<SearchHit>& hits);

// Full-scan cosine ranking over `items`. Throws DimMismatch.
std::vector<SearchHit> exact_knn(std::span<const CollectionItem> items, const EmbeddingVector& query, std::size_t k);

// Keyed vectors plus an HNSW index. Vectors are stored L2-normalized.
// Queries take a shared lock and may run concurrently; add() is exclusive.
class Collection {
public:
    Collection(std::size_t dim, HnswParams params = {});

    // Throws DimMismatch or DuplicateKey.
    static Collection build(std::vector<CollectionItem> items, HnswParams params = {});

    void add(CollectionItem item);

    // Up to k hits. Collections no larger than k are ranked exactly.
    std::vector<SearchHit> knn_query(const EmbeddingVector& query, std::size_t k) const;
    std::vector<SearchHit> exact_query(const EmbeddingVector& query, std::size_t k) const;

    std::size_t size() const;
    std::size_t dim() const noexcept { return dim_; }
    const HnswParams& params() const noexcept { return index_.params(); }

    // Items are never removed, so references stay valid until the next add().
    const CollectionItem& item(std::size_t i) const { return items_.at(i); }
    const std::vector<CollectionItem>& items() const noexcept { return items_; }
    const CollectionItem* find(const std::string& key) const;

    // Writes <name>.meta.jsonl, <name>.vec and <name>.hnsw under `dir`.
    void save(const std::filesystem::path& dir, const std::string& name) const;
    // Throws IoError on missing/truncated files, VersionMismatch on bad magic or version.
    static Collection load(const std::filesystem::path& dir, const std::string& name);

    static constexpr std::uint8_t kVecFormatVersion = 1;

private:
    Collection(std::size_t dim, HnswIndex index);
    void check_dim(const EmbeddingVector& v) const;

    std::size_t dim_;
    HnswIndex index_;
    std::vector<CollectionItem> items_;
    std::unordered_map<std::string, std::size_t> by_key_;
    std::unique_ptr<std::shared_mutex> mutex_ = std::make_unique<std::shared_mutex>();
};

// A directory holding many named collections.
class VectorStore {
public:
    explicit VectorStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const noexcept { return dir_; }
    bool contains(const std::string& name) const;
    std::vector<std::string> names() const;

    // Refuses to replace an existing collection unless `overwrite`.
    void save(const std::string& name, const Collection& c, bool overwrite = false) const;
    Collection load(const std::string& name) const;

private:
    std::filesystem::path dir_;
};

} // namespace ontoforge
