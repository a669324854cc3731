#include "ontoforge/vstore/collection.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>

#include "ontoforge/error.hpp"
#include "ontoforge/vstore/binary_io.hpp"

namespace ontoforge {

namespace fs = std::filesystem;

namespace {

constexpr char kVecMagic[4] = {'O', 'F', 'V', 'S'};

std::vector<SearchHit> rank_all(std::span<const CollectionItem> items, const EmbeddingVector& query, std::size_t k) {
    std::vector<SearchHit> hits;
    hits.reserve(items.size());
    for (const auto& it : items) hits.push_back({it.key, cosine_similarity(query, it.vector)});
    sort_hits(hits);
    if (hits.size() > k) hits.resize(k);
    return hits;
}

fs::path meta_path(const fs::path& dir, const std::string& name) { return dir / (name + ".meta.jsonl"); }
fs::path vec_path(const fs::path& dir, const std::string& name) { return dir / (name + ".vec"); }
fs::path graph_path(const fs::path& dir, const std::string& name) { return dir / (name + ".hnsw"); }

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + p.string());
    return out;
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open " + p.string());
    return in;
}

} // namespace

void sort_hits(std::vector<SearchHit>& hits) {
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.key < b.key;
    });
}

std::vector<SearchHit> exact_knn(std::span<const CollectionItem> items, const EmbeddingVector& query, std::size_t k) {
    for (const auto& it : items) {
        if (it.vector.dim() != query.dim()) {
            throw DimMismatch("query dim " + std::to_string(query.dim()) + " vs item dim " + std::to_string(it.vector.dim()));
        }
    }
    return rank_all(items, query, k);
}

Collection::Collection(std::size_t dim, HnswParams params) : dim_(dim), index_(dim, params) {}

Collection::Collection(std::size_t dim, HnswIndex index) : dim_(dim), index_(std::move(index)) {}

Collection Collection::build(std::vector<CollectionItem> items, HnswParams params) {
    if (items.empty()) throw DimMismatch("cannot infer dimension of an empty item list");
    Collection c(items.front().vector.dim(), params);
    for (auto& it : items) c.add(std::move(it));
    return c;
}

void Collection::check_dim(const EmbeddingVector& v) const {
    if (v.dim() != dim_) {
        throw DimMismatch("vector dim " + std::to_string(v.dim()) + " != collection dim " + std::to_string(dim_));
    }
}

void Collection::add(CollectionItem item) {
    std::unique_lock lock(*mutex_);
    check_dim(item.vector);
    if (by_key_.contains(item.key)) throw DuplicateKey("duplicate key '" + item.key + "'");
    item.vector = item.vector.normalized();
    index_.add(item.vector.values());
    by_key_.emplace(item.key, items_.size());
    items_.push_back(std::move(item));
}

std::size_t Collection::size() const {
    std::shared_lock lock(*mutex_);
    return items_.size();
}

const CollectionItem* Collection::find(const std::string& key) const {
    std::shared_lock lock(*mutex_);
    auto it = by_key_.find(key);
    return it == by_key_.end() ? nullptr : &items_[it->second];
}

std::vector<SearchHit> Collection::exact_query(const EmbeddingVector& query, std::size_t k) const {
    std::shared_lock lock(*mutex_);
    check_dim(query);
    return rank_all(items_, query, k);
}

std::vector<SearchHit> Collection::knn_query(const EmbeddingVector& query, std::size_t k) const {
    if (k == 0) throw InvalidQuery("k must be >= 1");
    std::shared_lock lock(*mutex_);
    check_dim(query);
    if (items_.size() <= k) return rank_all(items_, query, k);

    const auto q = query.normalized();
    const auto found = index_.search(q.values(), k, std::max(index_.params().ef_search, k));
    std::vector<SearchHit> hits;
    hits.reserve(found.size());
    for (const auto& [dist, id] : found) hits.push_back({items_[id].key, cosine_similarity(query, items_[id].vector)});
    sort_hits(hits);
    return hits;
}

void Collection::save(const fs::path& dir, const std::string& name) const {
    std::shared_lock lock(*mutex_);
    fs::create_directories(dir);
    // Written under temporary names and renamed so a crash never leaves a mixed set.
    const std::string tmp_suffix = ".tmp";
    {
        auto out = open_out(meta_path(dir, name).string() + tmp_suffix);
        for (const auto& it : items_) out << nlohmann::json{{"key", it.key}, {"payload", it.payload}}.dump() << '\n';
        if (!out) throw IoError("write failed for " + meta_path(dir, name).string());
    }
    {
        auto out = open_out(vec_path(dir, name).string() + tmp_suffix);
        out.write(kVecMagic, 4);
        binio::write_u8(out, kVecFormatVersion);
        binio::write_u32(out, static_cast<std::uint32_t>(dim_));
        binio::write_u64(out, items_.size());
        for (const auto& it : items_) {
            for (float v : it.vector.values()) binio::write_f32(out, v);
        }
        if (!out) throw IoError("write failed for " + vec_path(dir, name).string());
    }
    {
        auto out = open_out(graph_path(dir, name).string() + tmp_suffix);
        index_.write_graph(out);
        if (!out) throw IoError("write failed for " + graph_path(dir, name).string());
    }
    for (const auto& p : {meta_path(dir, name), vec_path(dir, name), graph_path(dir, name)}) {
        fs::rename(p.string() + tmp_suffix, p);
    }
}

Collection Collection::load(const fs::path& dir, const std::string& name) {
    std::size_t dim = 0;
    std::uint64_t count = 0;
    std::vector<float> flat;
    {
        auto in = open_in(vec_path(dir, name));
        char magic[4];
        binio::read_exact(in, magic, 4, "vector magic");
        if (!std::equal(magic, magic + 4, kVecMagic)) throw VersionMismatch("not an ontoforge vector file");
        if (const auto v = binio::read_u8(in); v != kVecFormatVersion) {
            throw VersionMismatch("vector format version " + std::to_string(v) + ", expected " +
                                  std::to_string(kVecFormatVersion));
        }
        dim = binio::read_u32(in);
        count = binio::read_u64(in);
        if (dim == 0) throw IoError("vector file declares dim 0");
        const auto expected = fs::file_size(vec_path(dir, name));
        if (expected != 17 + count * dim * 4) throw IoError("vector file size does not match its header (truncated?)");
        flat.resize(count * dim);
        for (auto& v : flat) v = binio::read_f32(in);
        binio::expect_eof(in, "vector");
    }

    std::vector<std::pair<std::string, nlohmann::json>> meta;
    {
        auto in = open_in(meta_path(dir, name));
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            try {
                auto j = nlohmann::json::parse(line);
                meta.emplace_back(j.at("key").get<std::string>(), j.at("payload"));
            } catch (const nlohmann::json::exception& e) {
                throw IoError("metadata line " + std::to_string(line_no) + ": " + e.what());
            }
        }
    }
    if (meta.size() != count) throw IoError("metadata has " + std::to_string(meta.size()) + " items, vectors " + std::to_string(count));

    auto in = open_in(graph_path(dir, name));
    Collection c(dim, HnswIndex::read_graph(in, dim, flat));
    c.items_.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<float> v(flat.begin() + static_cast<std::ptrdiff_t>(i * dim),
                             flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim));
        auto& [key, payload] = meta[i];
        if (!c.by_key_.emplace(key, i).second) throw IoError("duplicate key in metadata: " + key);
        c.items_.push_back({std::move(key), std::move(payload), EmbeddingVector(std::move(v))});
    }
    return c;
}

bool VectorStore::contains(const std::string& name) const {
    return fs::exists(dir_ / (name + ".vec")) || fs::exists(dir_ / (name + ".meta.jsonl"));
}

std::vector<std::string> VectorStore::names() const {
    std::vector<std::string> out;
    if (!fs::is_directory(dir_)) return out;
    for (const auto& e : fs::directory_iterator(dir_)) {
        const auto file = e.path().filename().string();
        if (file.size() > 4 && file.ends_with(".vec")) out.push_back(file.substr(0, file.size() - 4));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void VectorStore::save(const std::string& name, const Collection& c, bool overwrite) const {
    if (!overwrite && contains(name)) throw IoError("collection '" + name + "' already exists in " + dir_.string());
    c.save(dir_, name);
}

Collection VectorStore::load(const std::string& name) const {
    if (!contains(name)) throw IoError("no collection '" + name + "' in " + dir_.string());
    return Collection::load(dir_, name);
}

} // namespace ontoforge
