#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/core/model.hpp"
#include "ontoforge/net/http.hpp"

namespace ontoforge {

class EmbeddingVector {
public:
    EmbeddingVector() = default;
    // Throws EmbedError(0, ...) if any value is non-finite.
    explicit EmbeddingVector(std::vector<float> values);

    std::size_t dim() const noexcept { return values_.size(); }
    std::span<const float> values() const noexcept { return values_; }
    float operator[](std::size_t i) const noexcept { return values_[i]; }

    double norm() const noexcept;
    // Unit-length copy; a zero vector stays zero.
    EmbeddingVector normalized() const;

    bool operator==(const EmbeddingVector&) const = default;

private:
    std::vector<float> values_;
};

// Cosine similarity; 0 when either side has zero norm. Throws DimMismatch.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

enum class EmbeddingProviderKind { remote_http, deterministic_local };

struct EmbeddingProviderSpec {
    EmbeddingProviderKind kind = EmbeddingProviderKind::deterministic_local;
    std::string model_name = "text-embedding-ada-002";
    std::optional<std::string> endpoint;
    std::size_t dim = 256;
    std::string api_key_env = "ONTOFORGE_EMBED_API_KEY";
    std::size_t max_concurrency = 4;
    std::size_t batch_size = 16;  // texts per remote request
    RetryPolicy retry;

    static constexpr std::size_t default_remote_dim = 1536;
    static constexpr std::size_t default_local_dim = 256;
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;

    virtual std::size_t dim() const noexcept = 0;
    virtual std::string model_name() const = 0;

    // Throws EmbedError on empty text or provider failure.
    virtual EmbeddingVector embed_text(std::string_view text) = 0;

    // Order-preserving. Any failure fails the whole batch with the first failing index.
    virtual std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts);
};

// Hashed character-trigram bag: ASCII-lowercased bytes, FNV-1a 64 per trigram,
// bucket = hash mod dim, counts L2-normalized.
class DeterministicEmbedder final : public EmbeddingProvider {
public:
    explicit DeterministicEmbedder(std::size_t dim = EmbeddingProviderSpec::default_local_dim);

    std::size_t dim() const noexcept override { return dim_; }
    std::string model_name() const override { return "hashed-trigram-fnv1a"; }
    EmbeddingVector embed_text(std::string_view text) override;

private:
    std::size_t dim_;
};

// POST {"model", "input": [texts]} -> {"data": [{"index", "embedding": [...]}]}.
class RemoteEmbedder final : public EmbeddingProvider {
public:
    RemoteEmbedder(EmbeddingProviderSpec spec, std::shared_ptr<HttpTransport> transport);

    std::size_t dim() const noexcept override { return spec_.dim; }
    std::string model_name() const override { return spec_.model_name; }
    EmbeddingVector embed_text(std::string_view text) override;
    std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) override;

private:
    std::vector<EmbeddingVector> request(std::span<const std::string> texts, std::size_t first_index);

    EmbeddingProviderSpec spec_;
    std::shared_ptr<HttpTransport> transport_;
    std::optional<std::string> api_key_;
};

// Throws ConfigError when a remote spec lacks an endpoint.
std::unique_ptr<EmbeddingProvider> make_embedding_provider(const EmbeddingProviderSpec& spec,
                                                           std::shared_ptr<HttpTransport> transport = nullptr);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

// "label. definition P1 T1 P2 T2"; the label alone when nothing else is set.
std::string serialize_term(const TermObject& term);
std::string serialize_fields(const std::optional<std::string>& label, const std::optional<std::string>& definition,
                             std::span<const Relationship> relationships);

} // namespace ontoforge
