#include "ontoforge/embed/embedding.hpp"

#include <cmath>

#include "ontoforge/core/parallel.hpp"
#include "ontoforge/error.hpp"

namespace ontoforge {

EmbeddingVector::EmbeddingVector(std::vector<float> values) : values_(std::move(values)) {
    for (float v : values_) {
        if (!std::isfinite(v)) throw EmbedError(0, "non-finite embedding value");
    }
}

double EmbeddingVector::norm() const noexcept {
    double sum = 0.0;
    for (float v : values_) sum += static_cast<double>(v) * v;
    return std::sqrt(sum);
}

EmbeddingVector EmbeddingVector::normalized() const {
    const double n = norm();
    if (n == 0.0) return *this;
    std::vector<float> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = static_cast<float>(values_[i] / n);
    return EmbeddingVector(std::move(out));
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim()) {
        throw DimMismatch("dimension " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<EmbeddingVector> EmbeddingProvider::embed_batch(std::span<const std::string> texts) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
        try {
            out.push_back(embed_text(texts[i]));
        } catch (const EmbedError& e) {
            throw EmbedError(i, e.what());
        }
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

DeterministicEmbedder::DeterministicEmbedder(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) throw ConfigError("embedding dim must be positive");
}

EmbeddingVector DeterministicEmbedder::embed_text(std::string_view text) {
    if (text.empty()) throw EmbedError(0, "empty text");
    std::string lowered(text);
    for (char& c : lowered) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    std::vector<double> counts(dim_, 0.0);
    if (lowered.size() < 3) {
        counts[fnv1a64(lowered) % dim_] += 1.0;
    } else {
        for (std::size_t i = 0; i + 3 <= lowered.size(); ++i) {
            counts[fnv1a64(std::string_view(lowered).substr(i, 3)) % dim_] += 1.0;
        }
    }
    double sum = 0.0;
    for (double c : counts) sum += c * c;
    const double n = std::sqrt(sum);
    std::vector<float> values(dim_);
    for (std::size_t i = 0; i < dim_; ++i) values[i] = static_cast<float>(counts[i] / n);
    return EmbeddingVector(std::move(values));
}

std::string serialize_fields(const std::optional<std::string>& label, const std::optional<std::string>& definition,
                             std::span<const Relationship> relationships) {
    std::string out;
    if (label) out = *label;
    if (definition && !definition->empty()) {
        if (!out.empty()) out += ". ";
        out += *definition;
    }
    for (const auto& r : relationships) {
        if (!out.empty()) out += ' ';
        out += r.predicate.str();
        out += ' ';
        out += r.target.str();
    }
    while (!out.empty() && (out.back() == ' ' || out.back() == '\n' || out.back() == '\t')) out.pop_back();
    return out;
}

std::string serialize_term(const TermObject& term) {
    return serialize_fields(term.label, term.definition, term.relationships);
}

RemoteEmbedder::RemoteEmbedder(EmbeddingProviderSpec spec, std::shared_ptr<HttpTransport> transport)
    : spec_(std::move(spec)), transport_(std::move(transport)), api_key_(env_value(spec_.api_key_env)) {
    if (!spec_.endpoint) throw ConfigError("remote embedding provider requires an endpoint");
    if (!transport_) transport_ = std::make_shared<HttplibTransport>();
    if (spec_.batch_size == 0) spec_.batch_size = 1;
}

EmbeddingVector RemoteEmbedder::embed_text(std::string_view text) {
    const std::string copy(text);
    return request(std::span<const std::string>(&copy, 1), 0).front();
}

std::vector<EmbeddingVector> RemoteEmbedder::request(std::span<const std::string> texts, std::size_t first_index) {
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (texts[i].empty()) throw EmbedError(first_index + i, "empty text");
    }
    HttpRequest req;
    req.method = "POST";
    req.url = *spec_.endpoint;
    req.body = nlohmann::json{{"model", spec_.model_name}, {"input", texts}}.dump();
    if (api_key_) req.headers.emplace_back("Authorization", "Bearer " + *api_key_);

    const auto res = send_with_retry(*transport_, req, spec_.retry);
    if (res.status != 200) {
        throw EmbedError(first_index, "HTTP " + std::to_string(res.status) + " " + res.error);
    }
    std::vector<EmbeddingVector> out(texts.size());
    std::vector<bool> seen(texts.size(), false);
    try {
        const auto body = nlohmann::json::parse(res.body);
        const auto& data = body.at("data");
        for (std::size_t pos = 0; pos < data.size(); ++pos) {
            const auto& item = data[pos];
            const std::size_t idx = item.contains("index") ? item["index"].get<std::size_t>() : pos;
            if (idx >= texts.size()) throw EmbedError(first_index, "response index out of range");
            auto values = item.at("embedding").get<std::vector<float>>();
            if (values.size() != spec_.dim) {
                throw EmbedError(first_index + idx, "expected dim " + std::to_string(spec_.dim) + ", got " +
                                                        std::to_string(values.size()));
            }
            try {
                out[idx] = EmbeddingVector(std::move(values));
            } catch (const EmbedError&) {
                throw EmbedError(first_index + idx, "non-finite embedding value");
            }
            seen[idx] = true;
        }
    } catch (const nlohmann::json::exception& e) {
        throw EmbedError(first_index, std::string("bad embedding response: ") + e.what());
    }
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (!seen[i]) throw EmbedError(first_index + i, "missing embedding in response");
    }
    return out;
}

std::vector<EmbeddingVector> RemoteEmbedder::embed_batch(std::span<const std::string> texts) {
    std::vector<EmbeddingVector> out(texts.size());
    const std::size_t chunks = (texts.size() + spec_.batch_size - 1) / spec_.batch_size;
    parallel_for_bounded(chunks, spec_.max_concurrency, [&](std::size_t c) {
        const std::size_t begin = c * spec_.batch_size;
        const std::size_t n = std::min(spec_.batch_size, texts.size() - begin);
        auto vecs = request(texts.subspan(begin, n), begin);
        for (std::size_t i = 0; i < n; ++i) out[begin + i] = std::move(vecs[i]);
    });
    return out;
}

std::unique_ptr<EmbeddingProvider> make_embedding_provider(const EmbeddingProviderSpec& spec,
                                                           std::shared_ptr<HttpTransport> transport) {
    switch (spec.kind) {
    case EmbeddingProviderKind::deterministic_local: return std::make_unique<DeterministicEmbedder>(spec.dim);
    case EmbeddingProviderKind::remote_http: return std::make_unique<RemoteEmbedder>(spec, std::move(transport));
    }
    throw ConfigError("unknown embedding provider kind");
}

} // namespace ontoforge
