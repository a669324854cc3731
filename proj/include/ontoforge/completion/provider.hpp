#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ontoforge/net/http.hpp"

namespace ontoforge {

enum class CompletionProviderKind { remote_http, scripted };

struct CompletionProviderSpec {
    CompletionProviderKind kind = CompletionProviderKind::scripted;
    std::string model_name = "gpt-4";
    std::optional<std::string> endpoint;
    double temperature = 0.0;
    std::optional<std::filesystem::path> script_path;
    std::string api_key_env = "ONTOFORGE_LLM_API_KEY";
    RetryPolicy retry;
};

// `key` identifies the request for scripted playback (the query label);
// remote providers ignore it.
class CompletionProvider {
public:
    virtual ~CompletionProvider() = default;
    virtual std::string model_name() const = 0;
    virtual std::string complete(const std::string& key, const std::string& prompt) = 0;
};

// Canned responses from JSON Lines {key, response}. Repeated keys form a
// queue consumed in file order; the last response repeats once exhausted.
// An unknown key throws ScriptMiss.
class ScriptedProvider final : public CompletionProvider {
public:
    ScriptedProvider(std::string model_name, const std::filesystem::path& script);
    ScriptedProvider(std::string model_name, std::map<std::string, std::vector<std::string>> responses);

    std::string model_name() const override { return model_name_; }
    std::string complete(const std::string& key, const std::string& prompt) override;

private:
    std::string model_name_;
    std::map<std::string, std::vector<std::string>> responses_;
    std::map<std::string, std::size_t> cursor_;
    std::mutex mu_;
};

// OpenAI-style chat completion endpoint.
class RemoteCompletionProvider final : public CompletionProvider {
public:
    RemoteCompletionProvider(CompletionProviderSpec spec, std::shared_ptr<HttpTransport> transport);

    std::string model_name() const override { return spec_.model_name; }
    std::string complete(const std::string& key, const std::string& prompt) override;

private:
    CompletionProviderSpec spec_;
    std::shared_ptr<HttpTransport> transport_;
    std::optional<std::string> api_key_;
};

// Throws ConfigError when the spec lacks its endpoint / script path.
std::unique_ptr<CompletionProvider> make_completion_provider(const CompletionProviderSpec& spec,
                                                             std::shared_ptr<HttpTransport> transport = nullptr);

// Rejects empty prompts with ProviderError, then delegates.
std::string call_provider(CompletionProvider& provider, const std::string& key, const std::string& prompt);

} // namespace ontoforge
