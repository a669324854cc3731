#include "ontoforge/completion/provider.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "ontoforge/error.hpp"

namespace ontoforge {

namespace {

std::map<std::string, std::vector<std::string>> read_script(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open script file " + path.string());
    std::map<std::string, std::vector<std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            auto j = nlohmann::json::parse(line);
            out[j.at("key").get<std::string>()].push_back(j.at("response").get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(line_no, std::string("script file: ") + e.what());
        }
    }
    return out;
}

} // namespace

ScriptedProvider::ScriptedProvider(std::string model_name, const std::filesystem::path& script)
    : ScriptedProvider(std::move(model_name), read_script(script)) {}

ScriptedProvider::ScriptedProvider(std::string model_name, std::map<std::string, std::vector<std::string>> responses)
    : model_name_(std::move(model_name)), responses_(std::move(responses)) {}

std::string ScriptedProvider::complete(const std::string& key, const std::string&) {
    std::lock_guard lock(mu_);
    auto it = responses_.find(key);
    if (it == responses_.end() || it->second.empty()) throw ScriptMiss("no scripted response for key '" + key + "'");
    auto& pos = cursor_[key];
    const auto& r = it->second[std::min(pos, it->second.size() - 1)];
    ++pos;
    return r;
}

RemoteCompletionProvider::RemoteCompletionProvider(CompletionProviderSpec spec, std::shared_ptr<HttpTransport> transport)
    : spec_(std::move(spec)), transport_(std::move(transport)), api_key_(env_value(spec_.api_key_env)) {
    if (!spec_.endpoint) throw ConfigError("remote completion provider requires an endpoint");
    if (!transport_) transport_ = std::make_shared<HttplibTransport>(std::chrono::seconds(300));
}

std::string RemoteCompletionProvider::complete(const std::string&, const std::string& prompt) {
    HttpRequest req;
    req.method = "POST";
    req.url = *spec_.endpoint;
    req.body = nlohmann::json{{"model", spec_.model_name},
                              {"temperature", spec_.temperature},
                              {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})}}
                   .dump();
    if (api_key_) req.headers.emplace_back("Authorization", "Bearer " + *api_key_);

    const auto res = send_with_retry(*transport_, req, spec_.retry);
    if (res.status != 200) {
        throw ProviderError("completion endpoint returned HTTP " + std::to_string(res.status) +
                            (res.error.empty() ? "" : " (" + res.error + ")"));
    }
    try {
        const auto body = nlohmann::json::parse(res.body);
        const auto& choice = body.at("choices").at(0);
        if (choice.contains("message")) return choice["message"].at("content").get<std::string>();
        return choice.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("unreadable completion response: ") + e.what());
    }
}

std::unique_ptr<CompletionProvider> make_completion_provider(const CompletionProviderSpec& spec,
                                                             std::shared_ptr<HttpTransport> transport) {
    switch (spec.kind) {
    case CompletionProviderKind::scripted:
        if (!spec.script_path) throw ConfigError("scripted completion provider requires a script path");
        return std::make_unique<ScriptedProvider>(spec.model_name, *spec.script_path);
    case CompletionProviderKind::remote_http:
        return std::make_unique<RemoteCompletionProvider>(spec, std::move(transport));
    }
    throw ConfigError("unknown completion provider kind");
}

std::string call_provider(CompletionProvider& provider, const std::string& key, const std::string& prompt) {
    if (prompt.empty()) throw ProviderError("empty prompt");
    return provider.complete(key, prompt);
}

} // namespace ontoforge
