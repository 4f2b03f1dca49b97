#pragma once

#include <chrono>
#include <cstdlib>
#include <memory>
#include <regex>
#include <string>
#include <vector>

// Eigen before httplib: <resolv.h> defines a `_res` macro that breaks Eigen.
#include <Eigen/Core>
#include <httplib.h>
#include <json.hpp>

#include "xrwm/error.hpp"
#include "xrwm/intent/plan.hpp"
#include "xrwm/intent/resolver.hpp"

namespace xrwm {

inline constexpr const char* kApiKeyEnv = "OPENAI_API_KEY";
inline constexpr const char* kCorrectiveInstruction =
    "Your previous reply could not be parsed. Respond with only the JSON object "
    "{\"response\": ..., \"actions\": [...]} and nothing else.";

struct RemoteConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string api_key;
  std::string model = "gpt-4";
  double timeout_s = 30.0;
  int corrective_retries = 1;
  double temperature = 0.0;

  /// Fills `api_key` from the environment when it is empty.
  static RemoteConfig from_env(RemoteConfig base) {
    if (base.api_key.empty())
      if (const char* key = std::getenv(kApiKeyEnv)) base.api_key = key;
    return base;
  }
};

/// OpenAI-compatible chat-completions client. Replies that fail parse_plan
/// are retried with a corrective instruction; transport and provider
/// failures are not retried.
class RemoteResolver final : public ResolverBackend {
 public:
  explicit RemoteResolver(RemoteConfig config) : config_(std::move(config)) {
    static const std::regex url(R"(^(https?)://([^/:]+)(?::(\d+))?(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(config_.endpoint, m, url))
      throw Error(ErrorKind::ConfigError, "endpoint '" + config_.endpoint + "' is not an http(s) URL");
    if (config_.api_key.empty())
      throw Error(ErrorKind::ConfigError, std::string("no API key configured (set ") + kApiKeyEnv + ")");
    if (config_.corrective_retries < 0) throw Error(ErrorKind::ConfigError, "corrective_retries must be >= 0");
    origin_ = m[1].str() + "://" + m[2].str() + (m[3].matched ? ":" + m[3].str() : "");
    path_ = m[4].matched ? m[4].str() : "/";
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (m[1].str() == "https") throw Error(ErrorKind::ConfigError, "built without TLS support; use an http endpoint");
#endif
  }

  std::string name() const override { return "remote"; }
  const RemoteConfig& config() const { return config_; }

  std::string resolve(const PromptDocument& prompt) override {
    nlohmann::json messages = nlohmann::json::array({
        {{"role", "system"}, {"content", prompt.system_text}},
        {{"role", "user"}, {"content", prompt.user_message()}},
    });
    std::vector<std::string> attempts;
    for (int attempt = 0; attempt <= config_.corrective_retries; ++attempt) {
      std::string reply = complete(messages);
      attempts.push_back(reply);
      try {
        parse_plan(reply);
        return reply;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::MalformedJson && e.kind() != ErrorKind::SchemaViolation &&
            e.kind() != ErrorKind::UnknownVerb)
          throw;
      }
      messages.push_back({{"role", "assistant"}, {"content", reply}});
      messages.push_back({{"role", "user"}, {"content", kCorrectiveInstruction}});
    }
    throw Error(ErrorKind::MalformedJson,
                "model reply failed to parse after " + std::to_string(attempts.size()) + " attempts",
                {{"attempts", attempts}});
  }

 private:
  std::string complete(const nlohmann::json& messages) {
    httplib::Client client(origin_);
    const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::duration<double>(config_.timeout_s));
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_bearer_token_auth(config_.api_key);

    const nlohmann::json body{{"model", config_.model}, {"messages", messages}, {"temperature", config_.temperature}};
    auto res = client.Post(path_, body.dump(), "application/json");
    if (!res)
      throw Error(ErrorKind::NetworkError, "request to " + origin_ + path_ + " failed: " + httplib::to_string(res.error()));
    const int status = res->status;
    if (status == 401 || status == 403)
      throw Error(ErrorKind::AuthError, "provider rejected credentials (HTTP " + std::to_string(status) + ")");
    if (status < 200 || status >= 300)
      throw Error(ErrorKind::ProviderError, "provider returned HTTP " + std::to_string(status),
                  {{"status", status}, {"body_excerpt", res->body.substr(0, 512)}});

    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
      return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorKind::ProviderError, "provider response is not a chat completion",
                  {{"status", status}, {"body_excerpt", res->body.substr(0, 512)}});
    }
  }

  RemoteConfig config_;
  std::string origin_;
  std::string path_;
};

}  // namespace xrwm
