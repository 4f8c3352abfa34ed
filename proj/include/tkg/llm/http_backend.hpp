#pragma once

#include <memory>
#include <semaphore>
#include <string>

#include "tkg/llm/backend.hpp"

namespace tkg {

struct HttpBackendConfig {
    std::string base_url = "http://localhost:8000"; // host[:port], http only
    std::string path = "/v1/chat/completions";
    std::string model = "local-model";
    std::string api_key_env = "TKG_AGENT_API_KEY";
    int timeout_sec = 60;
    int max_attempts = 3;        // total attempts for transient failures
    int backoff_base_ms = 1000;  // exponential: base, base*2, ...
    int backoff_factor = 2;
    int max_inflight = 4;
};

// OpenAI-compatible chat-completions client. 429 and 5xx/connect failures are
// retried with exponential backoff; 401/403 fail immediately as auth errors.
class HttpBackend : public LlmBackend {
public:
    explicit HttpBackend(HttpBackendConfig cfg);
    ~HttpBackend() override;

    Completion complete(const Prompt& prompt) override;
    std::string id() const override;
    std::unique_ptr<LlmBackend> clone() const override;

private:
    HttpBackendConfig cfg_;
    std::string api_key_;
    std::unique_ptr<std::counting_semaphore<64>> inflight_;
};

} // namespace tkg
