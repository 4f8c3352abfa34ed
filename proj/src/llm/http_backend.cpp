#include "tkg/llm/http_backend.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "tkg/common/log.hpp"

namespace tkg {

using nlohmann::json;

HttpBackend::HttpBackend(HttpBackendConfig cfg) : cfg_(std::move(cfg)) {
    if (const char* key = std::getenv(cfg_.api_key_env.c_str())) api_key_ = key;
    int slots = std::clamp(cfg_.max_inflight, 1, 64);
    inflight_ = std::make_unique<std::counting_semaphore<64>>(slots);
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::id() const { return "http:" + cfg_.model; }

std::unique_ptr<LlmBackend> HttpBackend::clone() const {
    return std::make_unique<HttpBackend>(cfg_);
}

Completion HttpBackend::complete(const Prompt& prompt) {
    prompt.check();

    json body;
    body["model"] = cfg_.model;
    body["temperature"] = prompt.temperature;
    body["max_tokens"] = prompt.max_tokens;
    auto& msgs = body["messages"] = json::array();
    for (const auto& m : prompt.messages) {
        msgs.push_back({{"role", role_name(m.role)}, {"content", m.content}});
    }
    const std::string payload = body.dump();

    inflight_->acquire();
    struct Release {
        std::counting_semaphore<64>* s;
        ~Release() { s->release(); }
    } release{inflight_.get()};

    auto start = std::chrono::steady_clock::now();
    int delay_ms = cfg_.backoff_base_ms;
    bool saw_rate_limit = false;
    bool saw_timeout = false;
    std::string last_detail;

    for (int attempt = 1; attempt <= cfg_.max_attempts; ++attempt) {
        httplib::Client client(cfg_.base_url);
        client.set_connection_timeout(cfg_.timeout_sec, 0);
        client.set_read_timeout(cfg_.timeout_sec, 0);
        httplib::Headers headers;
        if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

        auto res = client.Post(cfg_.path, headers, payload, "application/json");

        if (res && res->status == 200) {
            json reply;
            try {
                reply = json::parse(res->body);
            } catch (const json::exception& e) {
                throw Error(ErrKind::backend, std::string("bad completion body: ") + e.what());
            }
            if (!reply.contains("choices") || reply["choices"].empty())
                throw Error(ErrKind::backend, "completion body has no choices");
            Completion c;
            c.text = reply["choices"][0].value("message", json::object()).value("content", "");
            if (reply.contains("usage")) {
                c.prompt_tokens = reply["usage"].value("prompt_tokens", 0);
                c.completion_tokens = reply["usage"].value("completion_tokens", 0);
            }
            c.backend_id = id();
            c.latency_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
            return c;
        }

        if (res && (res->status == 401 || res->status == 403))
            throw Error(ErrKind::auth, "status " + std::to_string(res->status) + " from " +
                                           cfg_.base_url);

        if (res && res->status == 429) {
            saw_rate_limit = true;
            last_detail = "status 429";
        } else if (res) {
            if (res->status >= 400 && res->status < 500)
                throw Error(ErrKind::backend,
                            "status " + std::to_string(res->status) + ": " + res->body);
            last_detail = "status " + std::to_string(res->status);
        } else {
            auto err = res.error();
            if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
                err == httplib::Error::Write) {
                saw_timeout = true;
            }
            last_detail = httplib::to_string(err);
        }

        if (attempt < cfg_.max_attempts) {
            log::warn("llm request failed (" + last_detail + "), retry " +
                      std::to_string(attempt) + "/" + std::to_string(cfg_.max_attempts - 1));
            std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
            delay_ms *= cfg_.backoff_factor;
        }
    }

    if (saw_rate_limit)
        throw Error(ErrKind::rate_limited, "retries exhausted against " + cfg_.base_url);
    if (saw_timeout) throw Error(ErrKind::timeout, "retries exhausted against " + cfg_.base_url);
    throw Error(ErrKind::backend, "retries exhausted: " + last_detail);
}

} // namespace tkg
