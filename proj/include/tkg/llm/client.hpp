#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tkg/llm/backend.hpp"
#include "tkg/llm/structured.hpp"

namespace tkg {

struct CallRecord {
    int index = 0;
    std::string template_id;
    std::string backend_id;
    std::string prompt;
    std::string response;
};

// Fan-out point for all model traffic: routes by template id, keeps exact
// per-template call counts, optionally mirrors every exchange to an in-memory
// log and an audit file. One instance per episode.
class LlmClient {
public:
    explicit LlmClient(std::shared_ptr<LlmBackend> default_backend);

    void route(const std::string& template_id, std::shared_ptr<LlmBackend> backend);

    Completion complete(const Prompt& prompt);

    // complete() followed by shape validation, with one scripted repair
    // round-trip on parse failure before the error surfaces.
    nlohmann::json complete_structured(const Prompt& prompt, StructuredShape shape);

    void enable_call_log(bool on) { keep_log_ = on; }
    const std::vector<CallRecord>& call_log() const { return log_; }

    // Newline-delimited audit records, shared across clients via the sink.
    struct AuditSink {
        std::mutex mutex;
        std::unique_ptr<std::ostream> stream;
    };
    void set_audit(std::shared_ptr<AuditSink> sink) { audit_ = std::move(sink); }
    static std::shared_ptr<AuditSink> open_audit_file(const std::string& path);

    int call_count(const std::string& template_id) const;
    int total_calls() const;
    int repair_count() const { return repairs_; }

private:
    LlmBackend& backend_for(const std::string& template_id);
    void record(const Prompt& prompt, const Completion& completion);

    std::shared_ptr<LlmBackend> default_backend_;
    std::map<std::string, std::shared_ptr<LlmBackend>> routes_;
    std::map<std::string, int> counts_;
    std::vector<CallRecord> log_;
    bool keep_log_ = false;
    int repairs_ = 0;
    int call_index_ = 0;
    std::shared_ptr<AuditSink> audit_;
};

} // namespace tkg
