#include "tkg/llm/client.hpp"

#include <fstream>

#include <json.hpp>

#include "tkg/common/log.hpp"

namespace tkg {

using nlohmann::json;

LlmClient::LlmClient(std::shared_ptr<LlmBackend> default_backend)
    : default_backend_(std::move(default_backend)) {
    if (!default_backend_) throw Error(ErrKind::config, "client needs a default backend");
}

void LlmClient::route(const std::string& template_id, std::shared_ptr<LlmBackend> backend) {
    routes_[template_id] = std::move(backend);
}

LlmBackend& LlmClient::backend_for(const std::string& template_id) {
    auto it = routes_.find(template_id);
    if (it != routes_.end()) return *it->second;
    return *default_backend_;
}

Completion LlmClient::complete(const Prompt& prompt) {
    prompt.check();
    Completion c = backend_for(prompt.template_id).complete(prompt);
    ++counts_[prompt.template_id];
    record(prompt, c);
    return c;
}

void LlmClient::record(const Prompt& prompt, const Completion& completion) {
    int index = call_index_++;
    if (keep_log_) {
        log_.push_back(CallRecord{index, prompt.template_id, completion.backend_id,
                                  prompt.rendered(), completion.text});
    }
    if (audit_ && audit_->stream) {
        json rec;
        rec["i"] = index;
        rec["template"] = prompt.template_id;
        rec["backend"] = completion.backend_id;
        auto& msgs = rec["messages"] = json::array();
        for (const auto& m : prompt.messages)
            msgs.push_back({{"role", role_name(m.role)}, {"content", m.content}});
        rec["response"] = completion.text;
        rec["prompt_tokens"] = completion.prompt_tokens;
        rec["completion_tokens"] = completion.completion_tokens;
        std::lock_guard<std::mutex> lock(audit_->mutex);
        (*audit_->stream) << rec.dump() << "\n";
        audit_->stream->flush();
    }
}

std::shared_ptr<LlmClient::AuditSink> LlmClient::open_audit_file(const std::string& path) {
    auto sink = std::make_shared<AuditSink>();
    auto out = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*out) throw Error(ErrKind::config, "cannot open llm audit file: " + path);
    sink->stream = std::move(out);
    return sink;
}

nlohmann::json LlmClient::complete_structured(const Prompt& prompt, StructuredShape shape) {
    Completion first = complete(prompt);
    std::string parse_error;
    try {
        return parse_structured(first.text, shape);
    } catch (const Error& e) {
        parse_error = e.what();
    }

    // One repair round-trip: show the model its own output and the error.
    Prompt repair = prompt;
    repair.template_id = prompt.template_id;
    repair.messages.push_back({Role::assistant, first.text});
    repair.messages.push_back(
        {Role::user, "## repair-output\nYour previous reply failed to parse (" + parse_error +
                         "). Reply again with only a corrected " +
                         std::string(shape_name(shape)) + " block and nothing else."});
    Completion second = complete(repair);
    ++repairs_;
    try {
        return parse_structured(second.text, shape);
    } catch (const Error& e) {
        throw Error(ErrKind::parse, std::string("after repair: ") + e.what() +
                                        "; raw text: " + second.text);
    }
}

int LlmClient::call_count(const std::string& template_id) const {
    auto it = counts_.find(template_id);
    return it == counts_.end() ? 0 : it->second;
}

int LlmClient::total_calls() const {
    int n = 0;
    for (const auto& [_, v] : counts_) n += v;
    return n;
}

} // namespace tkg
