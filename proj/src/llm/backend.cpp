#include "tkg/llm/backend.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "tkg/common/text.hpp"

namespace tkg {

using nlohmann::json;

ScriptedBackend::ScriptedBackend(std::vector<ScriptedRule> rules)
    : rules_(std::move(rules)), used_(rules_.size(), 0) {
    for (const auto& r : rules_) {
        if (r.match.empty()) throw Error(ErrKind::config, "scripted rule with empty matcher");
    }
}

Completion ScriptedBackend::complete(const Prompt& prompt) {
    prompt.check();
    const std::string rendered = prompt.rendered();

    std::lock_guard<std::mutex> lock(mutex_);
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const ScriptedRule& r = rules_[i];
        if (r.limit >= 0 && used_[i] >= r.limit) continue;
        bool hit = false;
        if (r.is_regex) {
            hit = std::regex_search(rendered, std::regex(r.match));
        } else {
            hit = text::contains(rendered, r.match);
        }
        if (!hit) continue;
        ++used_[i];
        Completion c;
        c.text = r.response;
        c.prompt_tokens = static_cast<int>(text::word_count(rendered));
        c.completion_tokens = static_cast<int>(text::word_count(r.response));
        c.backend_id = id();
        c.latency_ms = 0.0;
        return c;
    }
    throw Error(ErrKind::no_scripted_match,
                "no scripted rule matched prompt for template '" + prompt.template_id + "'");
}

std::unique_ptr<LlmBackend> ScriptedBackend::clone() const {
    return std::make_unique<ScriptedBackend>(rules_);
}

std::vector<ScriptedRule> ScriptedBackend::load_rules(std::istream& in) {
    std::vector<ScriptedRule> rules;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(ErrKind::parse,
                        "scripted rules line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!rec.contains("match") || !rec.contains("response"))
            throw Error(ErrKind::parse, "scripted rules line " + std::to_string(line_no) +
                                            ": need 'match' and 'response'");
        ScriptedRule r;
        r.match = rec["match"].get<std::string>();
        r.response = rec["response"].get<std::string>();
        r.limit = rec.value("limit", -1);
        r.is_regex = rec.value("regex", false);
        rules.push_back(std::move(r));
    }
    return rules;
}

std::vector<ScriptedRule> ScriptedBackend::load_rules_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrKind::config, "cannot open scripted rules file: " + path);
    return load_rules(in);
}

} // namespace tkg
