#pragma once

#include <iosfwd>
#include <memory>
#include <mutex>
#include <vector>

#include "tkg/llm/types.hpp"

namespace tkg {

class LlmBackend {
public:
    virtual ~LlmBackend() = default;
    virtual Completion complete(const Prompt& prompt) = 0;
    virtual std::string id() const = 0;
    // Fresh instance with pristine mutable state (scripted match counts).
    // Parallel eval gives each episode its own clone for determinism.
    virtual std::unique_ptr<LlmBackend> clone() const = 0;
};

// Deterministic offline backend: first rule whose matcher hits the rendered
// prompt wins; match-count limits are tracked per instance.
class ScriptedBackend : public LlmBackend {
public:
    explicit ScriptedBackend(std::vector<ScriptedRule> rules);

    Completion complete(const Prompt& prompt) override;
    std::string id() const override { return "scripted"; }
    std::unique_ptr<LlmBackend> clone() const override;

    // One `{"match":"...","response":"...","limit":n,"regex":bool}` per line.
    static std::vector<ScriptedRule> load_rules(std::istream& in);
    static std::vector<ScriptedRule> load_rules_file(const std::string& path);

private:
    std::vector<ScriptedRule> rules_;
    std::vector<int> used_;
    std::mutex mutex_;
};

} // namespace tkg
