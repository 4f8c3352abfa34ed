#pragma once

#include <map>
#include <string>

namespace tkg {

// Named operation counters, one instance per episode. Ablation tests and the
// retrieval-budget invariants assert against these.
class Counters {
public:
    void inc(const std::string& name, int by = 1) { counts_[name] += by; }

    int get(const std::string& name) const {
        auto it = counts_.find(name);
        return it == counts_.end() ? 0 : it->second;
    }

    const std::map<std::string, int>& all() const { return counts_; }

private:
    std::map<std::string, int> counts_;
};

namespace counter {
inline constexpr const char* graph_qa = "graph_qa";
inline constexpr const char* monologue_turn = "monologue_turn";
inline constexpr const char* ground_plan = "ground_plan";
inline constexpr const char* critique = "critique";
inline constexpr const char* plan = "plan";
inline constexpr const char* replan = "replan";
} // namespace counter

} // namespace tkg
