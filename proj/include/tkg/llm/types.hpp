#pragma once

#include <string>
#include <vector>

#include "tkg/common/error.hpp"

namespace tkg {

enum class Role { system, user, assistant };

inline const char* role_name(Role r) {
    switch (r) {
        case Role::system: return "system";
        case Role::user: return "user";
        case Role::assistant: return "assistant";
    }
    return "user";
}

struct Message {
    Role role = Role::user;
    std::string content;
};

struct Prompt {
    std::string template_id;
    std::vector<Message> messages;
    double temperature = 0.0;
    int max_tokens = 1024;

    void check() const {
        if (messages.empty()) throw Error(ErrKind::config, "prompt has no messages");
        if (temperature < 0.0 || temperature > 2.0)
            throw Error(ErrKind::config, "temperature out of [0,2]");
    }

    // Flat text view of the conversation; scripted rules match against this.
    std::string rendered() const {
        std::string out;
        for (const auto& m : messages) {
            if (!out.empty()) out += "\n";
            out += m.content;
        }
        return out;
    }
};

struct Completion {
    std::string text;
    int prompt_tokens = 0;
    int completion_tokens = 0;
    std::string backend_id;
    double latency_ms = 0.0;
};

struct ScriptedRule {
    std::string match;    // substring, or ECMAScript regex when is_regex
    std::string response;
    int limit = -1;       // -1 = unlimited
    bool is_regex = false;
};

} // namespace tkg
