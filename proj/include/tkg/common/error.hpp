#pragma once

#include <stdexcept>
#include <string>

namespace tkg {

// Error taxonomy shared across modules. Kinds map onto CLI exit codes:
// config -> 2, environment family -> 3, backend family -> 4.
enum class ErrKind {
    config,
    graph,
    unknown_entity,
    parse,
    backend,
    timeout,
    rate_limited,
    auth,
    no_scripted_match,
    env,
    connect_failed,
    protocol_violation,
    replay_divergence,
    grounding,
    planning,
};

inline const char* err_kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::config: return "config";
        case ErrKind::graph: return "graph";
        case ErrKind::unknown_entity: return "unknown-entity";
        case ErrKind::parse: return "parse";
        case ErrKind::backend: return "backend";
        case ErrKind::timeout: return "timeout";
        case ErrKind::rate_limited: return "rate-limit-exhausted";
        case ErrKind::auth: return "auth-failure";
        case ErrKind::no_scripted_match: return "no-scripted-match";
        case ErrKind::env: return "env";
        case ErrKind::connect_failed: return "connect-failed";
        case ErrKind::protocol_violation: return "protocol-violation";
        case ErrKind::replay_divergence: return "replay-divergence";
        case ErrKind::grounding: return "grounding";
        case ErrKind::planning: return "planning";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, const std::string& message)
        : std::runtime_error(std::string(err_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrKind kind() const { return kind_; }

private:
    ErrKind kind_;
};

} // namespace tkg
