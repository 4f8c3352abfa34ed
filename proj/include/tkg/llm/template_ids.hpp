#pragma once

// Template names double as routing keys and call-counter keys.
namespace tkg::tmpl {

inline constexpr const char* summarize = "summarize_transition.v1";
inline constexpr const char* coref = "coref_resolve.v1";
inline constexpr const char* extract = "extract_tuples.v1";
inline constexpr const char* belief = "belief_update.v1";
inline constexpr const char* policy = "propose_action.v1";
inline constexpr const char* transition = "predict_transition.v1";
inline constexpr const char* reward = "predict_reward.v1";
inline constexpr const char* qa_types = "qa_select_types.v1";
inline constexpr const char* qa_seeds = "qa_select_entities.v1";
inline constexpr const char* qa_answer = "qa_answer.v1";
inline constexpr const char* qa_monologue = "qa_monologue.v1";
inline constexpr const char* ground = "ground_action.v1";
inline constexpr const char* critic = "critic_verdict.v1";

} // namespace tkg::tmpl
