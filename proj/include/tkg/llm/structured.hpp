#pragma once

#include <string>

#include <json.hpp>

#include "tkg/common/error.hpp"

namespace tkg {

// Registered output shapes model text must conform to.
enum class StructuredShape {
    plan_steps,      // array of {"action": str, ...}
    tuple_list,      // array of {"subject","predicate","object", optional types}
    verdict,         // {"verdict": "match"|"minor-deviation"|"divergence", "rationale"?}
    query_or_answer, // {"query": str} xor final payload ("answer"/"observation"/"reward")
};

const char* shape_name(StructuredShape s);

// Pulls the first fenced or bare JSON block out of `text` (trailing prose is
// ignored), parses it, and validates it against the shape. Throws
// Error{parse} describing the first violation.
nlohmann::json parse_structured(const std::string& text, StructuredShape shape);

} // namespace tkg
