#include "tkg/llm/structured.hpp"

#include "tkg/common/text.hpp"

namespace tkg {

using nlohmann::json;

const char* shape_name(StructuredShape s) {
    switch (s) {
        case StructuredShape::plan_steps: return "plan-steps";
        case StructuredShape::tuple_list: return "tuple-list";
        case StructuredShape::verdict: return "verdict";
        case StructuredShape::query_or_answer: return "query-or-answer";
    }
    return "unknown";
}

namespace {

// Candidate block: fenced ``` region if present, else the first balanced
// [ ... ] or { ... } region.
std::string extract_block(const std::string& text) {
    auto fence = text.find("```");
    if (fence != std::string::npos) {
        auto body_start = text.find('\n', fence);
        if (body_start != std::string::npos) {
            auto fence_end = text.find("```", body_start);
            if (fence_end != std::string::npos) {
                return text.substr(body_start + 1, fence_end - body_start - 1);
            }
        }
    }

    auto first_obj = text.find('{');
    auto first_arr = text.find('[');
    std::size_t start;
    char open, close;
    if (first_arr != std::string::npos && (first_obj == std::string::npos || first_arr < first_obj)) {
        start = first_arr;
        open = '[';
        close = ']';
    } else if (first_obj != std::string::npos) {
        start = first_obj;
        open = '{';
        close = '}';
    } else {
        throw Error(ErrKind::parse, "no structured block found");
    }

    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"')
                in_string = false;
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == open) {
            ++depth;
        } else if (c == close) {
            --depth;
            if (depth == 0) return text.substr(start, i - start + 1);
        }
    }
    throw Error(ErrKind::parse, "unterminated structured block");
}

void require_string(const json& obj, const char* key) {
    if (!obj.contains(key) || !obj[key].is_string() ||
        text::trim(obj[key].get<std::string>()).empty())
        throw Error(ErrKind::parse, std::string("missing or empty '") + key + "'");
}

void validate(const json& value, StructuredShape shape) {
    switch (shape) {
        case StructuredShape::plan_steps: {
            if (!value.is_array() || value.empty())
                throw Error(ErrKind::parse, "plan-steps: expected non-empty array");
            for (const auto& step : value) {
                if (!step.is_object())
                    throw Error(ErrKind::parse, "plan-steps: step is not an object");
                require_string(step, "action");
            }
            return;
        }
        case StructuredShape::tuple_list: {
            if (!value.is_array()) throw Error(ErrKind::parse, "tuple-list: expected array");
            for (const auto& t : value) {
                if (!t.is_object()) throw Error(ErrKind::parse, "tuple-list: item not an object");
                require_string(t, "subject");
                require_string(t, "predicate");
                require_string(t, "object");
            }
            return;
        }
        case StructuredShape::verdict: {
            if (!value.is_object()) throw Error(ErrKind::parse, "verdict: expected object");
            require_string(value, "verdict");
            const std::string v = value["verdict"].get<std::string>();
            if (v != "match" && v != "minor-deviation" && v != "divergence")
                throw Error(ErrKind::parse, "verdict: unknown level '" + v + "'");
            return;
        }
        case StructuredShape::query_or_answer: {
            if (!value.is_object())
                throw Error(ErrKind::parse, "query-or-answer: expected object");
            bool has_query = value.contains("query") && value["query"].is_string() &&
                             !text::trim(value["query"].get<std::string>()).empty();
            bool has_payload = value.contains("answer") || value.contains("observation") ||
                               value.contains("reward") || value.contains("action");
            if (has_query && has_payload)
                throw Error(ErrKind::parse, "query-or-answer: both query and payload present");
            if (!has_query && !has_payload)
                throw Error(ErrKind::parse, "query-or-answer: neither query nor payload present");
            return;
        }
    }
}

} // namespace

json parse_structured(const std::string& text, StructuredShape shape) {
    std::string block = extract_block(text);
    json value;
    try {
        value = json::parse(block);
    } catch (const json::exception& e) {
        throw Error(ErrKind::parse, std::string(shape_name(shape)) + ": " + e.what());
    }
    validate(value, shape);
    return value;
}

} // namespace tkg
