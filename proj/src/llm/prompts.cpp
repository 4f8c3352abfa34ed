#include "tkg/llm/prompts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tkg/common/error.hpp"

namespace tkg {

namespace fs = std::filesystem;

std::string PromptLibrary::default_dir() {
#ifdef TKG_DEFAULT_PROMPT_DIR
    if (fs::exists(TKG_DEFAULT_PROMPT_DIR)) return TKG_DEFAULT_PROMPT_DIR;
#endif
    return "prompts";
}

PromptLibrary::PromptLibrary(const std::string& dir) : dir_(dir) {
    if (!fs::exists(dir_)) throw Error(ErrKind::config, "prompt directory not found: " + dir_);
    for (const auto& entry : fs::directory_iterator(dir_)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        std::ifstream in(entry.path());
        std::ostringstream body;
        body << in.rdbuf();
        templates_[entry.path().stem().string()] = body.str();
    }
    if (templates_.empty())
        throw Error(ErrKind::config, "no prompt templates in " + dir_);
}

const std::string& PromptLibrary::raw(const std::string& name) const {
    auto it = templates_.find(name);
    if (it == templates_.end())
        throw Error(ErrKind::config, "unknown prompt template '" + name + "' in " + dir_);
    return it->second;
}

std::string PromptLibrary::render(const std::string& name,
                                  const std::map<std::string, std::string>& values) const {
    const std::string& tmpl = raw(name);
    std::string out;
    out.reserve(tmpl.size());
    for (std::size_t i = 0; i < tmpl.size();) {
        if (tmpl[i] == '{' && i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
            out += '{';
            i += 2;
        } else if (tmpl[i] == '}' && i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
            out += '}';
            i += 2;
        } else if (tmpl[i] == '{') {
            auto end = tmpl.find('}', i);
            if (end == std::string::npos)
                throw Error(ErrKind::config, "unterminated placeholder in template " + name);
            std::string key = tmpl.substr(i + 1, end - i - 1);
            auto it = values.find(key);
            if (it == values.end())
                throw Error(ErrKind::config,
                            "template " + name + " needs placeholder '" + key + "'");
            out += it->second;
            i = end + 1;
        } else {
            out += tmpl[i++];
        }
    }
    return out;
}

} // namespace tkg
