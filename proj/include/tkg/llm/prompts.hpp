#pragma once

#include <map>
#include <string>

namespace tkg {

// Versioned prompt templates loaded from a directory of `<name>.txt` files.
// Placeholders are written `{name}` and substituted verbatim; unknown
// placeholders are an error so fixtures stay honest.
class PromptLibrary {
public:
    explicit PromptLibrary(const std::string& dir);

    const std::string& raw(const std::string& name) const;
    std::string render(const std::string& name,
                       const std::map<std::string, std::string>& values) const;

    static std::string default_dir();

private:
    std::map<std::string, std::string> templates_;
    std::string dir_;
};

} // namespace tkg
