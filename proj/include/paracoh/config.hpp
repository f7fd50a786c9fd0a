#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace paracoh {

// "key = value" lines ('=' or ':' separator); '#' starts a comment line.
class KeyValueConfig {
public:
    static KeyValueConfig load(const std::string& path);
    static KeyValueConfig parse(std::string_view content, const std::string& source_name = "<memory>");

    std::optional<std::string> get(const std::string& key) const;
    std::optional<double> get_double(const std::string& key) const;
    const std::map<std::string, std::string>& entries() const { return entries_; }
    void set(const std::string& key, std::string value) { entries_[key] = std::move(value); }

private:
    std::string source_;
    std::map<std::string, std::string> entries_;
};

}  // namespace paracoh
