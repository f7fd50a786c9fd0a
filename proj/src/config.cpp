#include "paracoh/config.hpp"

#include <fstream>
#include <sstream>

#include "paracoh/error.hpp"
#include "paracoh/strings.hpp"

namespace paracoh {

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

KeyValueConfig KeyValueConfig::parse(std::string_view content, const std::string& source_name) {
    KeyValueConfig cfg;
    cfg.source_ = source_name;
    std::size_t line_no = 0;
    for (const auto& raw : split(content, '\n')) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto sep = line.find_first_of("=:");
        if (sep == std::string_view::npos) {
            throw ParseError(source_name, "line " + std::to_string(line_no), "expected key = value");
        }
        auto key = trim(line.substr(0, sep));
        auto value = trim(line.substr(sep + 1));
        if (key.empty()) throw ParseError(source_name, "line " + std::to_string(line_no), "empty key");
        cfg.entries_[std::string(key)] = std::string(value);
    }
    return cfg;
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    double d = 0.0;
    if (!parse_double(*v, d)) throw InvalidArgument(source_ + ": '" + key + "' is not a number: " + *v);
    return d;
}

}  // namespace paracoh
