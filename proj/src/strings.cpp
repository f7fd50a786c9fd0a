#include "paracoh/strings.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

#include "paracoh/error.hpp"

namespace paracoh {

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    // from_chars rejects a leading '+', accept it for hand-written files.
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return false;
    if (!std::isfinite(v)) return false;
    out = v;
    return true;
}

std::vector<std::string> read_word_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open list file: " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        out.emplace_back(t);
    }
    return out;
}

}  // namespace paracoh
