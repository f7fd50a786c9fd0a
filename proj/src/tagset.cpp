#include "paracoh/tagset.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "paracoh/error.hpp"
#include "paracoh/strings.hpp"

namespace paracoh {

TagSet::TagSet(std::string name, std::vector<std::string> tags) : name_(std::move(name)), tags_(std::move(tags)) {
    if (tags_.empty()) throw InvalidArgument("tag set '" + name_ + "' is empty");
    for (std::size_t i = 0; i < tags_.size(); ++i) {
        const auto& t = tags_[i];
        if (t.empty() || t.find_first_of(" \t") != std::string::npos) {
            throw InvalidArgument("tag set '" + name_ + "' holds an invalid tag '" + t + "'");
        }
        if (t == kOtherTag) throw InvalidArgument("tag set '" + name_ + "' may not list the reserved tag XX");
        if (!index_.emplace(t, i).second) throw InvalidArgument("tag set '" + name_ + "' repeats tag '" + t + "'");
    }
}

std::optional<std::size_t> TagSet::index_of(std::string_view tag) const {
    auto it = index_.find(std::string(tag));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string TagSet::id() const {
    std::uint64_t h = 14695981039346656037ULL;
    for (const auto& t : tags_) {
        for (unsigned char c : t) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        h ^= 0x0a;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return name_ + ":" + buf;
}

TagSet load_tag_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open tag set file: " + path);
    std::vector<std::string> tags;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (!t.empty()) tags.emplace_back(t);
    }
    return TagSet(std::filesystem::path(path).stem().string(), std::move(tags));
}

}  // namespace paracoh
