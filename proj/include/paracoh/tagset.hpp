#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace paracoh {

// Tag assigned to tokens whose tag is outside the configured set.
inline constexpr std::string_view kOtherTag = "XX";

// Ordered, duplicate-free list of POS tags with a stable identifier.
class TagSet {
public:
    TagSet() = default;
    TagSet(std::string name, std::vector<std::string> tags);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& tags() const { return tags_; }
    std::size_t size() const { return tags_.size(); }
    bool contains(std::string_view tag) const { return index_.contains(std::string(tag)); }
    std::optional<std::size_t> index_of(std::string_view tag) const;

    // "<name>:<fnv1a-64 of the tag list, hex>". Two tag sets share an id only
    // if they list the same tags in the same order.
    std::string id() const;

    bool operator==(const TagSet& other) const { return tags_ == other.tags_ && name_ == other.name_; }

private:
    std::string name_;
    std::vector<std::string> tags_;
    std::unordered_map<std::string, std::size_t> index_;
};

// One tag per line; blank lines ignored. The name is the file stem.
TagSet load_tag_set(const std::string& path);

}  // namespace paracoh
