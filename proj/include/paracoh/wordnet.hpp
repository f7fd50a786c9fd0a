#pragma once

#include <array>
#include <cstdint>
#include <list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace paracoh::wordnet {

enum class Category : std::uint8_t { noun = 0, verb = 1, adjective = 2, adverb = 3 };

inline constexpr std::array<Category, 4> kCategories = {Category::noun, Category::verb,
                                                        Category::adjective, Category::adverb};

std::string_view to_string(Category c);

// NN* -> noun, VB* -> verb, JJ* -> adjective, RB* -> adverb, anything else none.
std::optional<Category> category_of_tag(std::string_view tag);

using SynsetId = std::uint32_t;

struct Synset {
    Category category{};
    std::uint32_t offset = 0;  // offset field of the data file record
    std::vector<std::string> words;
    std::vector<SynsetId> hypernyms;  // @ and @i pointers
    std::vector<SynsetId> hyponyms;   // reverse of hypernyms
};

// In-memory WordNet: synsets, hypernym edges, lemma index, exception lists.
// Immutable once built; safe to share across threads.
class SynsetGraph {
public:
    std::size_t size() const { return synsets_.size(); }
    std::size_t size(Category c) const;
    std::size_t edge_count() const { return edge_count_; }

    const Synset& synset(SynsetId id) const { return synsets_.at(id); }
    std::optional<SynsetId> find(Category c, std::uint32_t offset) const;
    // "n:00001740" style identifier.
    std::string key(SynsetId id) const;

    // Raw index lookup, no morphology. Input is lowercased and spaces become '_'.
    std::span<const SynsetId> lookup(std::string_view lemma, Category c) const;
    bool in_index(std::string_view lemma, Category c) const { return !lookup(lemma, c).empty(); }
    // Base forms listed for an irregular form, empty when absent.
    std::span<const std::string> exceptions(std::string_view form, Category c) const;
    // Synsets of the category with no hypernym.
    std::span<const SynsetId> roots(Category c) const { return roots_[index(c)]; }
    // All synsets of the category; local_index(id) is the position in this list.
    std::span<const SynsetId> members(Category c) const { return members_[index(c)]; }
    std::uint32_t local_index(SynsetId id) const { return local_index_.at(id); }
    std::size_t index_size(Category c) const { return index_[index(c)].size(); }

    class Builder;

private:
    static std::size_t index(Category c) { return static_cast<std::size_t>(c); }

    std::vector<Synset> synsets_;
    std::array<std::unordered_map<std::uint32_t, SynsetId>, 4> by_offset_;
    std::array<std::unordered_map<std::string, std::vector<SynsetId>>, 4> index_;
    std::array<std::unordered_map<std::string, std::vector<std::string>>, 4> exceptions_;
    std::array<std::vector<SynsetId>, 4> roots_;
    std::array<std::vector<SynsetId>, 4> members_;
    std::vector<std::uint32_t> local_index_;
    std::size_t edge_count_ = 0;
};

// Assembles a graph in memory. Used by the loader and by tests.
class SynsetGraph::Builder {
public:
    SynsetId add_synset(Category c, std::uint32_t offset, std::vector<std::string> words);
    // Edge from `child` to its hypernym `parent`. Both must share a category.
    void add_hypernym(SynsetId child, SynsetId parent);
    // Adds `lemma` to the index for the synset's category.
    void index_lemma(std::string_view lemma, SynsetId id);
    void add_exception(Category c, std::string_view form, std::vector<std::string> bases);
    std::optional<SynsetId> find(Category c, std::uint32_t offset) const;
    SynsetGraph build() &&;

private:
    SynsetGraph g_;
};

// Reads index.{noun,verb,adj,adv}, data.{...} and {noun,verb,adj,adv}.exc from
// `dir` in the WordNet database layout. Errors name the file and byte offset.
SynsetGraph load_wordnet(const std::string& dir);

// Base forms of `form` present in the index, in order: the form itself, then
// exception-list entries, then suffix-detachment candidates. Duplicates removed.
std::vector<std::string> morphy(std::string_view form, Category c, const SynsetGraph& graph);

// Synsets for the base forms found by morphy; case-insensitive; empty when absent.
std::vector<SynsetId> synsets_of(std::string_view lemma, Category c, const SynsetGraph& graph);

// Path similarity value or undefined.
struct Similarity {
    std::optional<double> value;

    static Similarity undefined() { return {}; }
    bool defined() const { return value.has_value(); }
    bool operator==(const Similarity&) const = default;
};

// Shortest undirected hypernym-path length between any synset in `from` and
// any synset in `to`, with a virtual root joined to every hypernym-less synset
// of the category. Adjectives and adverbs have no hierarchy: the result is 0
// for a shared synset and nullopt otherwise.
std::optional<int> shortest_path_length(const SynsetGraph& graph, Category c,
                                        std::span<const SynsetId> from,
                                        std::span<const SynsetId> to);

// 1.0 for equal lemmas; otherwise the max of 1/(1+d) over the categories of
// the two tags in which both lemmas have synsets; undefined if none qualifies.
Similarity path_similarity(std::string_view lemma_a, std::string_view pos_a,
                           std::string_view lemma_b, std::string_view pos_b,
                           const SynsetGraph& graph);

// Memoizing path similarity. Keeps a bounded cache of per-lemma distance maps,
// so repeated queries against a large graph stay cheap. Not thread-safe: use
// one instance per worker.
class PathSimilarity {
public:
    explicit PathSimilarity(const SynsetGraph& graph, std::size_t max_cached_lemmas = 256);

    Similarity operator()(std::string_view lemma_a, std::string_view pos_a,
                          std::string_view lemma_b, std::string_view pos_b);

    const SynsetGraph& graph() const { return graph_; }

private:
    struct DistanceMap {
        std::vector<std::uint8_t> distance;  // by local index, 255 when unreached
    };

    const std::vector<SynsetId>& synsets(const std::string& lemma, Category c);
    const DistanceMap& distances(const std::string& lemma, Category c);
    std::optional<double> category_similarity(const std::string& a, const std::string& b, Category c);

    const SynsetGraph& graph_;
    std::size_t max_cached_;
    std::array<std::unordered_map<std::string, std::vector<SynsetId>>, 4> synset_cache_;
    // LRU of distance maps per category, keyed by lemma.
    std::array<std::list<std::pair<std::string, DistanceMap>>, 4> lru_;
    std::array<std::unordered_map<std::string, std::list<std::pair<std::string, DistanceMap>>::iterator>, 4>
        lru_index_;
};

}  // namespace paracoh::wordnet
