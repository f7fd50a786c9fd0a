#include "paracoh/wordnet.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "paracoh/error.hpp"
#include "paracoh/strings.hpp"

namespace paracoh::wordnet {

namespace {

constexpr std::uint8_t kUnreached = 255;

std::size_t cat_index(Category c) { return static_cast<std::size_t>(c); }

std::string normalize_lemma(std::string_view s) {
    std::string out = to_lower(trim(s));
    std::replace(out.begin(), out.end(), ' ', '_');
    return out;
}

const char* file_suffix(Category c) {
    switch (c) {
        case Category::noun: return "noun";
        case Category::verb: return "verb";
        case Category::adjective: return "adj";
        case Category::adverb: return "adv";
    }
    return "";
}

std::optional<Category> category_of_letter(char c) {
    switch (c) {
        case 'n': return Category::noun;
        case 'v': return Category::verb;
        case 'a':
        case 's': return Category::adjective;
        case 'r': return Category::adverb;
        default: return std::nullopt;
    }
}

struct Detachment {
    std::string_view suffix;
    std::string_view ending;
};

// Suffix-detachment rules of the WordNet morphological processor.
std::span<const Detachment> detachment_rules(Category c) {
    static constexpr Detachment noun[] = {{"s", ""},     {"ses", "s"},  {"ves", "f"},  {"xes", "x"},
                                          {"zes", "z"},  {"ches", "ch"}, {"shes", "sh"}, {"men", "man"},
                                          {"ies", "y"}};
    static constexpr Detachment verb[] = {{"s", ""},   {"ies", "y"}, {"es", "e"},  {"es", ""},
                                          {"ed", "e"}, {"ed", ""},   {"ing", "e"}, {"ing", ""}};
    static constexpr Detachment adj[] = {{"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"}};
    switch (c) {
        case Category::noun: return noun;
        case Category::verb: return verb;
        case Category::adjective: return adj;
        case Category::adverb: return {};
    }
    return {};
}

struct Line {
    std::size_t offset;
    std::string_view text;
};

std::string read_whole(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ResourceError("cannot open wordnet file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Line> lines_of(std::string_view content) {
    std::vector<Line> out;
    std::size_t start = 0;
    while (start < content.size()) {
        auto end = content.find('\n', start);
        if (end == std::string_view::npos) end = content.size();
        auto text = content.substr(start, end - start);
        if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
        out.push_back({start, text});
        start = end + 1;
    }
    return out;
}

std::vector<std::string_view> fields_of(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        if (i >= s.size()) break;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename T>
bool parse_uint(std::string_view s, T& out, int base = 10) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out, base);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// Strips the adjective syntactic marker, e.g. "galore(ip)" -> "galore".
std::string strip_marker(std::string_view w) {
    if (!w.empty() && w.back() == ')') {
        auto open = w.rfind('(');
        if (open != std::string_view::npos && open > 0) w = w.substr(0, open);
    }
    return std::string(w);
}

struct PendingEdge {
    SynsetId child;
    Category category;
    std::uint32_t target;
    std::string file;
    std::size_t byte;
};

class ParseContext {
public:
    ParseContext(std::string file, std::size_t byte) : file_(std::move(file)), byte_(byte) {}
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(file_, "byte " + std::to_string(byte_), what);
    }

private:
    std::string file_;
    std::size_t byte_;
};

void parse_data_file(const std::filesystem::path& path, Category cat, SynsetGraph::Builder& b,
                     std::vector<PendingEdge>& edges) {
    const std::string content = read_whole(path);
    const std::string name = path.string();
    for (const auto& line : lines_of(content)) {
        if (line.text.empty() || line.text.front() == ' ') continue;
        ParseContext ctx(name, line.offset);
        auto bar = line.text.find(" |");
        auto body = line.text.substr(0, bar);
        const auto f = fields_of(body);
        if (f.size() < 4) ctx.fail("truncated synset record");
        std::uint32_t offset = 0;
        if (!parse_uint(f[0], offset)) ctx.fail("bad synset offset '" + std::string(f[0]) + "'");
        if (f[2].size() != 1) ctx.fail("bad synset type '" + std::string(f[2]) + "'");
        auto type_cat = category_of_letter(f[2][0]);
        if (!type_cat || *type_cat != cat) ctx.fail("synset type '" + std::string(f[2]) + "' does not match file");
        unsigned word_count = 0;
        if (!parse_uint(f[3], word_count, 16) || word_count == 0) ctx.fail("bad word count");
        std::size_t pos = 4;
        if (f.size() < pos + 2 * word_count + 1) ctx.fail("truncated word list");
        std::vector<std::string> words;
        for (unsigned w = 0; w < word_count; ++w) {
            words.push_back(strip_marker(f[pos]));
            pos += 2;
        }
        unsigned ptr_count = 0;
        if (!parse_uint(f[pos], ptr_count)) ctx.fail("bad pointer count '" + std::string(f[pos]) + "'");
        ++pos;
        if (f.size() < pos + 4 * ptr_count) ctx.fail("truncated pointer list");
        if (b.find(cat, offset)) ctx.fail("duplicate synset offset " + std::string(f[0]));
        const SynsetId id = b.add_synset(cat, offset, std::move(words));
        for (unsigned p = 0; p < ptr_count; ++p, pos += 4) {
            const auto symbol = f[pos];
            if (symbol != "@" && symbol != "@i") continue;
            std::uint32_t target = 0;
            if (!parse_uint(f[pos + 1], target)) ctx.fail("bad pointer offset '" + std::string(f[pos + 1]) + "'");
            if (f[pos + 2].size() != 1) ctx.fail("bad pointer part of speech");
            auto target_cat = category_of_letter(f[pos + 2][0]);
            if (!target_cat) ctx.fail("bad pointer part of speech '" + std::string(f[pos + 2]) + "'");
            if (*target_cat != cat) ctx.fail("hypernym crosses categories");
            edges.push_back({id, cat, target, name, line.offset});
        }
    }
}

void parse_index_file(const std::filesystem::path& path, Category cat, SynsetGraph::Builder& b) {
    const std::string content = read_whole(path);
    const std::string name = path.string();
    for (const auto& line : lines_of(content)) {
        if (line.text.empty() || line.text.front() == ' ') continue;
        ParseContext ctx(name, line.offset);
        const auto f = fields_of(line.text);
        if (f.size() < 6) ctx.fail("truncated index record");
        unsigned synset_count = 0;
        unsigned ptr_count = 0;
        if (!parse_uint(f[2], synset_count)) ctx.fail("bad synset count");
        if (!parse_uint(f[3], ptr_count)) ctx.fail("bad pointer count");
        const std::size_t first = 4 + ptr_count + 2;
        if (f.size() < first + synset_count) ctx.fail("truncated offset list");
        for (unsigned s = 0; s < synset_count; ++s) {
            std::uint32_t offset = 0;
            if (!parse_uint(f[first + s], offset)) ctx.fail("bad synset offset");
            auto id = b.find(cat, offset);
            if (!id) ctx.fail("index refers to unknown synset " + std::string(f[first + s]));
            b.index_lemma(f[0], *id);
        }
    }
}

void parse_exception_file(const std::filesystem::path& path, Category cat, SynsetGraph::Builder& b) {
    const std::string content = read_whole(path);
    for (const auto& line : lines_of(content)) {
        const auto f = fields_of(line.text);
        if (f.empty()) continue;
        if (f.size() < 2) {
            throw ParseError(path.string(), "byte " + std::to_string(line.offset), "exception entry without base form");
        }
        std::vector<std::string> bases(f.begin() + 1, f.end());
        b.add_exception(cat, f[0], std::move(bases));
    }
}

}  // namespace

std::string_view to_string(Category c) {
    switch (c) {
        case Category::noun: return "noun";
        case Category::verb: return "verb";
        case Category::adjective: return "adjective";
        case Category::adverb: return "adverb";
    }
    return "?";
}

std::optional<Category> category_of_tag(std::string_view tag) {
    if (tag.starts_with("NN")) return Category::noun;
    if (tag.starts_with("VB")) return Category::verb;
    if (tag.starts_with("JJ")) return Category::adjective;
    if (tag.starts_with("RB")) return Category::adverb;
    return std::nullopt;
}

std::size_t SynsetGraph::size(Category c) const { return members_[index(c)].size(); }

std::optional<SynsetId> SynsetGraph::find(Category c, std::uint32_t offset) const {
    const auto& m = by_offset_[index(c)];
    auto it = m.find(offset);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

std::string SynsetGraph::key(SynsetId id) const {
    const auto& s = synset(id);
    static constexpr char letters[] = {'n', 'v', 'a', 'r'};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%c:%08u", letters[index(s.category)], s.offset);
    return buf;
}

std::span<const SynsetId> SynsetGraph::lookup(std::string_view lemma, Category c) const {
    const auto& m = index_[index(c)];
    auto it = m.find(normalize_lemma(lemma));
    if (it == m.end()) return {};
    return it->second;
}

std::span<const std::string> SynsetGraph::exceptions(std::string_view form, Category c) const {
    const auto& m = exceptions_[index(c)];
    auto it = m.find(normalize_lemma(form));
    if (it == m.end()) return {};
    return it->second;
}

SynsetId SynsetGraph::Builder::add_synset(Category c, std::uint32_t offset, std::vector<std::string> words) {
    const auto id = static_cast<SynsetId>(g_.synsets_.size());
    g_.synsets_.push_back(Synset{c, offset, std::move(words), {}, {}});
    g_.by_offset_[cat_index(c)].emplace(offset, id);
    return id;
}

void SynsetGraph::Builder::add_hypernym(SynsetId child, SynsetId parent) {
    auto& c = g_.synsets_.at(child);
    auto& p = g_.synsets_.at(parent);
    if (c.category != p.category) throw InvalidArgument("hypernym edge crosses categories");
    if (std::find(c.hypernyms.begin(), c.hypernyms.end(), parent) != c.hypernyms.end()) return;
    c.hypernyms.push_back(parent);
    p.hyponyms.push_back(child);
    ++g_.edge_count_;
}

void SynsetGraph::Builder::index_lemma(std::string_view lemma, SynsetId id) {
    const auto c = g_.synsets_.at(id).category;
    auto& ids = g_.index_[cat_index(c)][normalize_lemma(lemma)];
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
}

void SynsetGraph::Builder::add_exception(Category c, std::string_view form, std::vector<std::string> bases) {
    auto& list = g_.exceptions_[cat_index(c)][normalize_lemma(form)];
    for (auto& base : bases) {
        auto n = normalize_lemma(base);
        if (std::find(list.begin(), list.end(), n) == list.end()) list.push_back(std::move(n));
    }
}

std::optional<SynsetId> SynsetGraph::Builder::find(Category c, std::uint32_t offset) const {
    return g_.find(c, offset);
}

SynsetGraph SynsetGraph::Builder::build() && {
    g_.local_index_.assign(g_.synsets_.size(), 0);
    for (SynsetId id = 0; id < g_.synsets_.size(); ++id) {
        const auto& s = g_.synsets_[id];
        auto& members = g_.members_[cat_index(s.category)];
        g_.local_index_[id] = static_cast<std::uint32_t>(members.size());
        members.push_back(id);
        if (s.hypernyms.empty()) g_.roots_[cat_index(s.category)].push_back(id);
    }
    return std::move(g_);
}

SynsetGraph load_wordnet(const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path root(dir);
    if (!fs::is_directory(root)) throw ResourceError("wordnet directory not found: " + dir);
    std::vector<std::string> missing;
    for (auto c : kCategories) {
        for (auto prefix : {"index.", "data."}) {
            auto p = root / (std::string(prefix) + file_suffix(c));
            if (!fs::is_regular_file(p)) missing.push_back(p.filename().string());
        }
        auto e = root / (std::string(file_suffix(c)) + ".exc");
        if (!fs::is_regular_file(e)) missing.push_back(e.filename().string());
    }
    if (!missing.empty()) {
        std::string msg = "wordnet directory " + dir + " is missing:";
        for (const auto& m : missing) msg += " " + m;
        throw ResourceError(msg);
    }

    SynsetGraph::Builder b;
    std::vector<PendingEdge> edges;
    for (auto c : kCategories) parse_data_file(root / (std::string("data.") + file_suffix(c)), c, b, edges);
    for (const auto& e : edges) {
        auto parent = b.find(e.category, e.target);
        if (!parent) {
            throw ParseError(e.file, "byte " + std::to_string(e.byte),
                             "hypernym points to unknown synset " + std::to_string(e.target));
        }
        b.add_hypernym(e.child, *parent);
    }
    for (auto c : kCategories) parse_index_file(root / (std::string("index.") + file_suffix(c)), c, b);
    for (auto c : kCategories) parse_exception_file(root / (std::string(file_suffix(c)) + ".exc"), c, b);
    return std::move(b).build();
}

std::vector<std::string> morphy(std::string_view form, Category c, const SynsetGraph& graph) {
    const std::string w = normalize_lemma(form);
    std::vector<std::string> out;
    auto add = [&](std::string cand) {
        if (cand.empty() || !graph.in_index(cand, c)) return;
        if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(std::move(cand));
    };
    add(w);
    for (const auto& base : graph.exceptions(w, c)) add(base);
    for (const auto& rule : detachment_rules(c)) {
        if (w.size() > rule.suffix.size() && w.ends_with(rule.suffix)) {
            add(w.substr(0, w.size() - rule.suffix.size()) + std::string(rule.ending));
        }
    }
    return out;
}

std::vector<SynsetId> synsets_of(std::string_view lemma, Category c, const SynsetGraph& graph) {
    std::vector<SynsetId> out;
    for (const auto& base : morphy(lemma, c, graph)) {
        for (auto id : graph.lookup(base, c)) {
            if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
        }
    }
    return out;
}

namespace {

// Breadth-first search over one category with the virtual root as node N.
// Calls visit(local, distance) for every reached node in BFS order; stops when
// visit returns true.
template <typename Visit>
void bfs(const SynsetGraph& graph, Category c, std::span<const SynsetId> sources, Visit&& visit) {
    const auto members = graph.members(c);
    const std::size_t n = members.size();
    const std::uint32_t root = static_cast<std::uint32_t>(n);
    std::vector<std::uint8_t> seen(n + 1, 0);
    std::vector<std::uint32_t> frontier;
    std::vector<std::uint32_t> next;
    for (auto id : sources) {
        if (graph.synset(id).category != c) continue;
        auto local = graph.local_index(id);
        if (!seen[local]) {
            seen[local] = 1;
            frontier.push_back(local);
        }
    }
    int depth = 0;
    while (!frontier.empty()) {
        for (auto u : frontier) {
            if (u != root && visit(u, depth)) return;
        }
        next.clear();
        auto push = [&](std::uint32_t v) {
            if (!seen[v]) {
                seen[v] = 1;
                next.push_back(v);
            }
        };
        for (auto u : frontier) {
            if (u == root) {
                for (auto r : graph.roots(c)) push(graph.local_index(r));
                continue;
            }
            const auto& s = graph.synset(members[u]);
            for (auto h : s.hypernyms) push(graph.local_index(h));
            for (auto h : s.hyponyms) push(graph.local_index(h));
            if (s.hypernyms.empty()) push(root);
        }
        frontier.swap(next);
        ++depth;
    }
}

bool has_hierarchy(Category c) { return c == Category::noun || c == Category::verb; }

bool share_synset(std::span<const SynsetId> a, std::span<const SynsetId> b) {
    for (auto x : a) {
        if (std::find(b.begin(), b.end(), x) != b.end()) return true;
    }
    return false;
}

std::vector<Category> candidate_categories(std::string_view pos_a, std::string_view pos_b) {
    std::vector<Category> out;
    for (auto tag : {pos_a, pos_b}) {
        auto c = category_of_tag(tag);
        if (c && std::find(out.begin(), out.end(), *c) == out.end()) out.push_back(*c);
    }
    return out;
}

}  // namespace

std::optional<int> shortest_path_length(const SynsetGraph& graph, Category c, std::span<const SynsetId> from,
                                        std::span<const SynsetId> to) {
    std::vector<std::uint8_t> target(graph.members(c).size(), 0);
    bool any_target = false;
    for (auto id : to) {
        if (graph.synset(id).category != c) continue;
        target[graph.local_index(id)] = 1;
        any_target = true;
    }
    if (!any_target) return std::nullopt;
    if (!has_hierarchy(c)) {
        for (auto id : from) {
            if (graph.synset(id).category == c && target[graph.local_index(id)]) return 0;
        }
        return std::nullopt;
    }
    std::optional<int> found;
    bfs(graph, c, from, [&](std::uint32_t local, int depth) {
        if (target[local]) {
            found = depth;
            return true;
        }
        return false;
    });
    return found;
}

Similarity path_similarity(std::string_view lemma_a, std::string_view pos_a, std::string_view lemma_b,
                           std::string_view pos_b, const SynsetGraph& graph) {
    if (lemma_a == lemma_b) return {1.0};
    std::optional<double> best;
    for (auto c : candidate_categories(pos_a, pos_b)) {
        const auto sa = synsets_of(lemma_a, c, graph);
        const auto sb = synsets_of(lemma_b, c, graph);
        if (sa.empty() || sb.empty()) continue;
        auto d = shortest_path_length(graph, c, sa, sb);
        if (!d) continue;
        const double v = 1.0 / (1.0 + *d);
        if (!best || v > *best) best = v;
    }
    return {best};
}

PathSimilarity::PathSimilarity(const SynsetGraph& graph, std::size_t max_cached_lemmas)
    : graph_(graph), max_cached_(std::max<std::size_t>(1, max_cached_lemmas)) {}

const std::vector<SynsetId>& PathSimilarity::synsets(const std::string& lemma, Category c) {
    auto& cache = synset_cache_[cat_index(c)];
    auto it = cache.find(lemma);
    if (it != cache.end()) return it->second;
    return cache.emplace(lemma, synsets_of(lemma, c, graph_)).first->second;
}

const PathSimilarity::DistanceMap& PathSimilarity::distances(const std::string& lemma, Category c) {
    auto& lru = lru_[cat_index(c)];
    auto& index = lru_index_[cat_index(c)];
    if (auto it = index.find(lemma); it != index.end()) {
        lru.splice(lru.begin(), lru, it->second);
        return it->second->second;
    }
    DistanceMap map;
    map.distance.assign(graph_.members(c).size(), kUnreached);
    bfs(graph_, c, synsets(lemma, c), [&](std::uint32_t local, int depth) {
        map.distance[local] = static_cast<std::uint8_t>(std::min(depth, 254));
        return false;
    });
    lru.emplace_front(lemma, std::move(map));
    index[lemma] = lru.begin();
    if (lru.size() > max_cached_) {
        index.erase(lru.back().first);
        lru.pop_back();
    }
    return lru.front().second;
}

std::optional<double> PathSimilarity::category_similarity(const std::string& a, const std::string& b, Category c) {
    const auto& sa = synsets(a, c);
    const auto& sb = synsets(b, c);
    if (sa.empty() || sb.empty()) return std::nullopt;
    if (!has_hierarchy(c)) {
        if (share_synset(sa, sb)) return 1.0;
        return std::nullopt;
    }
    // Undirected distance is symmetric; key the cache on the smaller lemma.
    const bool swap = b < a;
    const auto& from = swap ? b : a;
    const auto& to_ids = swap ? sa : sb;
    const auto& map = distances(from, c);
    int best = kUnreached;
    for (auto id : to_ids) best = std::min<int>(best, map.distance[graph_.local_index(id)]);
    if (best == kUnreached) return std::nullopt;
    return 1.0 / (1.0 + best);
}

Similarity PathSimilarity::operator()(std::string_view lemma_a, std::string_view pos_a, std::string_view lemma_b,
                                      std::string_view pos_b) {
    if (lemma_a == lemma_b) return {1.0};
    const std::string a(lemma_a);
    const std::string b(lemma_b);
    std::optional<double> best;
    for (auto c : candidate_categories(pos_a, pos_b)) {
        auto v = category_similarity(a, b, c);
        if (v && (!best || *v > *best)) best = v;
    }
    return {best};
}

}  // namespace paracoh::wordnet
