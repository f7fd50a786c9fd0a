#include "paracoh/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "paracoh/error.hpp"
#include "paracoh/hungarian.hpp"

namespace paracoh::coherence {

PosPair::PosPair(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    first_ = std::move(a);
    second_ = std::move(b);
}

std::vector<PosPair> all_pos_pairs(const TagSet& tag_set) {
    std::vector<std::string> tags = tag_set.tags();
    std::sort(tags.begin(), tags.end());
    std::vector<PosPair> out;
    out.reserve(tags.size() * (tags.size() + 1) / 2);
    for (std::size_t i = 0; i < tags.size(); ++i) {
        for (std::size_t j = i; j < tags.size(); ++j) out.emplace_back(tags[i], tags[j]);
    }
    return out;
}

std::vector<std::string> feature_names(const TagSet& tag_set) {
    std::vector<std::string> out;
    for (const auto& p : all_pos_pairs(tag_set)) out.push_back(p.name());
    return out;
}

std::optional<PosPair> parse_pos_pair(std::string_view name, const TagSet& tag_set) {
    for (std::size_t pos = name.find('-'); pos != std::string_view::npos; pos = name.find('-', pos + 1)) {
        const auto a = name.substr(0, pos);
        const auto b = name.substr(pos + 1);
        if (tag_set.contains(a) && tag_set.contains(b) && a <= b) return PosPair(std::string(a), std::string(b));
    }
    return std::nullopt;
}

void CoherenceConfig::validate() const {
    if (!(penalty_exponent > 0.0) || !std::isfinite(penalty_exponent)) {
        throw InvalidArgument("penalty_exponent must be a positive number");
    }
    if (!(match_threshold >= 0.0 && match_threshold < 1.0)) {
        throw InvalidArgument("match_threshold must lie in [0, 1)");
    }
}

CoherenceConfig CoherenceConfig::from(const KeyValueConfig& kv) { return from(kv, CoherenceConfig{}); }

CoherenceConfig CoherenceConfig::from(const KeyValueConfig& kv, CoherenceConfig defaults) {
    CoherenceConfig c = std::move(defaults);
    if (auto v = kv.get_double("penalty_exponent")) c.penalty_exponent = *v;
    if (auto v = kv.get_double("match_threshold")) c.match_threshold = *v;
    if (auto v = kv.get("tag_set_path")) c.tag_set_path = *v;
    c.validate();
    return c;
}

std::vector<nlp::Token> filter_by_pos(const nlp::Sentence& sentence, const PosPair& pair, Side side) {
    const auto& want = side == Side::left ? pair.first() : pair.second();
    std::vector<nlp::Token> out;
    for (const auto& t : sentence.tokens) {
        if (t.pos == want) out.push_back(t);
    }
    return out;
}

namespace {

bool token_less(const std::vector<nlp::Token>& a, const std::vector<nlp::Token>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto ka = std::tie(a[i].lemma, a[i].pos, a[i].surface);
        const auto kb = std::tie(b[i].lemma, b[i].pos, b[i].surface);
        if (ka != kb) return ka < kb;
    }
    return false;
}

}  // namespace

MatchResult match_tokens(const std::vector<nlp::Token>& left, const std::vector<nlp::Token>& right,
                         const SimilarityFn& similarity, double threshold) {
    MatchResult result;
    result.left_kept = left;
    result.right_kept = right;
    if (left.empty() || right.empty()) return result;

    // Orient so that swapping the operands poses the identical problem.
    const bool swapped = token_less(right, left);
    const auto& rows = swapped ? right : left;
    const auto& cols = swapped ? left : right;

    // Below any achievable total of defined similarities (each at most 1).
    const double sentinel = -static_cast<double>(std::min(rows.size(), cols.size()) + 1);
    ValueMatrix values(rows.size(), cols.size());
    std::vector<wordnet::Similarity> sims(rows.size() * cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            auto s = similarity(rows[r], cols[c]);
            values(r, c) = s.defined() ? *s.value : sentinel;
            sims[r * cols.size() + c] = s;
        }
    }
    for (const auto& a : assign_hungarian(values, true)) {
        const auto& s = sims[a.row * cols.size() + a.col];
        if (!s.defined() || *s.value <= threshold) continue;
        if (swapped) {
            result.pairs.push_back({a.col, a.row, *s.value});
        } else {
            result.pairs.push_back({a.row, a.col, *s.value});
        }
    }
    std::sort(result.pairs.begin(), result.pairs.end(),
              [](const MatchedPair& x, const MatchedPair& y) { return x.left < y.left; });
    return result;
}

MatchResult match_words(const std::vector<nlp::Token>& left, const std::vector<nlp::Token>& right,
                        wordnet::PathSimilarity& similarity, double threshold) {
    return match_tokens(
        left, right,
        [&](const nlp::Token& a, const nlp::Token& b) { return similarity(a.lemma, a.pos, b.lemma, b.pos); },
        threshold);
}

MatchResult match_words(const std::vector<nlp::Token>& left, const std::vector<nlp::Token>& right,
                        const wordnet::SynsetGraph& graph, double threshold) {
    wordnet::PathSimilarity similarity(graph);
    return match_words(left, right, similarity, threshold);
}

double pos_mat_raw(const MatchResult& m) {
    if (m.pairs.empty()) return 0.0;
    // Summing in sorted order keeps the value independent of pair order.
    std::vector<double> values;
    values.reserve(m.pairs.size());
    for (const auto& p : m.pairs) values.push_back(p.similarity);
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double penalty(const MatchResult& m, double exponent) {
    const std::size_t longest = std::max(m.left_kept.size(), m.right_kept.size());
    if (longest == 0) throw InvalidArgument("penalty is undefined when both kept lists are empty");
    const auto ul = static_cast<double>(m.unmatched_left());
    const auto ur = static_cast<double>(m.unmatched_right());
    const double ratio = std::abs(ul - ur) / static_cast<double>(longest);
    return 0.5 * std::pow(ratio, exponent);
}

double pos_mat(const MatchResult& m, double exponent) {
    if (m.pairs.empty()) return 0.0;
    return pos_mat_raw(m) * (1.0 - penalty(m, exponent));
}

namespace {

// Tokens of each sentence grouped by tag.
using TagGroups = std::vector<std::unordered_map<std::string, std::vector<nlp::Token>>>;

TagGroups group_by_tag(const nlp::ProcessedParagraph& p) {
    TagGroups groups(p.sentences.size());
    for (std::size_t s = 0; s < p.sentences.size(); ++s) {
        for (const auto& t : p.sentences[s].tokens) groups[s][t.pos].push_back(t);
    }
    return groups;
}

double para_coh_grouped(const TagGroups& groups, const PosPair& pair, wordnet::PathSimilarity& similarity,
                        const CoherenceConfig& config) {
    const std::size_t m = groups.size();
    const double pairs = m < 2 ? 0.0 : static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
    const double denominator = std::max(1.0, pairs);
    static const std::vector<nlp::Token> none;
    auto get = [&](std::size_t s, const std::string& tag) -> const std::vector<nlp::Token>& {
        auto it = groups[s].find(tag);
        return it == groups[s].end() ? none : it->second;
    };
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& left = get(i, pair.first());
        if (left.empty()) continue;
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto& right = get(j, pair.second());
            if (right.empty()) continue;
            sum += pos_mat(match_words(left, right, similarity, config.match_threshold), config.penalty_exponent);
        }
    }
    return sum / denominator;
}

}  // namespace

double para_coh(const nlp::ProcessedParagraph& p, const PosPair& pair, wordnet::PathSimilarity& similarity,
                const CoherenceConfig& config) {
    return para_coh_grouped(group_by_tag(p), pair, similarity, config);
}

double para_coh(const nlp::ProcessedParagraph& p, const PosPair& pair, const wordnet::SynsetGraph& graph,
                const CoherenceConfig& config) {
    wordnet::PathSimilarity similarity(graph);
    return para_coh(p, pair, similarity, config);
}

CoherenceVector extract_features(const nlp::ProcessedParagraph& p, const TagSet& tag_set,
                                 wordnet::PathSimilarity& similarity, const CoherenceConfig& config) {
    if (!p.tag_set_id.empty() && p.tag_set_id != tag_set.id()) {
        throw InvalidArgument("paragraph '" + p.id + "' was tagged with tag set " + p.tag_set_id +
                              ", features requested for " + tag_set.id());
    }
    for (const auto& s : p.sentences) {
        for (const auto& t : s.tokens) {
            if (t.pos != kOtherTag && !tag_set.contains(t.pos)) {
                throw InvalidArgument("paragraph '" + p.id + "' holds tag '" + t.pos + "' outside tag set " +
                                      tag_set.id());
            }
        }
    }
    CoherenceVector v;
    v.paragraph_id = p.id;
    v.tag_set_id = tag_set.id();
    v.pairs = all_pos_pairs(tag_set);
    v.values.reserve(v.pairs.size());
    const auto groups = group_by_tag(p);
    for (const auto& pair : v.pairs) v.values.push_back(para_coh_grouped(groups, pair, similarity, config));
    return v;
}

CoherenceVector extract_features(const nlp::ProcessedParagraph& p, const TagSet& tag_set,
                                 const wordnet::SynsetGraph& graph, const CoherenceConfig& config) {
    wordnet::PathSimilarity similarity(graph);
    return extract_features(p, tag_set, similarity, config);
}

}  // namespace paracoh::coherence
