#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "paracoh/config.hpp"
#include "paracoh/pipeline.hpp"
#include "paracoh/tagset.hpp"
#include "paracoh/wordnet.hpp"

namespace paracoh::coherence {

// Unordered POS pair, stored with first <= second.
class PosPair {
public:
    PosPair(std::string a, std::string b);

    const std::string& first() const { return first_; }
    const std::string& second() const { return second_; }
    // Feature name, "FIRST-SECOND".
    std::string name() const { return first_ + "-" + second_; }

    auto operator<=>(const PosPair&) const = default;

private:
    std::string first_;
    std::string second_;
};

// All T(T+1)/2 canonical pairs of the tag set, self-pairs included, sorted
// lexicographically by (first, second).
std::vector<PosPair> all_pos_pairs(const TagSet& tag_set);
std::vector<std::string> feature_names(const TagSet& tag_set);
// Inverse of PosPair::name for a given tag set; handles tags containing '-'.
std::optional<PosPair> parse_pos_pair(std::string_view name, const TagSet& tag_set);

struct CoherenceConfig {
    double penalty_exponent = 3.0;
    double match_threshold = 0.0;  // tau: pairs with similarity <= tau are not matches
    std::string tag_set_path;

    // Reads tag_set_path, penalty_exponent, match_threshold; other keys are
    // ignored. Throws InvalidArgument for out-of-range values.
    static CoherenceConfig from(const KeyValueConfig& kv, CoherenceConfig defaults);
    static CoherenceConfig from(const KeyValueConfig& kv);
    void validate() const;
};

enum class Side { left, right };

// Tokens tagged pair.first (left side) or pair.second (right side), in order.
std::vector<nlp::Token> filter_by_pos(const nlp::Sentence& sentence, const PosPair& pair, Side side);

struct MatchedPair {
    std::size_t left;   // index into MatchResult::left_kept
    std::size_t right;  // index into MatchResult::right_kept
    double similarity;

    bool operator==(const MatchedPair&) const = default;
};

struct MatchResult {
    std::vector<nlp::Token> left_kept;
    std::vector<nlp::Token> right_kept;
    std::vector<MatchedPair> pairs;  // sorted by left index

    std::size_t n() const { return pairs.size(); }
    std::size_t unmatched_left() const { return left_kept.size() - pairs.size(); }
    std::size_t unmatched_right() const { return right_kept.size() - pairs.size(); }
};

using SimilarityFn = std::function<wordnet::Similarity(const nlp::Token&, const nlp::Token&)>;

// One-to-one matching that maximizes total similarity. Undefined
// similarities enter the assignment as a sentinel below any achievable total,
// so the assignment first maximizes the number of defined pairs. Assigned
// pairs that are undefined or <= threshold are dropped. `similarity` must be
// symmetric; the assignment problem is oriented canonically so that swapping
// the operands yields the mirrored result.
MatchResult match_tokens(const std::vector<nlp::Token>& left, const std::vector<nlp::Token>& right,
                         const SimilarityFn& similarity, double threshold);
MatchResult match_words(const std::vector<nlp::Token>& left, const std::vector<nlp::Token>& right,
                        wordnet::PathSimilarity& similarity, double threshold);
MatchResult match_words(const std::vector<nlp::Token>& left, const std::vector<nlp::Token>& right,
                        const wordnet::SynsetGraph& graph, double threshold);

// Mean similarity of the matched pairs; 0 when nothing matched.
double pos_mat_raw(const MatchResult& m);
// 0.5 * (|unmatched_left - unmatched_right| / max(|left_kept|, |right_kept|))^exponent.
// Throws InvalidArgument when both kept lists are empty.
double penalty(const MatchResult& m, double exponent = 3.0);
// pos_mat_raw * (1 - penalty); 0 when nothing matched.
double pos_mat(const MatchResult& m, double exponent = 3.0);

// Mean pos_mat over the m(m-1)/2 sentence pairs (earlier sentence on the left
// side); max(1, ...) in the denominator makes one-sentence paragraphs 0.
double para_coh(const nlp::ProcessedParagraph& p, const PosPair& pair, wordnet::PathSimilarity& similarity,
                const CoherenceConfig& config);
double para_coh(const nlp::ProcessedParagraph& p, const PosPair& pair, const wordnet::SynsetGraph& graph,
                const CoherenceConfig& config);

struct CoherenceVector {
    std::string paragraph_id;
    std::string tag_set_id;
    std::vector<PosPair> pairs;  // all_pos_pairs(tag set)
    std::vector<double> values;  // values[i] = para_coh for pairs[i]
};

// One para_coh per canonical pair. Throws InvalidArgument when the paragraph
// was tagged under another tag set or carries a tag outside it.
CoherenceVector extract_features(const nlp::ProcessedParagraph& p, const TagSet& tag_set,
                                 wordnet::PathSimilarity& similarity, const CoherenceConfig& config);
CoherenceVector extract_features(const nlp::ProcessedParagraph& p, const TagSet& tag_set,
                                 const wordnet::SynsetGraph& graph, const CoherenceConfig& config);

}  // namespace paracoh::coherence
