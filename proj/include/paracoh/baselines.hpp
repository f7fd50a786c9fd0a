#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "paracoh/corpus.hpp"
#include "paracoh/pipeline.hpp"

namespace paracoh::baselines {

// Word counts sorted by descending count, ties by word.
class FrequencySpectrum {
public:
    FrequencySpectrum() = default;
    // Zero counts are dropped.
    explicit FrequencySpectrum(const std::map<std::string, std::size_t>& counts);

    // Lowercased surfaces of tokens holding at least one letter or digit.
    static FrequencySpectrum of(const nlp::ProcessedParagraph& paragraph);

    const std::vector<std::pair<std::string, std::size_t>>& ranked() const { return ranked_; }
    std::size_t total() const { return total_; }
    std::size_t types() const { return ranked_.size(); }
    std::size_t count(const std::string& word) const;

private:
    std::vector<std::pair<std::string, std::size_t>> ranked_;
    std::map<std::string, std::size_t> counts_;
    std::size_t total_ = 0;
};

struct ZipfFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    double r_squared = 1.0;  // 1 when log counts do not vary
};

// Least-squares line through (log rank, log count). Needs two word types.
ZipfFit fit_zipf(const FrequencySpectrum& spectrum);
std::vector<double> zipf_features(const nlp::ProcessedParagraph& paragraph);
const std::vector<std::string>& zipf_feature_names();

// POS n-grams where function words keep their lowercased form. Sentences
// shorter than n contribute one shorter gram so every non-empty paragraph has
// at least one item.
std::vector<std::string> hybrid_ngrams(const nlp::ProcessedParagraph& paragraph, std::size_t n,
                                       const std::unordered_set<std::string>& function_words);

class PosNgramVocabulary {
public:
    static constexpr const char* kOutOfVocabulary = "<OOV>";

    // Vocabulary = every gram seen in the training paragraphs, sorted.
    static PosNgramVocabulary fit(const std::vector<nlp::ProcessedParagraph>& training, std::size_t n,
                                  std::unordered_set<std::string> function_words);

    std::size_t n() const { return n_; }
    // Gram names followed by the out-of-vocabulary bucket.
    std::vector<std::string> feature_names() const;
    // Relative frequencies; sums to 1. Throws on an empty paragraph.
    std::vector<double> features(const nlp::ProcessedParagraph& paragraph) const;

private:
    std::size_t n_ = 2;
    std::unordered_set<std::string> function_words_;
    std::vector<std::string> grams_;
};

std::vector<double> pos_ngram_features(const nlp::ProcessedParagraph& paragraph, const PosNgramVocabulary& vocabulary);

// Labbe inter-textual distance, computed with the smaller text first.
double intertextual_distance(const FrequencySpectrum& a, const FrequencySpectrum& b);

// Label of the closest training spectrum; first occurrence wins ties.
corpus::Label nearest_neighbor_classify(const FrequencySpectrum& candidate,
                                        const std::vector<std::pair<FrequencySpectrum, corpus::Label>>& training);

}  // namespace paracoh::baselines
