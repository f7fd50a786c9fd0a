#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paracoh/tagset.hpp"

namespace paracoh::nlp {

struct TaggedToken {
    std::string surface;
    std::string tag;

    bool operator==(const TaggedToken&) const = default;
};
using TaggedSentence = std::vector<TaggedToken>;

// One "surface<TAB>tag" per line, blank line between sentences. Lines without
// a tab that start with '#' are comments.
std::vector<TaggedSentence> read_tagged_corpus(const std::string& path);
std::vector<TaggedSentence> parse_tagged_corpus(std::string_view content,
                                                const std::string& source_name = "<memory>");

// Averaged perceptron POS model. Immutable after training or loading.
struct TaggerModel {
    std::vector<std::string> tags;  // the configured tag set, in order
    std::string tag_set_id;
    // feature -> (tag index, weight), tag indices ascending, zero weights dropped
    std::map<std::string, std::vector<std::pair<std::uint16_t, double>>> weights;
    // Tag indices ordered by training frequency, most frequent first. Used to
    // break score ties.
    std::vector<std::uint16_t> tag_rank;

    int iterations = 0;
    std::uint64_t seed = 0;
    std::size_t training_sentences = 0;
    std::size_t heldout_sentences = 0;
    double heldout_accuracy = 0.0;  // NaN when there was nothing to hold out

    const std::string& most_frequent_tag() const { return tags.at(tag_rank.at(0)); }
    bool operator==(const TaggerModel&) const = default;
};

// Trains on `corpus` for `iterations` passes with seed-controlled shuffling.
// Before the final fit, a tenth of the sentences (at least one) is held out to
// measure accuracy; the returned model is trained on everything.
TaggerModel train_tagger(const std::vector<TaggedSentence>& corpus, const TagSet& tag_set, int iterations,
                         std::uint64_t seed);

// Greedy left-to-right decoding. Returns one tag per token.
std::vector<std::string> tag(std::span<const std::string> tokens, const TaggerModel& model);

// Fraction of tokens whose predicted tag equals the gold tag.
double tagging_accuracy(const std::vector<TaggedSentence>& corpus, const TaggerModel& model);

void save_tagger(const TaggerModel& model, const std::string& path);
TaggerModel load_tagger(const std::string& path);

}  // namespace paracoh::nlp
