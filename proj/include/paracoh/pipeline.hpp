#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paracoh/corpus.hpp"
#include "paracoh/tagger.hpp"
#include "paracoh/text.hpp"
#include "paracoh/wordnet.hpp"

namespace paracoh::nlp {

struct Token {
    std::string surface;
    std::string pos;
    std::string lemma;

    bool operator==(const Token&) const = default;
};

struct Sentence {
    std::vector<Token> tokens;
    std::string raw;

    bool operator==(const Sentence&) const = default;
};

struct ProcessedParagraph {
    std::string id;
    std::vector<Sentence> sentences;
    std::optional<corpus::Label> label;
    std::string tag_set_id;

    bool operator==(const ProcessedParagraph&) const = default;
};

// Base form of a word: clitic table for 's/'re/'ve/n't..., then the WordNet
// morphological processor for the tag's category (index form, exception list,
// suffix detachment). Falls back to the lowercased surface.
std::string lemmatize(std::string_view surface, std::string_view pos, const wordnet::SynsetGraph& graph);

// split_sentences -> tokenize -> tag -> lemmatize.
ProcessedParagraph process_paragraph(const corpus::LabeledParagraph& paragraph, const TaggerModel& model,
                                     const wordnet::SynsetGraph& graph,
                                     const Abbreviations& abbreviations = Abbreviations::english());

}  // namespace paracoh::nlp
