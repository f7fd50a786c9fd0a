#include "paracoh/pipeline.hpp"

#include "paracoh/strings.hpp"

namespace paracoh::nlp {

namespace {

// Clitics whose base form depends on the tag rather than on WordNet.
std::optional<std::string> clitic_lemma(const std::string& lower, std::string_view pos) {
    std::string w = lower;
    // Fold the typographic apostrophe to ASCII.
    if (auto p = w.find("\xE2\x80\x99"); p != std::string::npos) w.replace(p, 3, "'");
    if (w == "n't") return "not";
    if (w == "'m" || w == "'re") return "be";
    if (w == "'ve") return "have";
    if (w == "'ll") return "will";
    if (w == "'s" && pos.starts_with("VB")) return pos == "VBZ" ? "be" : "have";
    if (w == "'d") return pos == "MD" ? "would" : "have";
    if (pos == "MD" && w == "ca") return "can";
    if (pos == "MD" && w == "wo") return "will";
    return std::nullopt;
}

}  // namespace

std::string lemmatize(std::string_view surface, std::string_view pos, const wordnet::SynsetGraph& graph) {
    const std::string lower = to_lower(surface);
    if (auto c = clitic_lemma(lower, pos)) return *c;
    const auto category = wordnet::category_of_tag(pos);
    if (!category) return lower;
    const auto bases = wordnet::morphy(lower, *category, graph);
    if (!bases.empty()) return bases.front();
    return lower;
}

ProcessedParagraph process_paragraph(const corpus::LabeledParagraph& paragraph, const TaggerModel& model,
                                     const wordnet::SynsetGraph& graph, const Abbreviations& abbreviations) {
    ProcessedParagraph out;
    out.id = paragraph.id;
    out.label = paragraph.label;
    out.tag_set_id = model.tag_set_id;
    for (auto& raw : split_sentences(paragraph.text, abbreviations)) {
        const auto words = tokenize(raw, abbreviations);
        if (words.empty()) continue;
        const auto tags = tag(words, model);
        Sentence s;
        s.raw = std::move(raw);
        s.tokens.reserve(words.size());
        for (std::size_t i = 0; i < words.size(); ++i) {
            s.tokens.push_back({words[i], tags[i], lemmatize(words[i], tags[i], graph)});
        }
        out.sentences.push_back(std::move(s));
    }
    return out;
}

}  // namespace paracoh::nlp
