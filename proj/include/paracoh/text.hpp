#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace paracoh::nlp {

// Lowercased abbreviations written with their final period ("dr.", "e.g.").
class Abbreviations {
public:
    Abbreviations() = default;
    explicit Abbreviations(std::vector<std::string> words);

    // Built-in English list, the same content as data/abbreviations.txt.
    static const Abbreviations& english();
    static Abbreviations load(const std::string& path);

    // True for listed words, single-letter initials ("J.") and dotted
    // acronyms ("U.S.A.").
    bool matches(std::string_view word) const;

private:
    std::unordered_set<std::string> words_;
};

// Splits a paragraph at . ! ? (optionally followed by closing quotes or
// brackets) that end a whitespace-delimited chunk. Abbreviations, initials,
// ellipses and a period followed by a lowercase word do not end a sentence.
// Returned sentences are trimmed substrings of `text`. Throws InvalidArgument
// on blank input.
std::vector<std::string> split_sentences(std::string_view text,
                                         const Abbreviations& abbreviations = Abbreviations::english());

// Penn Treebank style tokenization of one sentence: whitespace split, then
// leading and trailing punctuation, quotes and brackets become separate
// tokens, and clitics are split off ("it's" -> "it" "'s", "don't" -> "do" "n't").
// A trailing period stays attached to abbreviations except at sentence end.
std::vector<std::string> tokenize(std::string_view sentence,
                                  const Abbreviations& abbreviations = Abbreviations::english());

}  // namespace paracoh::nlp
