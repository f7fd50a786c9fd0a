#include "paracoh/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "paracoh/error.hpp"
#include "paracoh/strings.hpp"

namespace paracoh::nlp {

namespace {

constexpr std::array<std::string_view, 79> kEnglishAbbreviations = {
    "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "mt.", "rev.",
    "gen.", "col.", "lt.", "sgt.", "capt.", "cmdr.", "gov.", "sen.", "rep.", "pres.",
    "hon.", "messrs.", "mme.", "mlle.", "fr.", "e.g.", "i.e.", "etc.", "vs.", "cf.",
    "approx.", "viz.", "inc.", "ltd.", "co.", "corp.", "bros.", "dept.", "univ.", "assn.",
    "vol.", "vols.", "pp.", "p.", "fig.", "figs.", "eq.", "eqs.", "jan.", "feb.",
    "apr.", "jun.", "jul.", "aug.", "sep.", "sept.", "oct.", "nov.", "dec.", "mon.",
    "tue.", "tues.", "thu.", "thur.", "thurs.", "fri.", "a.m.", "p.m.", "u.s.", "u.k.",
    "u.n.", "ave.", "blvd.", "rd.", "hwy.", "lb.", "lbs.", "oz.", "misc.",
};

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// Closing characters that may follow a terminator: ASCII quotes/brackets and
// the UTF-8 right quotes (U+2019, U+201D).
std::size_t closing_suffix_length(std::string_view s) {
    std::size_t n = 0;
    while (n < s.size()) {
        auto rest = s.substr(0, s.size() - n);
        char c = rest.back();
        if (c == '"' || c == '\'' || c == ')' || c == ']' || c == '}') {
            ++n;
            continue;
        }
        if (rest.ends_with("\xE2\x80\x99") || rest.ends_with("\xE2\x80\x9D")) {
            n += 3;
            continue;
        }
        break;
    }
    return n;
}

std::string_view strip_leading_openers(std::string_view s) {
    while (!s.empty()) {
        char c = s.front();
        if (c == '"' || c == '\'' || c == '(' || c == '[' || c == '{' || c == '`') {
            s.remove_prefix(1);
        } else if (s.starts_with("\xE2\x80\x9C") || s.starts_with("\xE2\x80\x98")) {
            s.remove_prefix(3);
        } else {
            break;
        }
    }
    return s;
}

bool starts_lowercase(std::string_view chunk) {
    chunk = strip_leading_openers(chunk);
    return !chunk.empty() && std::islower(static_cast<unsigned char>(chunk.front()));
}

struct Chunk {
    std::size_t begin;
    std::size_t end;
};

std::vector<Chunk> chunks_of(std::string_view text) {
    std::vector<Chunk> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        out.push_back({i, j});
        i = j;
    }
    return out;
}

// True when the chunk ends a sentence given the chunk that follows it.
bool ends_sentence(std::string_view chunk, std::string_view next, const Abbreviations& abbreviations) {
    const auto core = chunk.substr(0, chunk.size() - closing_suffix_length(chunk));
    if (core.empty() || !is_terminator(core.back())) return false;
    if (core.ends_with("..")) return false;
    if (core.back() != '.') return true;
    if (abbreviations.matches(strip_leading_openers(core))) return false;
    if (starts_lowercase(next)) return false;
    return true;
}

// Clitic suffixes split off the end of a word, longest first.
constexpr std::array<std::string_view, 14> kClitics = {
    "n't", "n\xE2\x80\x99t", "'ll", "\xE2\x80\x99ll", "'re", "\xE2\x80\x99re", "'ve", "\xE2\x80\x99ve",
    "'s",  "\xE2\x80\x99s",  "'m",  "\xE2\x80\x99m",  "'d",  "\xE2\x80\x99" "d",
};

bool is_clitic(std::string_view s) {
    const std::string lower = to_lower(s);
    return std::find(kClitics.begin(), kClitics.end(), lower) != kClitics.end();
}

void split_clitic(std::string_view word, std::vector<std::string>& out) {
    const std::string lower = to_lower(word);
    for (auto clitic : kClitics) {
        if (lower.size() > clitic.size() && lower.ends_with(clitic)) {
            const auto stem = word.substr(0, word.size() - clitic.size());
            // "n't" needs a stem ending in a letter ("don't" -> "do"); the
            // others need any letter ("it's" -> "it").
            if (!stem.empty() && std::isalpha(static_cast<unsigned char>(stem.back()))) {
                out.emplace_back(stem);
                out.emplace_back(word.substr(word.size() - clitic.size()));
                return;
            }
        }
    }
    out.emplace_back(word);
}

void tokenize_chunk(std::string_view chunk, bool last_chunk, const Abbreviations& abbreviations,
                    std::vector<std::string>& out) {
    // Leading openers.
    while (!chunk.empty()) {
        char c = chunk.front();
        if (c == '(' || c == '[' || c == '{' || c == '"') {
            out.emplace_back(1, c);
            chunk.remove_prefix(1);
        } else if (c == '$' && chunk.size() > 1 && std::isdigit(static_cast<unsigned char>(chunk[1]))) {
            out.emplace_back("$");
            chunk.remove_prefix(1);
        } else if (chunk.starts_with("``")) {
            out.emplace_back("``");
            chunk.remove_prefix(2);
        } else if (chunk.starts_with("\xE2\x80\x9C") || chunk.starts_with("\xE2\x80\x98")) {
            out.emplace_back(chunk.substr(0, 3));
            chunk.remove_prefix(3);
        } else if (c == '\'' && chunk.size() > 1 && !is_clitic(chunk) &&
                   std::isalpha(static_cast<unsigned char>(chunk[1]))) {
            out.emplace_back("'");
            chunk.remove_prefix(1);
        } else {
            break;
        }
    }

    // Trailing punctuation, collected in reverse.
    std::vector<std::string> tail;
    while (!chunk.empty()) {
        if (chunk.size() > 3 && chunk.ends_with("...")) {
            tail.emplace_back("...");
            chunk.remove_suffix(3);
            continue;
        }
        if (chunk.size() > 3 && (chunk.ends_with("\xE2\x80\x9D") || chunk.ends_with("\xE2\x80\x99"))) {
            tail.emplace_back(chunk.substr(chunk.size() - 3));
            chunk.remove_suffix(3);
            continue;
        }
        char c = chunk.back();
        if (chunk.size() == 1) break;
        if (c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == ')' || c == ']' || c == '}' || c == '"') {
            tail.emplace_back(1, c);
            chunk.remove_suffix(1);
            continue;
        }
        if (c == '\'') {
            if (chunk.ends_with("''")) {
                tail.emplace_back("''");
                chunk.remove_suffix(2);
                continue;
            }
            tail.emplace_back("'");
            chunk.remove_suffix(1);
            continue;
        }
        if (c == '.') {
            if (abbreviations.matches(chunk)) {
                // A sentence-final abbreviation keeps its period and the
                // sentence still gets a period token.
                if (last_chunk && tail.empty()) {
                    out.emplace_back(chunk);
                    out.emplace_back(".");
                    chunk = {};
                }
                break;
            }
            tail.emplace_back(".");
            chunk.remove_suffix(1);
            continue;
        }
        break;
    }

    if (!chunk.empty()) split_clitic(chunk, out);
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) out.push_back(std::move(*it));
}

}  // namespace

Abbreviations::Abbreviations(std::vector<std::string> words) {
    for (auto& w : words) {
        auto lower = to_lower(trim(w));
        if (lower.empty()) continue;
        if (lower.back() != '.') lower.push_back('.');
        words_.insert(std::move(lower));
    }
}

const Abbreviations& Abbreviations::english() {
    static const Abbreviations instance = [] {
        std::vector<std::string> words(kEnglishAbbreviations.begin(), kEnglishAbbreviations.end());
        return Abbreviations(std::move(words));
    }();
    return instance;
}

Abbreviations Abbreviations::load(const std::string& path) { return Abbreviations(read_word_list(path)); }

bool Abbreviations::matches(std::string_view word) const {
    if (word.size() < 2 || word.back() != '.') return false;
    if (words_.contains(to_lower(word))) return true;
    // Initial: "J."
    if (word.size() == 2 && std::isalpha(static_cast<unsigned char>(word[0]))) return true;
    // Dotted acronym: "U.S.A."
    if (word.size() >= 4) {
        bool dotted = true;
        for (std::size_t i = 0; i < word.size(); ++i) {
            const bool want_letter = i % 2 == 0;
            const char c = word[i];
            if (want_letter ? !std::isalpha(static_cast<unsigned char>(c)) : c != '.') {
                dotted = false;
                break;
            }
        }
        if (dotted && word.size() % 2 == 0) return true;
    }
    return false;
}

std::vector<std::string> split_sentences(std::string_view text, const Abbreviations& abbreviations) {
    if (is_blank(text)) throw InvalidArgument("cannot split blank text into sentences");
    const auto chunks = chunks_of(text);
    std::vector<std::string> sentences;
    std::size_t start = chunks.front().begin;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        const auto chunk = text.substr(chunks[i].begin, chunks[i].end - chunks[i].begin);
        const bool last = i + 1 == chunks.size();
        if (last) {
            sentences.emplace_back(text.substr(start, chunks[i].end - start));
            break;
        }
        const auto next = text.substr(chunks[i + 1].begin, chunks[i + 1].end - chunks[i + 1].begin);
        if (ends_sentence(chunk, next, abbreviations)) {
            sentences.emplace_back(text.substr(start, chunks[i].end - start));
            start = chunks[i + 1].begin;
        }
    }
    return sentences;
}

std::vector<std::string> tokenize(std::string_view sentence, const Abbreviations& abbreviations) {
    std::vector<std::string> out;
    const auto chunks = chunks_of(sentence);
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        const auto chunk = sentence.substr(chunks[i].begin, chunks[i].end - chunks[i].begin);
        tokenize_chunk(chunk, i + 1 == chunks.size(), abbreviations, out);
    }
    return out;
}

}  // namespace paracoh::nlp
