#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paracoh::corpus {

enum class Label { human, machine };

std::string_view to_string(Label label);
// Accepts human/h/ht/original and machine/m/mt/translated, case-insensitive.
std::optional<Label> parse_label(std::string_view text);

struct LabeledParagraph {
    std::string id;
    std::string text;
    std::optional<Label> label;
    std::optional<std::string> language;

    bool operator==(const LabeledParagraph&) const = default;
};

struct Corpus {
    std::vector<LabeledParagraph> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    bool operator==(const Corpus&) const = default;
};

// Corpus files hold one record per line: id TAB text [TAB label [TAB language]].
// Inside text, backslash escapes \t, \n and \\ are decoded. Blank lines are
// skipped.
Corpus load_corpus(const std::string& path);
Corpus parse_corpus(std::string_view content, const std::string& source_name = "<memory>");
void save_corpus(const Corpus& corpus, const std::string& path);
std::string serialize_corpus(const Corpus& corpus);

struct FeatureRow {
    std::string id;
    std::optional<Label> label;
    std::vector<double> values;

    bool operator==(const FeatureRow&) const = default;
};

struct FeatureMatrix {
    std::vector<std::string> feature_names;
    std::vector<FeatureRow> rows;

    std::size_t num_features() const { return feature_names.size(); }
    // Throws InvalidArgument when a row is ragged or holds a non-finite value.
    void validate() const;
    // Copy restricted to the given columns, in the given order.
    FeatureMatrix select_columns(const std::vector<std::size_t>& columns) const;

    bool operator==(const FeatureMatrix&) const = default;
};

// Comma-separated, header "id,label,<names...>"; fields holding a comma,
// quote or newline are quoted RFC 4180 style. Values use the shortest
// representation that reads back to the same double.
void write_feature_matrix(const FeatureMatrix& matrix, const std::string& path);
std::string serialize_feature_matrix(const FeatureMatrix& matrix);
FeatureMatrix load_feature_matrix(const std::string& path);
FeatureMatrix parse_feature_matrix(std::string_view content,
                                   const std::string& source_name = "<memory>");

}  // namespace paracoh::corpus
