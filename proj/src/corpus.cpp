#include "paracoh/corpus.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "paracoh/error.hpp"
#include "paracoh/strings.hpp"

namespace paracoh::corpus {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write file: " + path);
    out << content;
    out.flush();
    if (!out) throw ResourceError("write failed: " + path);
}

std::vector<std::string_view> split_lines(std::string_view content) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < content.size()) {
        auto pos = content.find('\n', start);
        if (pos == std::string_view::npos) pos = content.size();
        auto line = content.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = pos + 1;
    }
    return lines;
}

std::string unescape_text(std::string_view s, const std::string& file, std::size_t line_no) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out.push_back(s[i]);
            continue;
        }
        if (i + 1 == s.size()) {
            throw ParseError(file, "line " + std::to_string(line_no), "dangling backslash in text");
        }
        switch (s[++i]) {
            case 't': out.push_back('\t'); break;
            case 'n': out.push_back('\n'); break;
            case '\\': out.push_back('\\'); break;
            default: out.push_back('\\'); out.push_back(s[i]); break;
        }
    }
    return out;
}

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\\': out += "\\\\"; break;
            default: out.push_back(c); break;
        }
    }
    return out;
}

bool needs_quotes(std::string_view s) {
    return s.find_first_of(",\"\n\r") != std::string_view::npos;
}

std::string csv_field(std::string_view s) {
    if (!needs_quotes(s)) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

// Splits CSV content into records of fields. Quoted fields may span lines.
// Each record remembers the 1-based line it starts on.
struct CsvRecord {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

std::vector<CsvRecord> parse_csv(std::string_view content, const std::string& file) {
    std::vector<CsvRecord> records;
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < content.size()) {
        CsvRecord rec;
        rec.line = line;
        std::string field;
        bool done = false;
        while (!done) {
            if (i < content.size() && content[i] == '"') {
                ++i;
                while (true) {
                    if (i >= content.size()) {
                        throw ParseError(file, "line " + std::to_string(rec.line), "unterminated quoted field");
                    }
                    char c = content[i++];
                    if (c == '"') {
                        if (i < content.size() && content[i] == '"') {
                            field.push_back('"');
                            ++i;
                        } else {
                            break;
                        }
                    } else {
                        if (c == '\n') ++line;
                        field.push_back(c);
                    }
                }
            }
            while (i < content.size() && content[i] != ',' && content[i] != '\n') {
                if (content[i] != '\r') field.push_back(content[i]);
                ++i;
            }
            rec.fields.push_back(std::move(field));
            field.clear();
            if (i >= content.size()) {
                done = true;
            } else if (content[i] == ',') {
                ++i;
            } else {
                ++i;
                ++line;
                done = true;
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace

std::string_view to_string(Label label) {
    return label == Label::human ? "human" : "machine";
}

std::optional<Label> parse_label(std::string_view text) {
    const std::string t = to_lower(trim(text));
    if (t == "human" || t == "h" || t == "ht" || t == "original") return Label::human;
    if (t == "machine" || t == "m" || t == "mt" || t == "translated") return Label::machine;
    return std::nullopt;
}

Corpus parse_corpus(std::string_view content, const std::string& source_name) {
    Corpus corpus;
    std::unordered_set<std::string> seen;
    const auto lines = split_lines(content);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::size_t line_no = n + 1;
        const auto line = lines[n];
        if (is_blank(line)) continue;
        const auto fields = split(line, '\t');
        const std::string where = "line " + std::to_string(line_no);
        if (fields.size() < 2 || fields.size() > 4) {
            throw ParseError(source_name, where,
                             "expected 2-4 tab-separated fields, got " + std::to_string(fields.size()));
        }
        LabeledParagraph p;
        p.id = std::string(trim(fields[0]));
        if (p.id.empty()) throw ParseError(source_name, where, "empty id");
        p.text = unescape_text(fields[1], source_name, line_no);
        if (is_blank(p.text)) throw ParseError(source_name, where, "empty text for id '" + p.id + "'");
        if (fields.size() >= 3 && !is_blank(fields[2])) {
            p.label = parse_label(fields[2]);
            if (!p.label) throw ParseError(source_name, where, "unknown label '" + fields[2] + "'");
        }
        if (fields.size() == 4 && !is_blank(fields[3])) p.language = std::string(trim(fields[3]));
        if (!seen.insert(p.id).second) throw ParseError(source_name, where, "duplicate id '" + p.id + "'");
        corpus.entries.push_back(std::move(p));
    }
    return corpus;
}

Corpus load_corpus(const std::string& path) { return parse_corpus(read_file(path), path); }

std::string serialize_corpus(const Corpus& corpus) {
    std::string out;
    for (const auto& p : corpus.entries) {
        out += p.id;
        out += '\t';
        out += escape_text(p.text);
        if (p.label || p.language) {
            out += '\t';
            if (p.label) out += to_string(*p.label);
        }
        if (p.language) {
            out += '\t';
            out += *p.language;
        }
        out += '\n';
    }
    return out;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    write_file(path, serialize_corpus(corpus));
}

void FeatureMatrix::validate() const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.values.size() != feature_names.size()) {
            throw InvalidArgument("row " + std::to_string(r + 1) + " ('" + row.id + "') has " +
                                  std::to_string(row.values.size()) + " values, header has " +
                                  std::to_string(feature_names.size()));
        }
        for (double v : row.values) {
            if (!std::isfinite(v)) {
                throw InvalidArgument("row " + std::to_string(r + 1) + " ('" + row.id +
                                      "') holds a non-finite value");
            }
        }
    }
}

FeatureMatrix FeatureMatrix::select_columns(const std::vector<std::size_t>& columns) const {
    FeatureMatrix out;
    for (auto c : columns) out.feature_names.push_back(feature_names.at(c));
    out.rows.reserve(rows.size());
    for (const auto& row : rows) {
        FeatureRow r{row.id, row.label, {}};
        r.values.reserve(columns.size());
        for (auto c : columns) r.values.push_back(row.values.at(c));
        out.rows.push_back(std::move(r));
    }
    return out;
}

std::string serialize_feature_matrix(const FeatureMatrix& matrix) {
    matrix.validate();
    std::string out = "id,label";
    for (const auto& name : matrix.feature_names) {
        out += ',';
        out += csv_field(name);
    }
    out += '\n';
    for (const auto& row : matrix.rows) {
        out += csv_field(row.id);
        out += ',';
        if (row.label) out += to_string(*row.label);
        for (double v : row.values) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

void write_feature_matrix(const FeatureMatrix& matrix, const std::string& path) {
    write_file(path, serialize_feature_matrix(matrix));
}

FeatureMatrix parse_feature_matrix(std::string_view content, const std::string& source_name) {
    const auto records = parse_csv(content, source_name);
    if (records.empty()) throw ParseError(source_name, "line 1", "missing header");
    const auto& header = records.front().fields;
    if (header.size() < 2 || header[0] != "id" || header[1] != "label") {
        throw ParseError(source_name, "line 1", "header must start with id,label");
    }
    FeatureMatrix m;
    m.feature_names.assign(header.begin() + 2, header.end());
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::string where = "row " + std::to_string(r) + " (line " + std::to_string(rec.line) + ")";
        if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
        if (rec.fields.size() != header.size()) {
            throw ParseError(source_name, where,
                             "expected " + std::to_string(header.size()) + " cells, got " +
                                 std::to_string(rec.fields.size()));
        }
        FeatureRow row;
        row.id = rec.fields[0];
        if (!rec.fields[1].empty()) {
            row.label = parse_label(rec.fields[1]);
            if (!row.label) throw ParseError(source_name, where, "unknown label '" + rec.fields[1] + "'");
        }
        row.values.reserve(m.feature_names.size());
        for (std::size_t c = 2; c < rec.fields.size(); ++c) {
            double v = 0.0;
            if (!parse_double(rec.fields[c], v)) {
                throw ParseError(source_name, where,
                                 "non-numeric cell '" + rec.fields[c] + "' in column " + header[c]);
            }
            row.values.push_back(v);
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

FeatureMatrix load_feature_matrix(const std::string& path) {
    std::ifstream probe(path);
    if (!probe) throw ResourceError("cannot open feature file: " + path);
    probe.close();
    return parse_feature_matrix(read_file(path), path);
}

}  // namespace paracoh::corpus
