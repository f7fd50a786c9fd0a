#include "paracoh/tagger.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "paracoh/error.hpp"
#include "paracoh/rng.hpp"
#include "paracoh/strings.hpp"

namespace paracoh::nlp {

namespace {

using json = nlohmann::json;

constexpr std::string_view kStart1 = "-START-";
constexpr std::string_view kStart2 = "-START2-";
constexpr std::string_view kEnd1 = "-END-";
constexpr std::string_view kEnd2 = "-END2-";

std::string normalize_word(std::string_view w) {
    const bool all_digits = !w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
    });
    if (all_digits && w.size() == 4) return "!YEAR";
    if (!w.empty() && std::isdigit(static_cast<unsigned char>(w.front()))) return "!DIGITS";
    return to_lower(w);
}

// Collapsed character classes: "Instant" -> "Xx", "3.14" -> "d.d", "e-mail" -> "x-x".
std::string word_shape(std::string_view w) {
    std::string shape;
    for (unsigned char c : w) {
        char k;
        if (std::isupper(c)) k = 'X';
        else if (std::islower(c)) k = 'x';
        else if (std::isdigit(c)) k = 'd';
        else if (c >= 0x80) k = 'u';
        else k = static_cast<char>(c);
        if (shape.empty() || shape.back() != k) shape.push_back(k);
    }
    return shape;
}

std::string suffix(std::string_view w, std::size_t n) {
    return std::string(w.size() <= n ? w : w.substr(w.size() - n));
}

std::string prefix(std::string_view w, std::size_t n) { return std::string(w.substr(0, std::min(n, w.size()))); }

// Context holds normalized words padded with two start and two end markers.
std::vector<std::string> context_of(std::span<const std::string> tokens) {
    std::vector<std::string> ctx;
    ctx.reserve(tokens.size() + 4);
    ctx.emplace_back(kStart1);
    ctx.emplace_back(kStart2);
    for (const auto& t : tokens) ctx.push_back(normalize_word(t));
    ctx.emplace_back(kEnd1);
    ctx.emplace_back(kEnd2);
    return ctx;
}

std::vector<std::string> features(std::size_t i, std::string_view raw, const std::vector<std::string>& ctx,
                                  std::string_view prev, std::string_view prev2) {
    const std::size_t k = i + 2;
    const std::string& w = ctx[k];
    std::vector<std::string> f;
    f.reserve(20);
    f.emplace_back("bias");
    f.push_back("w=" + w);
    for (std::size_t n = 1; n <= 3; ++n) {
        f.push_back("p" + std::to_string(n) + "=" + prefix(w, n));
        f.push_back("s" + std::to_string(n) + "=" + suffix(w, n));
    }
    f.push_back("shape=" + word_shape(raw));
    f.push_back("t-1=" + std::string(prev));
    f.push_back("t-2=" + std::string(prev2));
    f.push_back("t-1,t-2=" + std::string(prev) + "," + std::string(prev2));
    f.push_back("t-1,w=" + std::string(prev) + "," + w);
    f.push_back("w-1=" + ctx[k - 1]);
    f.push_back("s3-1=" + suffix(ctx[k - 1], 3));
    f.push_back("w-2=" + ctx[k - 2]);
    f.push_back("w+1=" + ctx[k + 1]);
    f.push_back("s3+1=" + suffix(ctx[k + 1], 3));
    f.push_back("w+2=" + ctx[k + 2]);
    return f;
}

std::uint16_t best_tag(const std::vector<double>& scores, const std::vector<std::uint16_t>& rank) {
    // Walk tags in frequency order so ties go to the more frequent tag.
    std::uint16_t best = rank.front();
    for (auto c : rank) {
        if (scores[c] > scores[best]) best = c;
    }
    return best;
}

// Dense training-time weights with lazy averaging.
class Trainer {
public:
    explicit Trainer(std::size_t num_tags) : num_tags_(num_tags) {}

    void score(const std::vector<std::string>& feats, std::vector<double>& scores) const {
        std::fill(scores.begin(), scores.end(), 0.0);
        for (const auto& f : feats) {
            auto it = ids_.find(f);
            if (it == ids_.end()) continue;
            const double* w = &weights_[it->second * num_tags_];
            for (std::size_t c = 0; c < num_tags_; ++c) scores[c] += w[c];
        }
    }

    void update(std::uint16_t truth, std::uint16_t guess, const std::vector<std::string>& feats) {
        ++step_;
        if (truth == guess) return;
        for (const auto& f : feats) {
            const std::size_t id = intern(f);
            bump(id, truth, 1.0);
            bump(id, guess, -1.0);
        }
    }

    // Averaged weights, zeros dropped.
    std::map<std::string, std::vector<std::pair<std::uint16_t, double>>> averaged() const {
        std::map<std::string, std::vector<std::pair<std::uint16_t, double>>> out;
        if (step_ == 0) return out;
        for (const auto& [feature, id] : ids_) {
            std::vector<std::pair<std::uint16_t, double>> row;
            for (std::size_t c = 0; c < num_tags_; ++c) {
                const std::size_t k = id * num_tags_ + c;
                const double total = totals_[k] + static_cast<double>(step_ - stamps_[k]) * weights_[k];
                const double avg = total / static_cast<double>(step_);
                if (avg != 0.0) row.emplace_back(static_cast<std::uint16_t>(c), avg);
            }
            if (!row.empty()) out.emplace(feature, std::move(row));
        }
        return out;
    }

private:
    std::size_t intern(const std::string& f) {
        auto [it, inserted] = ids_.emplace(f, ids_.size());
        if (inserted) {
            weights_.resize(weights_.size() + num_tags_, 0.0);
            totals_.resize(totals_.size() + num_tags_, 0.0);
            stamps_.resize(stamps_.size() + num_tags_, 0);
        }
        return it->second;
    }

    void bump(std::size_t id, std::uint16_t c, double delta) {
        const std::size_t k = id * num_tags_ + c;
        totals_[k] += static_cast<double>(step_ - stamps_[k]) * weights_[k];
        stamps_[k] = step_;
        weights_[k] += delta;
    }

    std::size_t num_tags_;
    std::unordered_map<std::string, std::size_t> ids_;
    std::vector<double> weights_;
    std::vector<double> totals_;
    std::vector<std::uint64_t> stamps_;
    std::uint64_t step_ = 0;
};

struct EncodedSentence {
    std::vector<std::string> words;
    std::vector<std::uint16_t> tags;
};

TaggerModel fit(const std::vector<EncodedSentence>& data, const TagSet& tag_set,
                const std::vector<std::uint16_t>& rank, int iterations, std::uint64_t seed) {
    Trainer trainer(tag_set.size());
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    std::vector<double> scores(tag_set.size());
    for (int it = 0; it < iterations; ++it) {
        rng.shuffle(std::span<std::size_t>(order));
        for (auto s : order) {
            const auto& sent = data[s];
            const auto ctx = context_of(sent.words);
            std::string prev(kStart1);
            std::string prev2(kStart2);
            for (std::size_t i = 0; i < sent.words.size(); ++i) {
                const auto feats = features(i, sent.words[i], ctx, prev, prev2);
                trainer.score(feats, scores);
                const auto guess = best_tag(scores, rank);
                trainer.update(sent.tags[i], guess, feats);
                prev2 = prev;
                prev = tag_set.tags()[guess];
            }
        }
    }
    TaggerModel m;
    m.tags = tag_set.tags();
    m.tag_set_id = tag_set.id();
    m.weights = trainer.averaged();
    m.tag_rank = rank;
    m.iterations = iterations;
    m.seed = seed;
    m.training_sentences = data.size();
    return m;
}

std::vector<std::uint16_t> apply(std::span<const std::string> tokens, const TaggerModel& model) {
    std::vector<std::uint16_t> out;
    out.reserve(tokens.size());
    if (tokens.empty()) return out;
    const auto ctx = context_of(tokens);
    std::vector<double> scores(model.tags.size());
    std::string prev(kStart1);
    std::string prev2(kStart2);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::fill(scores.begin(), scores.end(), 0.0);
        for (const auto& f : features(i, tokens[i], ctx, prev, prev2)) {
            auto it = model.weights.find(f);
            if (it == model.weights.end()) continue;
            for (const auto& [c, w] : it->second) scores[c] += w;
        }
        const auto best = best_tag(scores, model.tag_rank);
        out.push_back(best);
        prev2 = prev;
        prev = model.tags[best];
    }
    return out;
}

}  // namespace

std::vector<TaggedSentence> parse_tagged_corpus(std::string_view content, const std::string& source_name) {
    std::vector<TaggedSentence> out;
    TaggedSentence current;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= content.size()) {
        auto end = content.find('\n', start);
        if (end == std::string_view::npos) end = content.size();
        auto line = content.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (is_blank(line)) {
            if (!current.empty()) out.push_back(std::move(current));
            current.clear();
            if (end == content.size()) break;
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            if (line.front() == '#') continue;
            throw ParseError(source_name, "line " + std::to_string(line_no), "expected surface<TAB>tag");
        }
        auto surface = trim(line.substr(0, tab));
        auto t = trim(line.substr(tab + 1));
        if (surface.empty() || t.empty()) {
            throw ParseError(source_name, "line " + std::to_string(line_no), "empty surface or tag");
        }
        current.push_back({std::string(surface), std::string(t)});
        if (end == content.size()) break;
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

std::vector<TaggedSentence> read_tagged_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open tagged corpus: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_tagged_corpus(ss.str(), path);
}

TaggerModel train_tagger(const std::vector<TaggedSentence>& corpus, const TagSet& tag_set, int iterations,
                         std::uint64_t seed) {
    if (corpus.empty()) throw InvalidArgument("tagged corpus is empty");
    if (iterations <= 0) throw InvalidArgument("iterations must be positive");
    if (tag_set.size() > std::numeric_limits<std::uint16_t>::max()) throw InvalidArgument("tag set too large");

    std::vector<EncodedSentence> data;
    std::vector<std::size_t> counts(tag_set.size(), 0);
    for (std::size_t s = 0; s < corpus.size(); ++s) {
        EncodedSentence e;
        for (const auto& tok : corpus[s]) {
            auto idx = tag_set.index_of(tok.tag);
            if (!idx) {
                throw InvalidArgument("tag '" + tok.tag + "' (sentence " + std::to_string(s + 1) +
                                      ") is not in tag set " + tag_set.id());
            }
            e.words.push_back(tok.surface);
            e.tags.push_back(static_cast<std::uint16_t>(*idx));
            ++counts[*idx];
        }
        if (!e.words.empty()) data.push_back(std::move(e));
    }
    if (data.empty()) throw InvalidArgument("tagged corpus has no tokens");

    std::vector<std::uint16_t> rank(tag_set.size());
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(), [&](auto a, auto b) { return counts[a] > counts[b]; });

    double heldout_accuracy = std::numeric_limits<double>::quiet_NaN();
    std::size_t heldout = 0;
    if (data.size() >= 2) {
        std::vector<std::size_t> order(data.size());
        std::iota(order.begin(), order.end(), 0);
        Rng split_rng(seed ^ 0x9e3779b97f4a7c15ULL);
        split_rng.shuffle(std::span<std::size_t>(order));
        heldout = std::max<std::size_t>(1, data.size() / 10);
        std::vector<EncodedSentence> train_part;
        std::vector<TaggedSentence> test_part;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i < heldout) {
                test_part.push_back(corpus[order[i]]);
            } else {
                train_part.push_back(data[order[i]]);
            }
        }
        const auto probe = fit(train_part, tag_set, rank, iterations, seed);
        heldout_accuracy = tagging_accuracy(test_part, probe);
    }

    auto model = fit(data, tag_set, rank, iterations, seed);
    model.heldout_sentences = heldout;
    model.heldout_accuracy = heldout_accuracy;
    return model;
}

std::vector<std::string> tag(std::span<const std::string> tokens, const TaggerModel& model) {
    std::vector<std::string> out;
    for (auto c : apply(tokens, model)) out.push_back(model.tags[c]);
    return out;
}

double tagging_accuracy(const std::vector<TaggedSentence>& corpus, const TaggerModel& model) {
    std::size_t total = 0;
    std::size_t correct = 0;
    for (const auto& sent : corpus) {
        std::vector<std::string> words;
        for (const auto& t : sent) words.push_back(t.surface);
        const auto predicted = tag(words, model);
        for (std::size_t i = 0; i < sent.size(); ++i) {
            ++total;
            if (predicted[i] == sent[i].tag) ++correct;
        }
    }
    if (total == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(correct) / static_cast<double>(total);
}

void save_tagger(const TaggerModel& model, const std::string& path) {
    json j;
    j["format"] = "paracoh-tagger";
    j["version"] = 1;
    j["tag_set_id"] = model.tag_set_id;
    j["tags"] = model.tags;
    j["tag_rank"] = model.tag_rank;
    j["iterations"] = model.iterations;
    j["seed"] = model.seed;
    j["training_sentences"] = model.training_sentences;
    j["heldout_sentences"] = model.heldout_sentences;
    j["heldout_accuracy"] = std::isnan(model.heldout_accuracy) ? json(nullptr) : json(model.heldout_accuracy);
    json weights = json::array();
    for (const auto& [feature, row] : model.weights) {
        for (const auto& [c, w] : row) weights.push_back(json::array({feature, model.tags[c], w}));
    }
    j["weights"] = std::move(weights);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write tagger model: " + path);
    out << j.dump(1) << '\n';
    if (!out) throw ResourceError("write failed: " + path);
}

TaggerModel load_tagger(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open tagger model: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path, "json", e.what());
    }
    try {
        if (j.at("format") != "paracoh-tagger") throw ParseError(path, "format", "not a tagger model");
        TaggerModel m;
        m.tag_set_id = j.at("tag_set_id").get<std::string>();
        m.tags = j.at("tags").get<std::vector<std::string>>();
        m.tag_rank = j.at("tag_rank").get<std::vector<std::uint16_t>>();
        m.iterations = j.at("iterations").get<int>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.training_sentences = j.at("training_sentences").get<std::size_t>();
        m.heldout_sentences = j.at("heldout_sentences").get<std::size_t>();
        const auto& acc = j.at("heldout_accuracy");
        m.heldout_accuracy = acc.is_null() ? std::numeric_limits<double>::quiet_NaN() : acc.get<double>();
        if (m.tags.empty() || m.tag_rank.size() != m.tags.size()) {
            throw ParseError(path, "tag_rank", "tag list and tag rank disagree");
        }
        std::unordered_map<std::string, std::uint16_t> index;
        for (std::size_t i = 0; i < m.tags.size(); ++i) index.emplace(m.tags[i], static_cast<std::uint16_t>(i));
        for (const auto& entry : j.at("weights")) {
            const auto feature = entry.at(0).get<std::string>();
            const auto t = entry.at(1).get<std::string>();
            auto it = index.find(t);
            if (it == index.end()) throw ParseError(path, "weights", "weight for unknown tag '" + t + "'");
            m.weights[feature].emplace_back(it->second, entry.at(2).get<double>());
        }
        for (auto& [feature, row] : m.weights) std::sort(row.begin(), row.end());
        return m;
    } catch (const json::exception& e) {
        throw ParseError(path, "json", e.what());
    }
}

}  // namespace paracoh::nlp
