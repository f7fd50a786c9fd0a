#include "paracoh/cli.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>

#include "paracoh/baselines.hpp"
#include "paracoh/classify.hpp"
#include "paracoh/coherence.hpp"
#include "paracoh/config.hpp"
#include "paracoh/corpus.hpp"
#include "paracoh/error.hpp"
#include "paracoh/pipeline.hpp"
#include "paracoh/strings.hpp"
#include "paracoh/tagger.hpp"
#include "paracoh/tagset.hpp"
#include "paracoh/wordnet.hpp"

#ifndef PARACOH_DATA_DIR
#define PARACOH_DATA_DIR "data"
#endif
#ifndef PARACOH_DEFAULT_TAGGER
#define PARACOH_DEFAULT_TAGGER "paracoh-tagger.json"
#endif

namespace paracoh::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class UsageError : public Error {
public:
    using Error::Error;
};

const std::map<std::string, std::string>& defaults() {
    static const std::map<std::string, std::string> d{
        {"corpus", ""},
        {"wordnet", std::string(PARACOH_DATA_DIR) + "/wordnet-lite"},
        {"tagger-model", PARACOH_DEFAULT_TAGGER},
        {"tag-set", std::string(PARACOH_DATA_DIR) + "/tagsets/ptb44.txt"},
        {"function-words", std::string(PARACOH_DATA_DIR) + "/function_words.txt"},
        {"abbreviations", ""},
        {"features", ""},
        {"model", ""},
        {"out", ""},
        {"solver", "logistic"},
        {"c", "1"},
        {"epochs", "20"},
        {"folds", "10"},
        {"seed", "1"},
        {"penalty-exponent", "3"},
        {"match-threshold", "0"},
        {"jobs", "0"},
        {"method", ""},
        {"ngram", "2"},
        {"iterations", "8"},
    };
    return d;
}

std::string normalize_key(std::string key) {
    for (auto& ch : key) {
        if (ch == '_') ch = '-';
    }
    return key;
}

// Flag values layered over config-file values layered over defaults.
class Settings {
public:
    Settings(std::vector<std::string> keys, std::map<std::string, std::string> flags, const std::string& config_path)
        : keys_(std::move(keys)) {
        std::map<std::string, std::string> file;
        if (!config_path.empty()) {
            if (!fs::exists(config_path)) throw ResourceError("config file not found: " + config_path);
            const auto loaded = KeyValueConfig::load(config_path);
            for (const auto& [k, v] : loaded.entries()) {
                const auto key = normalize_key(k);
                if (!defaults().count(key)) throw UsageError("unknown key '" + k + "' in config file " + config_path);
                file[key] = v;
            }
        }
        for (const auto& key : keys_) {
            if (auto it = flags.find(key); it != flags.end()) {
                values_[key] = it->second;
            } else if (auto f = file.find(key); f != file.end()) {
                values_[key] = f->second;
            } else {
                values_[key] = defaults().at(key);
            }
        }
    }

    const std::string& str(const std::string& key) const { return values_.at(key); }

    const std::string& required(const std::string& key) const {
        const auto& v = str(key);
        if (v.empty()) throw UsageError("--" + key + " is required");
        return v;
    }

    double number(const std::string& key) const {
        double v = 0.0;
        if (!parse_double(str(key), v)) throw UsageError("--" + key + " expects a number, got '" + str(key) + "'");
        return v;
    }

    long long integer(const std::string& key, long long min) const {
        const double v = number(key);
        if (v != static_cast<double>(static_cast<long long>(v)) || v < static_cast<double>(min)) {
            throw UsageError("--" + key + " expects an integer >= " + std::to_string(min) + ", got '" + str(key) + "'");
        }
        return static_cast<long long>(v);
    }

    json to_json() const {
        json j = json::object();
        for (const auto& key : keys_) j[key] = values_.at(key);
        return j;
    }

    void log(std::ostream& err) const {
        err << "config:";
        for (const auto& key : keys_) err << ' ' << key << '=' << values_.at(key);
        err << '\n';
    }

private:
    std::vector<std::string> keys_;
    std::map<std::string, std::string> values_;
};

// Writes go to "<path>.tmp" and are renamed into place on commit; an
// uncommitted temporary is removed.
class AtomicFile {
public:
    explicit AtomicFile(std::string path) : path_(std::move(path)), tmp_(path_ + ".tmp") {}
    AtomicFile(const AtomicFile&) = delete;
    AtomicFile& operator=(const AtomicFile&) = delete;
    ~AtomicFile() {
        if (!committed_) {
            std::error_code ec;
            fs::remove(tmp_, ec);
        }
    }

    const std::string& tmp() const { return tmp_; }

    void write(const std::string& content) {
        std::ofstream f(tmp_, std::ios::binary | std::ios::trunc);
        if (!f) throw ResourceError("cannot write " + tmp_);
        f << content;
        if (!f) throw ResourceError("write failed: " + tmp_);
    }

    void commit() {
        fs::rename(tmp_, path_);
        committed_ = true;
    }

private:
    std::string path_;
    std::string tmp_;
    bool committed_ = false;
};

void require_file(const std::string& path, const std::string& what) {
    if (!fs::is_regular_file(path)) throw ResourceError(what + " not found: " + path);
}

classify::SolverConfig solver_config(const Settings& s) {
    classify::SolverConfig c;
    auto solver = classify::parse_solver(s.str("solver"));
    if (!solver) throw UsageError("unknown solver '" + s.str("solver") + "' (expected logistic or linear-svm)");
    c.solver = *solver;
    c.c = s.number("c");
    if (!(c.c > 0.0)) throw UsageError("--c must be positive");
    c.epochs = static_cast<int>(s.integer("epochs", 1));
    c.seed = static_cast<std::uint64_t>(s.integer("seed", 0));
    return c;
}

coherence::CoherenceConfig coherence_config(const Settings& s) {
    coherence::CoherenceConfig c;
    c.penalty_exponent = s.number("penalty-exponent");
    c.match_threshold = s.number("match-threshold");
    c.tag_set_path = s.str("tag-set");
    try {
        c.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    return c;
}

unsigned worker_count(const Settings& s) {
    const auto jobs = s.integer("jobs", 0);
    if (jobs > 0) return static_cast<unsigned>(jobs);
    return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t fold_count(const Settings& s) { return static_cast<std::size_t>(s.integer("folds", 2)); }

struct Resources {
    TagSet tag_set;
    nlp::TaggerModel tagger;
    wordnet::SynsetGraph graph;
    nlp::Abbreviations abbreviations = nlp::Abbreviations::english();
};

Resources load_resources(const Settings& s) {
    Resources r;
    const auto& wn = s.str("wordnet");
    if (!fs::is_directory(wn)) throw ResourceError("wordnet directory not found: " + wn);
    require_file(s.str("tag-set"), "tag set");
    require_file(s.str("tagger-model"), "tagger model");
    r.tag_set = load_tag_set(s.str("tag-set"));
    r.tagger = nlp::load_tagger(s.str("tagger-model"));
    if (r.tagger.tag_set_id != r.tag_set.id()) {
        throw InvalidArgument("tagger model was trained on tag set " + r.tagger.tag_set_id + " but --tag-set is " +
                              r.tag_set.id());
    }
    r.graph = wordnet::load_wordnet(wn);
    if (!s.str("abbreviations").empty()) {
        require_file(s.str("abbreviations"), "abbreviation list");
        r.abbreviations = nlp::Abbreviations::load(s.str("abbreviations"));
    }
    return r;
}

corpus::Corpus load_corpus_arg(const Settings& s) {
    const auto& path = s.required("corpus");
    require_file(path, "corpus");
    return corpus::load_corpus(path);
}

std::vector<nlp::ProcessedParagraph> process_all(const corpus::Corpus& c, const Resources& r) {
    std::vector<nlp::ProcessedParagraph> out;
    out.reserve(c.size());
    for (const auto& p : c.entries) {
        try {
            out.push_back(nlp::process_paragraph(p, r.tagger, r.graph, r.abbreviations));
        } catch (const Error& e) {
            throw Error("paragraph '" + p.id + "': " + e.what());
        }
    }
    return out;
}

// Coherence features for every paragraph, in corpus order, using `jobs`
// workers that each own a similarity cache.
corpus::FeatureMatrix extract_matrix(const corpus::Corpus& c, const Resources& r,
                                     const coherence::CoherenceConfig& config, unsigned jobs, std::ostream& err) {
    corpus::FeatureMatrix matrix;
    matrix.feature_names = coherence::feature_names(r.tag_set);
    matrix.rows.resize(c.size());
    std::vector<std::string> errors(c.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        wordnet::PathSimilarity similarity(r.graph);
        for (std::size_t i = next++; i < c.size(); i = next++) {
            const auto& p = c.entries[i];
            const auto start = std::chrono::steady_clock::now();
            try {
                const auto processed = nlp::process_paragraph(p, r.tagger, r.graph, r.abbreviations);
                auto vec = coherence::extract_features(processed, r.tag_set, similarity, config);
                matrix.rows[i] = {p.id, p.label, std::move(vec.values)};
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
            const auto ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            std::lock_guard lock(log_mutex);
            err << "[" << (i + 1) << "/" << c.size() << "] " << p.id << " " << format_double(std::round(ms * 10) / 10)
                << " ms\n";
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, c.size()))));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!errors[i].empty()) throw Error("paragraph '" + c.entries[i].id + "': " + errors[i]);
    }
    return matrix;
}

corpus::FeatureMatrix load_features_arg(const Settings& s) {
    const auto& path = s.required("features");
    require_file(path, "feature file");
    return corpus::load_feature_matrix(path);
}

std::string write_json_text(const json& j) { return j.dump(2) + "\n"; }

// Tag-set id recorded next to a feature file by `extract`, if any.
std::optional<std::string> sidecar_tag_set_id(const std::string& features_path) {
    const auto path = features_path + ".run.json";
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        const auto j = json::parse(in);
        if (j.contains("tag_set_id")) return j.at("tag_set_id").get<std::string>();
    } catch (const json::exception&) {
        throw ParseError(path, "json", "unreadable run log");
    }
    return std::nullopt;
}

int cmd_extract(const Settings& s, std::ostream& out, std::ostream& err) {
    const auto& out_path = s.required("out");
    const auto config = coherence_config(s);
    const auto jobs = worker_count(s);
    const auto r = load_resources(s);
    const auto c = load_corpus_arg(s);
    const auto matrix = extract_matrix(c, r, config, jobs, err);

    AtomicFile file(out_path);
    file.write(corpus::serialize_feature_matrix(matrix));
    AtomicFile log(out_path + ".run.json");
    log.write(write_json_text({{"command", "extract"}, {"config", s.to_json()}, {"tag_set_id", r.tag_set.id()}}));
    file.commit();
    log.commit();
    out << "wrote " << matrix.rows.size() << " rows x " << matrix.num_features() << " features to " << out_path
        << '\n';
    return kOk;
}

int cmd_train(const Settings& s, std::ostream& out, std::ostream&) {
    const auto solver = solver_config(s);
    const auto& out_path = s.str("model").empty() ? s.required("out") : s.str("model");
    const auto matrix = load_features_arg(s);
    auto model = classify::train(matrix, solver);
    if (auto id = sidecar_tag_set_id(s.str("features"))) {
        model.tag_set_id = *id;
    } else {
        require_file(s.str("tag-set"), "tag set");
        model.tag_set_id = load_tag_set(s.str("tag-set")).id();
    }
    AtomicFile file(out_path);
    classify::save_model(model, file.tmp());
    file.commit();
    std::vector<double> scores;
    std::vector<corpus::Label> labels;
    for (const auto& row : matrix.rows) {
        scores.push_back(classify::predict_score(model, row.values));
        labels.push_back(*row.label);
    }
    out << "training accuracy: " << format_double(classify::confusion_at_zero(scores, labels).accuracy()) << '\n';
    out << "wrote model to " << out_path << '\n';
    return kOk;
}

int cmd_evaluate(const Settings& s, std::ostream& out, std::ostream&) {
    const auto solver = solver_config(s);
    const auto folds = fold_count(s);
    const auto seed = static_cast<std::uint64_t>(s.integer("seed", 0));
    const auto jobs = worker_count(s);
    const auto& out_path = s.required("out");
    const auto matrix = load_features_arg(s);
    const auto report = classify::cross_validate(matrix, folds, solver, seed);
    const auto ranking = classify::rank_pos_pairs(matrix, folds, solver, seed, jobs);

    AtomicFile file(out_path);
    file.write(write_json_text({{"command", "evaluate"},
                                {"config", s.to_json()},
                                {"report", classify::to_json(report)},
                                {"ranking", classify::to_json(ranking)}}));
    file.commit();
    out << "accuracy: " << format_double(report.accuracy) << '\n';
    out << "eer: " << format_double(report.eer) << '\n';
    out << "mean fold eer: " << format_double(report.mean_fold_eer) << '\n';
    for (std::size_t i = 0; i < std::min<std::size_t>(5, ranking.size()); ++i) {
        out << "  " << (i + 1) << ". " << ranking[i].feature << " acc " << format_double(ranking[i].accuracy)
            << " eer " << format_double(ranking[i].eer) << '\n';
    }
    return kOk;
}

int cmd_rank_pairs(const Settings& s, std::ostream& out, std::ostream&) {
    const auto solver = solver_config(s);
    const auto folds = fold_count(s);
    const auto seed = static_cast<std::uint64_t>(s.integer("seed", 0));
    const auto jobs = worker_count(s);
    const auto matrix = load_features_arg(s);
    const auto ranking = classify::rank_pos_pairs(matrix, folds, solver, seed, jobs);
    std::ostringstream table;
    table << "rank\tpair\taccuracy\teer\n";
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        table << (i + 1) << '\t' << ranking[i].feature << '\t' << format_double(ranking[i].accuracy) << '\t'
              << format_double(ranking[i].eer) << '\n';
    }
    if (s.str("out").empty()) {
        out << table.str();
    } else {
        AtomicFile file(s.str("out"));
        file.write(table.str());
        file.commit();
        out << "wrote ranking of " << ranking.size() << " pairs to " << s.str("out") << '\n';
    }
    return kOk;
}

int cmd_detect(const Settings& s, std::ostream& out, std::ostream& err) {
    const auto config = coherence_config(s);
    const auto jobs = worker_count(s);
    const auto& model_path = s.required("model");
    require_file(model_path, "model");
    const auto model = classify::load_model(model_path);
    const auto r = load_resources(s);
    if (!model.tag_set_id.empty() && model.tag_set_id != r.tag_set.id()) {
        throw InvalidArgument("model was trained under tag set " + model.tag_set_id + " but extraction uses " +
                              r.tag_set.id());
    }
    if (model.feature_names != coherence::feature_names(r.tag_set)) {
        throw InvalidArgument("model feature names do not match the coherence features of tag set " +
                              r.tag_set.id());
    }
    const auto c = load_corpus_arg(s);
    const auto matrix = extract_matrix(c, r, config, jobs, err);

    std::ostringstream lines;
    std::size_t machines = 0;
    for (const auto& row : matrix.rows) {
        const double score = classify::predict_score(model, row.values);
        const bool machine = score > 0.0;
        machines += machine ? 1 : 0;
        lines << row.id << '\t' << format_double(score) << '\t' << (machine ? "machine" : "human") << '\n';
    }
    lines << "# human " << (matrix.rows.size() - machines) << " machine " << machines << '\n';
    if (s.str("out").empty()) {
        out << lines.str();
    } else {
        AtomicFile file(s.str("out"));
        file.write(lines.str());
        file.commit();
        out << "wrote " << matrix.rows.size() << " verdicts to " << s.str("out") << '\n';
    }
    return kOk;
}

std::unordered_set<std::string> load_function_words(const Settings& s) {
    require_file(s.str("function-words"), "function word list");
    std::unordered_set<std::string> words;
    for (auto& w : read_word_list(s.str("function-words"))) words.insert(to_lower(w));
    return words;
}

classify::EvalReport leave_one_out_nearest_neighbor(const std::vector<nlp::ProcessedParagraph>& paragraphs) {
    const std::size_t n = paragraphs.size();
    std::vector<baselines::FrequencySpectrum> spectra;
    std::vector<corpus::Label> labels;
    for (const auto& p : paragraphs) {
        if (!p.label) throw InvalidArgument("paragraph '" + p.id + "' is unlabeled");
        spectra.push_back(baselines::FrequencySpectrum::of(p));
        labels.push_back(*p.label);
    }
    classify::EvalReport report;
    report.folds = n;
    report.scores.assign(n, 0.0);
    report.fold_of_row.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        report.fold_of_row[i] = i;
        std::vector<std::pair<baselines::FrequencySpectrum, corpus::Label>> training;
        double nearest_human = 1.0;
        double nearest_machine = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            training.emplace_back(spectra[j], labels[j]);
            const double d = baselines::intertextual_distance(spectra[i], spectra[j]);
            auto& nearest = labels[j] == corpus::Label::human ? nearest_human : nearest_machine;
            nearest = std::min(nearest, d);
        }
        if (training.empty()) throw InvalidArgument("leave-one-out needs at least two paragraphs");
        const auto predicted = baselines::nearest_neighbor_classify(spectra[i], training);
        // Positive when the nearest machine text is closer than the nearest human one.
        report.scores[i] = nearest_human - nearest_machine;
        const bool machine = predicted == corpus::Label::machine;
        if (labels[i] == corpus::Label::machine) {
            (machine ? report.confusion.tp : report.confusion.fn)++;
        } else {
            (machine ? report.confusion.fp : report.confusion.tn)++;
        }
    }
    report.accuracy = report.confusion.accuracy();
    report.eer = classify::equal_error_rate(report.scores, labels);
    report.mean_fold_accuracy = report.accuracy;
    report.mean_fold_eer = report.eer;
    return report;
}

int cmd_baseline(const Settings& s, std::ostream& out, std::ostream& err) {
    const auto& method = s.str("method");
    if (method != "zipf" && method != "posngram" && method != "intertextual") {
        throw UsageError("unknown method '" + method + "' (expected zipf, posngram or intertextual)");
    }
    const auto& out_path = s.required("out");
    const auto solver = solver_config(s);
    const auto folds = fold_count(s);
    const auto seed = static_cast<std::uint64_t>(s.integer("seed", 0));
    const auto r = load_resources(s);
    const auto c = load_corpus_arg(s);
    const auto paragraphs = process_all(c, r);

    classify::EvalReport report;
    std::optional<corpus::FeatureMatrix> matrix;
    if (method == "intertextual") {
        report = leave_one_out_nearest_neighbor(paragraphs);
    } else {
        matrix.emplace();
        std::function<std::vector<double>(const nlp::ProcessedParagraph&)> features;
        std::optional<baselines::PosNgramVocabulary> vocabulary;
        if (method == "zipf") {
            matrix->feature_names = baselines::zipf_feature_names();
            features = baselines::zipf_features;
        } else {
            const auto n = s.integer("ngram", 1);
            if (n > 3) throw UsageError("--ngram must be 1, 2 or 3");
            vocabulary = baselines::PosNgramVocabulary::fit(paragraphs, static_cast<std::size_t>(n),
                                                            load_function_words(s));
            matrix->feature_names = vocabulary->feature_names();
            features = [&](const nlp::ProcessedParagraph& p) { return vocabulary->features(p); };
        }
        for (const auto& p : paragraphs) {
            try {
                matrix->rows.push_back({p.id, p.label, features(p)});
            } catch (const Error& e) {
                throw Error("paragraph '" + p.id + "': " + e.what());
            }
        }
        report = classify::cross_validate(*matrix, folds, solver, seed);
    }

    std::optional<AtomicFile> features_file;
    if (matrix && !s.str("features").empty()) {
        features_file.emplace(s.str("features"));
        features_file->write(corpus::serialize_feature_matrix(*matrix));
    }
    AtomicFile file(out_path);
    json j{{"command", "baseline"}, {"config", s.to_json()}, {"method", method}, {"report", classify::to_json(report)}};
    if (matrix) j["features"] = matrix->num_features();
    file.write(write_json_text(j));
    if (features_file) features_file->commit();
    file.commit();
    err << "baseline " << method << ": " << paragraphs.size() << " paragraphs\n";
    out << "accuracy: " << format_double(report.accuracy) << '\n';
    out << "eer: " << format_double(report.eer) << '\n';
    return kOk;
}

int cmd_build_tagger(const Settings& s, std::ostream& out, std::ostream&) {
    const auto& corpus_path = s.required("corpus");
    const auto& out_path = s.required("out");
    require_file(corpus_path, "tagged corpus");
    require_file(s.str("tag-set"), "tag set");
    const auto tag_set = load_tag_set(s.str("tag-set"));
    const auto sentences = nlp::read_tagged_corpus(corpus_path);
    const auto model = nlp::train_tagger(sentences, tag_set, static_cast<int>(s.integer("iterations", 1)),
                                         static_cast<std::uint64_t>(s.integer("seed", 0)));
    AtomicFile file(out_path);
    nlp::save_tagger(model, file.tmp());
    file.commit();
    out << "trained on " << model.training_sentences << " sentences";
    if (model.heldout_sentences > 0) {
        out << "; held-out accuracy " << format_double(model.heldout_accuracy) << " on " << model.heldout_sentences
            << " sentences";
    }
    out << '\n' << "wrote tagger to " << out_path << '\n';
    return kOk;
}

struct Command {
    std::string name;
    std::string description;
    std::vector<std::string> keys;
    std::function<int(const Settings&, std::ostream&, std::ostream&)> handler;
};

const std::vector<Command>& commands() {
    static const std::vector<std::string> resources{"wordnet", "tagger-model", "tag-set", "abbreviations"};
    auto with = [](std::vector<std::string> a, const std::vector<std::string>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    static const std::vector<std::string> solver{"solver", "c", "epochs", "seed"};
    static const std::vector<Command> list{
        {"extract", "Write the coherence feature matrix of a corpus",
         with(with({"corpus", "out", "penalty-exponent", "match-threshold", "jobs"}, resources), {}), cmd_extract},
        {"train", "Train a linear classifier on a feature matrix", with({"features", "model", "out", "tag-set"}, solver),
         cmd_train},
        {"evaluate", "Cross-validate on a feature matrix and rank POS pairs",
         with({"features", "out", "folds", "jobs"}, solver), cmd_evaluate},
        {"detect", "Label the paragraphs of a corpus with a trained model",
         with({"corpus", "model", "out", "penalty-exponent", "match-threshold", "jobs"}, resources), cmd_detect},
        {"rank-pairs", "Rank POS pairs by single-feature cross-validation",
         with({"features", "out", "folds", "jobs"}, solver), cmd_rank_pairs},
        {"baseline", "Evaluate a zipf, posngram or intertextual baseline",
         with(with({"method", "corpus", "out", "features", "function-words", "ngram", "folds"}, resources), solver),
         cmd_baseline},
        {"build-tagger", "Train the part-of-speech tagger from a tagged corpus",
         {"corpus", "out", "tag-set", "iterations", "seed"}, cmd_build_tagger},
    };
    return list;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Detect machine-translated paragraphs from coherence features", "paracoh"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value file; flags override it")->expected(1);

    std::vector<std::map<std::string, std::string>> flag_values(commands().size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < commands().size(); ++i) {
        const auto& cmd = commands()[i];
        auto* sub = app.add_subcommand(cmd.name, cmd.description);
        sub->add_option("--config", config_path, "key = value file; flags override it");
        for (const auto& key : cmd.keys) {
            const auto& def = defaults().at(key);
            auto* opt = sub->add_option_function<std::string>(
                "--" + key, [&flag_values, i, key](const std::string& v) { flag_values[i][key] = v; },
                def.empty() ? std::string() : "default: " + def);
            opt->type_name("VALUE");
        }
        subs.push_back(sub);
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        const auto& cmd = commands()[i];
        try {
            const Settings settings(cmd.keys, flag_values[i], config_path);
            settings.log(err);
            return cmd.handler(settings, out, err);
        } catch (const UsageError& e) {
            err << "error: " << e.what() << "\n\n" << subs[i]->help();
            return kUsage;
        } catch (const ResourceError& e) {
            err << "error: " << e.what() << '\n';
            return kUsage;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kFailure;
        }
    }
    return kUsage;
}

}  // namespace paracoh::cli
