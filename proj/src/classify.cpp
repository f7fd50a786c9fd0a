#include "paracoh/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <thread>

#include "paracoh/error.hpp"
#include "paracoh/rng.hpp"
#include "paracoh/strings.hpp"

namespace paracoh::classify {

using corpus::Label;
using json = nlohmann::json;

namespace {

constexpr double kInitialRate = 0.5;

double target_of(Label l) { return l == Label::machine ? 1.0 : -1.0; }

std::vector<Label> labels_of(const corpus::FeatureMatrix& matrix) {
    std::vector<Label> out;
    out.reserve(matrix.rows.size());
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        const auto& row = matrix.rows[r];
        if (!row.label) throw InvalidArgument("row " + std::to_string(r + 1) + " ('" + row.id + "') is unlabeled");
        out.push_back(*row.label);
    }
    return out;
}

std::vector<FeatureScaling> fit_scaling(const corpus::FeatureMatrix& matrix, std::span<const std::size_t> rows) {
    const std::size_t d = matrix.num_features();
    std::vector<FeatureScaling> out(d);
    const auto n = static_cast<double>(rows.size());
    for (std::size_t f = 0; f < d; ++f) {
        double mean = 0.0;
        for (auto r : rows) mean += matrix.rows[r].values[f];
        mean /= n;
        double var = 0.0;
        for (auto r : rows) {
            const double x = matrix.rows[r].values[f] - mean;
            var += x * x;
        }
        var /= n;
        out[f] = {mean, std::max(std::sqrt(var), kMinSd)};
    }
    return out;
}

// Loss derivative with respect to the decision value.
double loss_gradient(Solver s, double y, double decision) {
    const double margin = y * decision;
    if (s == Solver::logistic) {
        // -y * sigmoid(-margin), computed without overflow.
        if (margin >= 0) {
            const double e = std::exp(-margin);
            return -y * e / (1.0 + e);
        }
        return -y / (1.0 + std::exp(margin));
    }
    return margin < 1.0 ? -y : 0.0;
}

LinearModel train_rows(const corpus::FeatureMatrix& matrix, std::span<const std::size_t> rows,
                       std::span<const Label> labels, const SolverConfig& config) {
    config.validate();
    if (rows.size() < 2) throw InvalidArgument("training needs at least two rows");
    bool has_human = false;
    bool has_machine = false;
    for (auto r : rows) (labels[r] == Label::human ? has_human : has_machine) = true;
    if (!has_human || !has_machine) throw InvalidArgument("training data has a single class");

    const std::size_t d = matrix.num_features();
    LinearModel model;
    model.feature_names = matrix.feature_names;
    model.scaling = fit_scaling(matrix, rows);
    model.solver = config;

    // Standardized copy of the training rows.
    std::vector<double> x(rows.size() * d);
    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& values = matrix.rows[rows[i]].values;
        for (std::size_t f = 0; f < d; ++f) {
            x[i * d + f] = (values[f] - model.scaling[f].mean) / model.scaling[f].sd;
        }
        y[i] = target_of(labels[rows[i]]);
    }

    const double lambda = 1.0 / (config.c * static_cast<double>(rows.size()));
    std::vector<double> w(d, 0.0);
    double b = 0.0;
    // Iterate average over the second half of the epochs.
    std::vector<double> w_avg(d, 0.0);
    double b_avg = 0.0;
    std::size_t averaged = 0;
    const int average_from = config.epochs / 2;

    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(config.seed);
    std::uint64_t t = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        for (auto i : order) {
            const double eta = kInitialRate / (1.0 + kInitialRate * lambda * static_cast<double>(t));
            const double* xi = &x[i * d];
            double decision = b;
            for (std::size_t f = 0; f < d; ++f) decision += w[f] * xi[f];
            const double g = loss_gradient(config.solver, y[i], decision);
            const double shrink = 1.0 - eta * lambda;
            for (std::size_t f = 0; f < d; ++f) w[f] = w[f] * shrink - eta * g * xi[f];
            b -= eta * g;
            ++t;
            if (epoch >= average_from) {
                ++averaged;
                const double mu = 1.0 / static_cast<double>(averaged);
                for (std::size_t f = 0; f < d; ++f) w_avg[f] += mu * (w[f] - w_avg[f]);
                b_avg += mu * (b - b_avg);
            }
        }
    }
    model.weights = std::move(w_avg);
    model.bias = b_avg;
    return model;
}

double fold_accuracy(std::span<const double> scores, std::span<const Label> labels) {
    return confusion_at_zero(scores, labels).accuracy();
}

}  // namespace

std::string_view to_string(Solver s) { return s == Solver::logistic ? "logistic" : "linear-svm"; }

std::optional<Solver> parse_solver(std::string_view s) {
    const auto t = to_lower(s);
    if (t == "logistic" || t == "lr") return Solver::logistic;
    if (t == "linear-svm" || t == "svm" || t == "linear_svm") return Solver::linear_svm;
    return std::nullopt;
}

void SolverConfig::validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("C must be a positive number");
    if (epochs <= 0) throw InvalidArgument("epochs must be positive");
}

void LinearModel::validate() const {
    if (weights.size() != feature_names.size() || scaling.size() != feature_names.size()) {
        throw InvalidArgument("linear model: weights, scaling and feature names differ in length");
    }
    for (const auto& s : scaling) {
        if (!(s.sd >= kMinSd)) throw InvalidArgument("linear model: scaling sd below minimum");
    }
}

LinearModel train(const corpus::FeatureMatrix& matrix, const SolverConfig& config) {
    matrix.validate();
    const auto labels = labels_of(matrix);
    std::vector<std::size_t> rows(matrix.rows.size());
    std::iota(rows.begin(), rows.end(), 0);
    return train_rows(matrix, rows, labels, config);
}

double predict_score(const LinearModel& model, std::span<const double> values) {
    if (values.size() != model.weights.size()) {
        throw InvalidArgument("feature vector has " + std::to_string(values.size()) + " values, model expects " +
                              std::to_string(model.weights.size()));
    }
    double score = model.bias;
    for (std::size_t f = 0; f < values.size(); ++f) {
        score += model.weights[f] * ((values[f] - model.scaling[f].mean) / model.scaling[f].sd);
    }
    return score;
}

double equal_error_rate(std::span<const double> scores, std::span<const Label> labels) {
    if (scores.size() != labels.size()) throw InvalidArgument("scores and labels differ in length");
    std::vector<std::pair<double, Label>> items;
    items.reserve(scores.size());
    std::size_t humans = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!std::isfinite(scores[i])) throw InvalidArgument("non-finite score");
        items.emplace_back(scores[i], labels[i]);
        if (labels[i] == Label::human) ++humans;
    }
    const std::size_t machines = items.size() - humans;
    if (humans == 0 || machines == 0) throw InvalidArgument("equal error rate needs both classes");
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    // Threshold below everything: every row is called machine.
    double prev_fpr = 1.0;
    double prev_fnr = 0.0;
    std::size_t humans_below = 0;
    std::size_t machines_below = 0;
    std::size_t i = 0;
    while (true) {
        // Advance past one distinct score; the next threshold sits above it.
        if (i < items.size()) {
            const double s = items[i].first;
            while (i < items.size() && items[i].first == s) {
                (items[i].second == Label::human ? humans_below : machines_below)++;
                ++i;
            }
        }
        const double fpr = static_cast<double>(humans - humans_below) / static_cast<double>(humans);
        const double fnr = static_cast<double>(machines_below) / static_cast<double>(machines);
        const double prev_gap = prev_fpr - prev_fnr;
        const double gap = fpr - fnr;
        if (gap == 0.0) return fpr;
        if (gap < 0.0) {
            const double alpha = prev_gap / (prev_gap - gap);
            return prev_fpr + alpha * (fpr - prev_fpr);
        }
        prev_fpr = fpr;
        prev_fnr = fnr;
        if (i >= items.size()) break;
    }
    // Unreachable: above the top score fpr = 0 and fnr = 1.
    return prev_fpr;
}

double Confusion::accuracy() const {
    if (total() == 0) return 0.0;
    return static_cast<double>(tp + tn) / static_cast<double>(total());
}

Confusion confusion_at_zero(std::span<const double> scores, std::span<const Label> labels) {
    if (scores.size() != labels.size()) throw InvalidArgument("scores and labels differ in length");
    Confusion c;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool predicted_machine = scores[i] > 0.0;
        if (labels[i] == Label::machine) {
            (predicted_machine ? c.tp : c.fn)++;
        } else {
            (predicted_machine ? c.fp : c.tn)++;
        }
    }
    return c;
}

std::vector<std::size_t> stratified_folds(std::span<const Label> labels, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw InvalidArgument("cross validation needs at least two folds");
    std::vector<std::size_t> fold(labels.size(), 0);
    Rng rng(seed);
    std::size_t next = 0;
    for (auto cls : {Label::human, Label::machine}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == cls) members.push_back(i);
        }
        rng.shuffle(std::span<std::size_t>(members));
        for (auto r : members) {
            fold[r] = next;
            next = (next + 1) % k;
        }
    }
    return fold;
}

EvalReport cross_validate(const corpus::FeatureMatrix& matrix, std::size_t k, const SolverConfig& config,
                          std::uint64_t seed) {
    matrix.validate();
    config.validate();
    const auto labels = labels_of(matrix);
    const auto humans = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::human));
    const std::size_t machines = labels.size() - humans;
    if (k < 2) throw InvalidArgument("cross validation needs at least two folds");
    if (humans < k || machines < k) {
        throw InvalidArgument(std::to_string(k) + "-fold cross validation needs at least " + std::to_string(k) +
                              " rows per class (have " + std::to_string(humans) + " human, " +
                              std::to_string(machines) + " machine)");
    }

    EvalReport report;
    report.folds = k;
    report.fold_seed = seed;
    report.solver = config;
    report.fold_of_row = stratified_folds(labels, k, seed);
    report.scores.assign(labels.size(), 0.0);

    for (std::size_t f = 0; f < k; ++f) {
        std::vector<std::size_t> train_rows_idx;
        std::vector<std::size_t> test_rows_idx;
        for (std::size_t r = 0; r < labels.size(); ++r) {
            (report.fold_of_row[r] == f ? test_rows_idx : train_rows_idx).push_back(r);
        }
        const auto model = train_rows(matrix, train_rows_idx, labels, config);
        std::vector<double> fold_scores;
        std::vector<Label> fold_labels;
        for (auto r : test_rows_idx) {
            const double s = predict_score(model, matrix.rows[r].values);
            report.scores[r] = s;
            fold_scores.push_back(s);
            fold_labels.push_back(labels[r]);
        }
        FoldResult fr;
        fr.test_rows = test_rows_idx.size();
        fr.accuracy = fold_accuracy(fold_scores, fold_labels);
        fr.eer = equal_error_rate(fold_scores, fold_labels);
        report.per_fold.push_back(fr);
    }

    report.confusion = confusion_at_zero(report.scores, labels);
    report.accuracy = report.confusion.accuracy();
    report.eer = equal_error_rate(report.scores, labels);
    for (const auto& fr : report.per_fold) {
        report.mean_fold_accuracy += fr.accuracy;
        report.mean_fold_eer += fr.eer;
    }
    report.mean_fold_accuracy /= static_cast<double>(k);
    report.mean_fold_eer /= static_cast<double>(k);
    return report;
}

std::vector<FeatureRanking> rank_pos_pairs(const corpus::FeatureMatrix& matrix, std::size_t k,
                                           const SolverConfig& config, std::uint64_t seed, unsigned jobs) {
    matrix.validate();
    const std::size_t d = matrix.num_features();
    std::vector<FeatureRanking> out(d);
    std::vector<std::string> errors(d);
    auto work = [&](std::size_t worker, std::size_t stride) {
        for (std::size_t c = worker; c < d; c += stride) {
            try {
                const auto report = cross_validate(matrix.select_columns({c}), k, config, seed);
                out[c] = {matrix.feature_names[c], report.accuracy, report.eer};
            } catch (const std::exception& e) {
                errors[c] = e.what();
            }
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, d));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    }
    for (const auto& e : errors) {
        if (!e.empty()) throw InvalidArgument(e);
    }
    std::sort(out.begin(), out.end(), [](const FeatureRanking& a, const FeatureRanking& b) {
        if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
        if (a.eer != b.eer) return a.eer < b.eer;
        return a.feature < b.feature;
    });
    return out;
}

json to_json(const SolverConfig& config) {
    return json{{"solver", to_string(config.solver)},
                {"c", config.c},
                {"epochs", config.epochs},
                {"seed", config.seed}};
}

SolverConfig solver_config_from_json(const json& j) {
    SolverConfig c;
    auto s = parse_solver(j.at("solver").get<std::string>());
    if (!s) throw InvalidArgument("unknown solver in model file");
    c.solver = *s;
    c.c = j.at("c").get<double>();
    c.epochs = j.at("epochs").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

json to_json(const EvalReport& report) {
    json folds = json::array();
    for (const auto& f : report.per_fold) {
        folds.push_back({{"test_rows", f.test_rows}, {"accuracy", f.accuracy}, {"eer", f.eer}});
    }
    return json{{"folds", report.folds},
                {"fold_seed", report.fold_seed},
                {"solver", to_json(report.solver)},
                {"rows", report.scores.size()},
                {"accuracy", report.accuracy},
                {"eer", report.eer},
                {"mean_fold_accuracy", report.mean_fold_accuracy},
                {"mean_fold_eer", report.mean_fold_eer},
                {"confusion",
                 {{"tp", report.confusion.tp},
                  {"fp", report.confusion.fp},
                  {"tn", report.confusion.tn},
                  {"fn", report.confusion.fn}}},
                {"per_fold", std::move(folds)}};
}

json to_json(const std::vector<FeatureRanking>& ranking) {
    json out = json::array();
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        out.push_back({{"rank", i + 1},
                       {"pair", ranking[i].feature},
                       {"accuracy", ranking[i].accuracy},
                       {"eer", ranking[i].eer}});
    }
    return out;
}

void save_model(const LinearModel& model, const std::string& path) {
    model.validate();
    json scaling = json::array();
    for (const auto& s : model.scaling) scaling.push_back(json::array({s.mean, s.sd}));
    json j{{"format", "paracoh-linear-model"},
           {"version", 1},
           {"solver", to_json(model.solver)},
           {"tag_set_id", model.tag_set_id},
           {"feature_names", model.feature_names},
           {"scaling", std::move(scaling)},
           {"weights", model.weights},
           {"bias", model.bias}};
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write model file: " + path);
    out << j.dump(1) << '\n';
    if (!out) throw ResourceError("write failed: " + path);
}

LinearModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open model file: " + path);
    try {
        const json j = json::parse(in);
        if (j.at("format") != "paracoh-linear-model") throw ParseError(path, "format", "not a linear model file");
        LinearModel m;
        m.solver = solver_config_from_json(j.at("solver"));
        m.tag_set_id = j.at("tag_set_id").get<std::string>();
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        for (const auto& s : j.at("scaling")) m.scaling.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
        m.weights = j.at("weights").get<std::vector<double>>();
        m.bias = j.at("bias").get<double>();
        m.validate();
        return m;
    } catch (const json::exception& e) {
        throw ParseError(path, "json", e.what());
    }
}

}  // namespace paracoh::classify
