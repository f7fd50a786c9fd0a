#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "paracoh/corpus.hpp"

namespace paracoh::classify {

enum class Solver { logistic, linear_svm };

std::string_view to_string(Solver s);
// "logistic" or "linear-svm" (also "svm").
std::optional<Solver> parse_solver(std::string_view s);

struct SolverConfig {
    Solver solver = Solver::logistic;
    double c = 1.0;  // inverse L2 strength: lambda = 1 / (C * rows)
    int epochs = 20;
    std::uint64_t seed = 1;

    void validate() const;
    bool operator==(const SolverConfig&) const = default;
};

struct FeatureScaling {
    double mean = 0.0;
    double sd = 1.0;  // stored as max(sd, kMinSd)

    bool operator==(const FeatureScaling&) const = default;
};

inline constexpr double kMinSd = 1e-12;

// Positive score means machine-translated.
struct LinearModel {
    std::vector<std::string> feature_names;
    std::vector<double> weights;  // in standardized space
    double bias = 0.0;
    std::vector<FeatureScaling> scaling;
    SolverConfig solver;
    std::string tag_set_id;  // empty when unknown

    void validate() const;
    bool operator==(const LinearModel&) const = default;
};

// Standardizes the columns, then runs epoch-based SGD on the L2-regularized
// logistic or hinge loss, shuffling rows each epoch with the seed.
// Throws InvalidArgument on unlabeled rows, fewer than two rows or one class.
LinearModel train(const corpus::FeatureMatrix& matrix, const SolverConfig& config);

double predict_score(const LinearModel& model, std::span<const double> values);

// Threshold sweep at midpoints between distinct scores plus both infinities;
// the rate of humans scored machine (false positives) and of machines scored
// human (false negatives) are traced and the EER is read at their crossing,
// interpolated linearly between adjacent thresholds.
double equal_error_rate(std::span<const double> scores, std::span<const corpus::Label> labels);

struct Confusion {
    std::size_t tp = 0;  // machine scored > 0
    std::size_t fp = 0;  // human scored > 0
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    double accuracy() const;
    bool operator==(const Confusion&) const = default;
};

Confusion confusion_at_zero(std::span<const double> scores, std::span<const corpus::Label> labels);

struct FoldResult {
    std::size_t test_rows = 0;
    double accuracy = 0.0;
    double eer = 0.0;

    bool operator==(const FoldResult&) const = default;
};

struct EvalReport {
    std::size_t folds = 0;
    std::uint64_t fold_seed = 0;
    SolverConfig solver;
    double accuracy = 0.0;  // pooled test predictions
    double eer = 0.0;       // pooled test scores
    double mean_fold_accuracy = 0.0;
    double mean_fold_eer = 0.0;
    Confusion confusion;
    std::vector<FoldResult> per_fold;
    std::vector<std::size_t> fold_of_row;
    std::vector<double> scores;  // pooled out-of-fold scores, row order

    bool operator==(const EvalReport&) const = default;
};

// Stratified fold index for each row: each class is shuffled with the seed and
// dealt round-robin, so per-fold class counts differ by at most one.
std::vector<std::size_t> stratified_folds(std::span<const corpus::Label> labels, std::size_t k, std::uint64_t seed);

// k-fold cross validation; scaling is refit on each training fold.
// Requires every row labeled and at least k rows per class.
EvalReport cross_validate(const corpus::FeatureMatrix& matrix, std::size_t k, const SolverConfig& config,
                          std::uint64_t seed);

struct FeatureRanking {
    std::string feature;
    double accuracy = 0.0;
    double eer = 0.0;

    bool operator==(const FeatureRanking&) const = default;
};

// Cross-validates each column alone and sorts by accuracy (desc), then EER
// (asc), then feature name. `jobs` workers evaluate columns in parallel; the
// result does not depend on it.
std::vector<FeatureRanking> rank_pos_pairs(const corpus::FeatureMatrix& matrix, std::size_t k,
                                           const SolverConfig& config, std::uint64_t seed, unsigned jobs = 1);

nlohmann::json to_json(const SolverConfig& config);
SolverConfig solver_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EvalReport& report);
nlohmann::json to_json(const std::vector<FeatureRanking>& ranking);

void save_model(const LinearModel& model, const std::string& path);
LinearModel load_model(const std::string& path);

}  // namespace paracoh::classify
