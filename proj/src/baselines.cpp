#include "paracoh/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "paracoh/error.hpp"
#include "paracoh/strings.hpp"

namespace paracoh::baselines {

FrequencySpectrum::FrequencySpectrum(const std::map<std::string, std::size_t>& counts) {
    for (const auto& [word, c] : counts) {
        if (c == 0) continue;
        ranked_.emplace_back(word, c);
        counts_.emplace(word, c);
        total_ += c;
    }
    std::stable_sort(ranked_.begin(), ranked_.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
}

FrequencySpectrum FrequencySpectrum::of(const nlp::ProcessedParagraph& paragraph) {
    std::map<std::string, std::size_t> counts;
    for (const auto& s : paragraph.sentences) {
        for (const auto& t : s.tokens) {
            const bool wordlike = std::any_of(t.surface.begin(), t.surface.end(),
                                              [](unsigned char c) { return std::isalnum(c) != 0; });
            if (wordlike) ++counts[to_lower(t.surface)];
        }
    }
    return FrequencySpectrum(counts);
}

std::size_t FrequencySpectrum::count(const std::string& word) const {
    auto it = counts_.find(word);
    return it == counts_.end() ? 0 : it->second;
}

ZipfFit fit_zipf(const FrequencySpectrum& spectrum) {
    const auto& ranked = spectrum.ranked();
    if (ranked.size() < 2) throw InvalidArgument("zipf fit needs at least two distinct word types");
    const auto n = static_cast<double>(ranked.size());
    std::vector<double> x(ranked.size());
    std::vector<double> y(ranked.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        x[i] = std::log(static_cast<double>(i + 1));
        y[i] = std::log(static_cast<double>(ranked[i].second));
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    ZipfFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.rms_residual = std::sqrt(ss_res / n);
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

std::vector<double> zipf_features(const nlp::ProcessedParagraph& paragraph) {
    const auto fit = fit_zipf(FrequencySpectrum::of(paragraph));
    return {fit.slope, fit.intercept, fit.rms_residual, fit.r_squared};
}

const std::vector<std::string>& zipf_feature_names() {
    static const std::vector<std::string> names{"zipf_slope", "zipf_intercept", "zipf_rms_residual", "zipf_r2"};
    return names;
}

std::vector<std::string> hybrid_ngrams(const nlp::ProcessedParagraph& paragraph, std::size_t n,
                                       const std::unordered_set<std::string>& function_words) {
    if (n < 1 || n > 3) throw InvalidArgument("n-gram order must be 1, 2 or 3");
    std::vector<std::string> out;
    for (const auto& s : paragraph.sentences) {
        std::vector<std::string> units;
        for (const auto& t : s.tokens) {
            auto lower = to_lower(t.surface);
            units.push_back(function_words.count(lower) ? std::move(lower) : t.pos);
        }
        if (units.empty()) continue;
        const std::size_t width = std::min(n, units.size());
        for (std::size_t i = 0; i + width <= units.size(); ++i) {
            std::string gram = units[i];
            for (std::size_t k = 1; k < width; ++k) gram += " " + units[i + k];
            out.push_back(std::move(gram));
        }
    }
    return out;
}

PosNgramVocabulary PosNgramVocabulary::fit(const std::vector<nlp::ProcessedParagraph>& training, std::size_t n,
                                           std::unordered_set<std::string> function_words) {
    PosNgramVocabulary v;
    v.n_ = n;
    v.function_words_ = std::move(function_words);
    for (const auto& p : training) {
        for (auto& g : hybrid_ngrams(p, n, v.function_words_)) v.grams_.push_back(std::move(g));
    }
    std::sort(v.grams_.begin(), v.grams_.end());
    v.grams_.erase(std::unique(v.grams_.begin(), v.grams_.end()), v.grams_.end());
    return v;
}

std::vector<std::string> PosNgramVocabulary::feature_names() const {
    auto names = grams_;
    names.emplace_back(kOutOfVocabulary);
    return names;
}

std::vector<double> PosNgramVocabulary::features(const nlp::ProcessedParagraph& paragraph) const {
    const auto grams = hybrid_ngrams(paragraph, n_, function_words_);
    if (grams.empty()) throw InvalidArgument("paragraph '" + paragraph.id + "' has no tokens");
    std::vector<double> counts(grams_.size() + 1, 0.0);
    for (const auto& g : grams) {
        auto it = std::lower_bound(grams_.begin(), grams_.end(), g);
        const std::size_t idx =
            (it != grams_.end() && *it == g) ? static_cast<std::size_t>(it - grams_.begin()) : grams_.size();
        counts[idx] += 1.0;
    }
    const auto total = static_cast<double>(grams.size());
    for (auto& c : counts) c /= total;
    return counts;
}

std::vector<double> pos_ngram_features(const nlp::ProcessedParagraph& paragraph, const PosNgramVocabulary& vocabulary) {
    return vocabulary.features(paragraph);
}

double intertextual_distance(const FrequencySpectrum& a, const FrequencySpectrum& b) {
    if (a.total() == 0 || b.total() == 0) throw InvalidArgument("intertextual distance of an empty spectrum");
    const FrequencySpectrum& small = a.total() <= b.total() ? a : b;
    const FrequencySpectrum& large = a.total() <= b.total() ? b : a;
    const double scale = static_cast<double>(small.total()) / static_cast<double>(large.total());
    double sum = 0.0;
    for (const auto& [word, c] : small.ranked()) {
        sum += std::abs(static_cast<double>(c) - static_cast<double>(large.count(word)) * scale);
    }
    for (const auto& [word, c] : large.ranked()) {
        if (small.count(word) == 0) sum += static_cast<double>(c) * scale;
    }
    const double d = sum / (2.0 * static_cast<double>(small.total()));
    return std::clamp(d, 0.0, 1.0);
}

corpus::Label nearest_neighbor_classify(const FrequencySpectrum& candidate,
                                        const std::vector<std::pair<FrequencySpectrum, corpus::Label>>& training) {
    if (training.empty()) throw InvalidArgument("nearest neighbor needs training spectra");
    std::size_t best = 0;
    double best_d = intertextual_distance(candidate, training[0].first);
    for (std::size_t i = 1; i < training.size(); ++i) {
        const double d = intertextual_distance(candidate, training[i].first);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return training[best].second;
}

}  // namespace paracoh::baselines
