// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "paracoh/baselines.hpp"
#include "paracoh/classify.hpp"
#include "paracoh/coherence.hpp"
#include "paracoh/corpus.hpp"
#include "paracoh/hungarian.hpp"
#include "paracoh/pipeline.hpp"
#include "paracoh/rng.hpp"
#include "paracoh/tagger.hpp"
#include "paracoh/tagset.hpp"
#include "paracoh/wordnet.hpp"
#include "synthetic.hpp"

using namespace paracoh;
using corpus::Label;
using nlp::ProcessedParagraph;
using nlp::Sentence;
using nlp::Token;

namespace {

const std::string kFixtures = PARACOH_FIXTURES;
const std::string kData = PARACOH_DATA_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Sentence sentence(std::initializer_list<std::array<const char*, 3>> tokens) {
    Sentence s;
    for (const auto& t : tokens) s.tokens.push_back({t[0], t[1], t[2]});
    return s;
}

// 1. Worked example.
Outcome worked_example() {
    const auto graph = wordnet::load_wordnet(kFixtures + "/mini-wordnet");
    const auto h1 = sentence({{"The", "DT", "the"},
                              {"third", "JJ", "third"},
                              {"idea", "NN", "idea"},
                              {"that", "WDT", "that"},
                              {"we", "PRP", "we"},
                              {"have", "VBP", "have"},
                              {"is", "VBZ", "be"},
                              {"instant", "JJ", "instant"},
                              {"feedback", "NN", "feedback"},
                              {".", ".", "."}});
    const auto h2 = sentence({{"With", "IN", "with"},
                              {"instant", "JJ", "instant"},
                              {"feedback", "NN", "feedback"},
                              {",", ",", ","},
                              {"the", "DT", "the"},
                              {"computer", "NN", "computer"},
                              {"grades", "VBZ", "grade"},
                              {"exercises", "NNS", "exercise"},
                              {".", ".", "."}});
    const auto h4 = sentence({{"Students", "NN", "student"},
                              {"submit", "VBP", "submit"},
                              {"their", "PRP$", "their"},
                              {"exercises", "NNS", "exercise"},
                              {"online", "RB", "online"},
                              {".", ".", "."}});
    using coherence::Side;
    const coherence::PosPair nns("NNS", "NNS");
    const auto m24 = coherence::match_words(coherence::filter_by_pos(h2, nns, Side::left),
                                            coherence::filter_by_pos(h4, nns, Side::right), graph, 0.0);
    const double raw24 = coherence::pos_mat_raw(m24);
    const double pen24 = coherence::penalty(m24, 3.0);
    const double upd24 = coherence::pos_mat(m24, 3.0);

    const coherence::PosPair jj("JJ", "JJ");
    const auto m12 = coherence::match_words(coherence::filter_by_pos(h1, jj, Side::left),
                                            coherence::filter_by_pos(h2, jj, Side::right), graph, 0.0);
    const double upd12_e2 = coherence::pos_mat(m12, 2.0);
    const double upd12_e3 = coherence::pos_mat(m12, 3.0);

    Outcome o;
    o.pass = raw24 == 1.0 && pen24 == 0.0 && upd24 == 1.0 && upd12_e2 == 0.875 && upd12_e3 == 0.9375;
    o.detail = "POSMat(H2,H4)=" + fmt(raw24) + " penalty=" + fmt(pen24) + " updated=" + fmt(upd24) +
               "; adjectives exp2=" + fmt(upd12_e2) + " exp3=" + fmt(upd12_e3);
    return o;
}

// 2. Hungarian vs exhaustive search.
double brute_force_max(const coherence::ValueMatrix& v) {
    const std::size_t r = v.rows(), c = v.cols();
    const bool transpose = r > c;
    const std::size_t small = transpose ? c : r, large = transpose ? r : c;
    std::vector<std::size_t> perm(large);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1e300;
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < small; ++i) total += transpose ? v(perm[i], i) : v(i, perm[i]);
        best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Outcome hungarian_oracle() {
    Rng rng(20240501);
    std::size_t mismatches = 0;
    const std::size_t trials = 1500;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t r = 1 + rng.below(6), c = 1 + rng.below(6);
        coherence::ValueMatrix v(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j) v(i, j) = static_cast<double>(rng.below(1025)) / 1024.0;
        }
        const auto assignment = coherence::assign_hungarian(v, true);
        double total = 0.0;
        std::set<std::size_t> rows, cols;
        for (const auto& a : assignment) {
            total += v(a.row, a.col);
            rows.insert(a.row);
            cols.insert(a.col);
        }
        const bool complete = assignment.size() == std::min(r, c) && rows.size() == assignment.size() &&
                              cols.size() == assignment.size();
        if (!complete || total != brute_force_max(v)) ++mismatches;
    }
    return {mismatches == 0, std::to_string(trials) + " matrices up to 6x6, " + std::to_string(mismatches) +
                                 " mismatches"};
}

// 3. Path similarity vs an independent BFS over the fixture's hand-written graph.
struct OracleGraph {
    // synset -> hypernym, "" for roots.
    std::map<std::string, std::string> parent;
    std::map<std::string, std::vector<std::string>> senses;  // lemma -> synsets

    std::optional<int> distance(const std::string& a, const std::string& b) const {
        std::map<std::string, std::vector<std::string>> adj;
        for (const auto& [child, p] : parent) {
            const std::string up = p.empty() ? "<root>" : p;
            adj[child].push_back(up);
            adj[up].push_back(child);
        }
        std::map<std::string, int> dist;
        std::deque<std::string> queue;
        for (const auto& s : senses.at(a)) {
            dist[s] = 0;
            queue.push_back(s);
        }
        while (!queue.empty()) {
            auto cur = queue.front();
            queue.pop_front();
            for (const auto& next : adj[cur]) {
                if (!dist.count(next)) {
                    dist[next] = dist[cur] + 1;
                    queue.push_back(next);
                }
            }
        }
        std::optional<int> best;
        for (const auto& s : senses.at(b)) {
            if (dist.count(s) && (!best || dist[s] < *best)) best = dist[s];
        }
        return best;
    }
};

Outcome path_similarity_oracle() {
    const auto graph = wordnet::load_wordnet(kFixtures + "/mini-wordnet");
    OracleGraph nouns;
    nouns.parent = {{"entity", ""},       {"object", "entity"}, {"animal", "object"},   {"dog", "animal"},
                    {"cat", "animal"},    {"tool", "object"},   {"hammer", "tool"},
                    {"abstraction", ""}};
    nouns.senses = {{"entity", {"entity"}},   {"object", {"object"}},
                    {"animal", {"animal"}},   {"beast", {"animal"}},
                    {"dog", {"dog"}},         {"domestic_dog", {"dog"}},
                    {"cat", {"cat"}},
                    {"tool", {"tool"}},       {"hammer", {"hammer"}},
                    {"abstraction", {"abstraction"}}, {"abstract_entity", {"abstraction"}}};
    OracleGraph verbs;
    verbs.parent = {{"move", ""}, {"run", "move"}, {"walk", "move"}, {"pound", "move"}};
    verbs.senses = {{"move", {"move"}}, {"go", {"move"}},       {"run", {"run"}},
                    {"walk", {"walk"}}, {"hammer", {"pound"}}, {"pound", {"pound"}}};

    std::size_t checked = 0, mismatches = 0;
    wordnet::PathSimilarity cached(graph, 4);
    auto check = [&](const OracleGraph& o, const char* tag) {
        for (const auto& [a, sa] : o.senses) {
            for (const auto& [b, sb] : o.senses) {
                double expected = 1.0;
                if (a != b) {
                    auto d = o.distance(a, b);
                    expected = 1.0 / (1.0 + *d);
                }
                const auto got = wordnet::path_similarity(a, tag, b, tag, graph);
                const auto got_cached = cached(a, tag, b, tag);
                ++checked;
                if (!got.value || *got.value != expected || got_cached != got) ++mismatches;
            }
        }
    };
    check(nouns, "NN");
    check(verbs, "VB");
    // Identical lemmas score 1.0 even outside the fixture's lexicon.
    const bool identical = wordnet::path_similarity("feedback", "NN", "feedback", "NN", graph).value == 1.0;
    return {mismatches == 0 && identical && checked == 157,
            std::to_string(checked) + " lemma pairs, " + std::to_string(mismatches) + " mismatches"};
}

// 4. Bounds and symmetry.
Outcome bounds_and_symmetry() {
    const auto graph = wordnet::load_wordnet(kFixtures + "/mini-wordnet");
    wordnet::PathSimilarity similarity(graph);
    const std::vector<std::string> lemmas{"dog",    "cat",  "animal", "beast", "hammer", "tool", "entity",
                                          "object", "run",  "walk",   "move",  "go",     "pound", "idea",
                                          "blue",   "abstraction"};
    const std::vector<std::string> tags{"NN", "NNS", "VB", "VBZ", "JJ", "DT"};
    Rng rng(4242);
    auto random_sentence = [&] {
        Sentence s;
        const auto n = 1 + rng.below(9);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& l = lemmas[rng.below(lemmas.size())];
            s.tokens.push_back({l, tags[rng.below(tags.size())], l});
        }
        return s;
    };
    std::size_t violations = 0, pairs = 0;
    for (std::size_t t = 0; t < 10000; ++t) {
        const auto a = random_sentence(), b = random_sentence();
        const coherence::PosPair pair(tags[rng.below(tags.size())], tags[rng.below(tags.size())]);
        const auto left = coherence::filter_by_pos(a, pair, coherence::Side::left);
        const auto right = coherence::filter_by_pos(b, pair, coherence::Side::right);
        const auto tau = rng.below(2) ? 0.0 : 0.3;
        const auto m = coherence::match_words(left, right, similarity, tau);
        const auto swapped = coherence::match_words(right, left, similarity, tau);
        for (double e : {2.0, 3.0}) {
            const double v = coherence::pos_mat(m, e);
            if (!(v >= 0.0 && v <= 1.0)) ++violations;
            if (v != coherence::pos_mat(swapped, e)) ++violations;
            if (!m.left_kept.empty() || !m.right_kept.empty()) {
                const double p = coherence::penalty(m, e);
                if (!(p >= 0.0 && p <= 0.5)) ++violations;
            }
        }
        // Self pairs: swapping whole sentences is the same problem mirrored.
        const coherence::PosPair self(pair.first(), pair.first());
        const auto ms = coherence::match_words(coherence::filter_by_pos(a, self, coherence::Side::left),
                                               coherence::filter_by_pos(b, self, coherence::Side::right),
                                               similarity, tau);
        const auto mr = coherence::match_words(coherence::filter_by_pos(b, self, coherence::Side::left),
                                               coherence::filter_by_pos(a, self, coherence::Side::right),
                                               similarity, tau);
        if (coherence::pos_mat(ms) != coherence::pos_mat(mr)) ++violations;
        ++pairs;
    }
    coherence::CoherenceConfig config;
    std::size_t paragraphs = 0;
    for (std::size_t t = 0; t < 1000; ++t) {
        ProcessedParagraph p;
        const auto m = 1 + rng.below(5);
        for (std::size_t i = 0; i < m; ++i) p.sentences.push_back(random_sentence());
        const coherence::PosPair pair(tags[rng.below(tags.size())], tags[rng.below(tags.size())]);
        const double v = coherence::para_coh(p, pair, similarity, config);
        if (!(v >= 0.0 && v <= 1.0)) ++violations;
        ++paragraphs;
    }
    return {violations == 0, std::to_string(pairs) + " sentence pairs, " + std::to_string(paragraphs) +
                                 " paragraphs, " + std::to_string(violations) + " violations"};
}

// 5. Feature dimensionality.
Outcome dimensionality() {
    const auto tag_set = load_tag_set(kData + "/tagsets/ptb44.txt");
    const auto graph = wordnet::load_wordnet(kData + "/wordnet-lite");
    const auto tagger = nlp::load_tagger(PARACOH_DEFAULT_TAGGER);
    const coherence::CoherenceConfig config;
    const auto sample = corpus::load_corpus(kData + "/sample/corpus.tsv");
    bool all_990 = true;
    bool nonzero_seen = false;
    for (const auto& entry : sample.entries) {
        const auto p = nlp::process_paragraph(entry, tagger, graph);
        const auto v = coherence::extract_features(p, tag_set, graph, config);
        all_990 = all_990 && v.values.size() == 990;
        nonzero_seen = nonzero_seen || std::any_of(v.values.begin(), v.values.end(), [](double x) { return x > 0; });
    }
    corpus::LabeledParagraph single{"one", "The dog chased the cat across the garden.", std::nullopt, std::nullopt};
    const auto p = nlp::process_paragraph(single, tagger, graph);
    const auto v = coherence::extract_features(p, tag_set, graph, config);
    const bool zeros = p.sentences.size() == 1 && v.values.size() == 990 &&
                       std::all_of(v.values.begin(), v.values.end(), [](double x) { return x == 0.0; });
    return {tag_set.size() == 44 && all_990 && nonzero_seen && zeros,
            std::to_string(tag_set.size()) + " tags, " + std::to_string(coherence::all_pos_pairs(tag_set).size()) +
                " pairs; single-sentence vector all zero: " + (zeros ? "yes" : "no")};
}

// 6. Protocol determinism and stratification.
corpus::FeatureMatrix noisy_matrix(std::size_t rows, std::size_t features, std::uint64_t seed) {
    Rng rng(seed);
    corpus::FeatureMatrix m;
    for (std::size_t f = 0; f < features; ++f) m.feature_names.push_back("F" + std::to_string(f));
    for (std::size_t r = 0; r < rows; ++r) {
        const bool machine = rng.uniform() < 0.4;
        corpus::FeatureRow row{"r" + std::to_string(r), machine ? Label::machine : Label::human, {}};
        for (std::size_t f = 0; f < features; ++f) {
            const double shift = machine ? 0.3 / static_cast<double>(f + 1) : 0.0;
            row.values.push_back(rng.uniform() + shift);
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

Outcome protocol_determinism() {
    const auto m = noisy_matrix(2000, 6, 99);
    classify::SolverConfig solver;
    solver.epochs = 5;
    const auto r1 = classify::to_json(classify::cross_validate(m, 10, solver, 7)).dump();
    const auto r2 = classify::to_json(classify::cross_validate(m, 10, solver, 7)).dump();
    const auto k1 = classify::to_json(classify::rank_pos_pairs(m, 10, solver, 7, 1)).dump();
    const auto k2 = classify::to_json(classify::rank_pos_pairs(m, 10, solver, 7, 3)).dump();

    std::vector<Label> labels;
    for (const auto& row : m.rows) labels.push_back(*row.label);
    const auto folds = classify::stratified_folds(labels, 10, 7);
    std::size_t worst = 0;
    for (auto cls : {Label::human, Label::machine}) {
        const auto total = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), cls));
        for (std::size_t f = 0; f < 10; ++f) {
            std::size_t n = 0;
            for (std::size_t i = 0; i < labels.size(); ++i) n += (folds[i] == f && labels[i] == cls) ? 1 : 0;
            const std::size_t lo = total / 10, hi = (total + 9) / 10;
            worst = std::max(worst, n < lo ? lo - n : (n > hi ? n - hi : 0));
        }
    }
    const bool same = r1 == r2 && k1 == k2;
    return {same && worst == 0, std::string("repeat runs identical: ") + (same ? "yes" : "no") +
                                    "; max per-fold deviation beyond floor/ceil: " + std::to_string(worst)};
}

// 7. Synthetic separation.
struct Separation {
    classify::EvalReport coherence;
    classify::EvalReport zipf;
};

Separation separation_on(const testing::SyntheticGenerator& generator, const testing::SyntheticOptions& options,
                         const nlp::TaggerModel& tagger, const wordnet::SynsetGraph& graph, const TagSet& tag_set) {
    const auto data = generator.generate(options);
    corpus::FeatureMatrix coh;
    coh.feature_names = coherence::feature_names(tag_set);
    corpus::FeatureMatrix zipf;
    zipf.feature_names = baselines::zipf_feature_names();
    wordnet::PathSimilarity similarity(graph);
    const coherence::CoherenceConfig config;
    for (const auto& entry : data.corpus.entries) {
        const auto p = nlp::process_paragraph(entry, tagger, graph);
        coh.rows.push_back({entry.id, entry.label, coherence::extract_features(p, tag_set, similarity, config).values});
        zipf.rows.push_back({entry.id, entry.label, baselines::zipf_features(p)});
    }
    const classify::SolverConfig solver;
    return {classify::cross_validate(coh, 10, solver, 1), classify::cross_validate(zipf, 10, solver, 1)};
}

Outcome synthetic_separation() {
    const auto start = std::chrono::steady_clock::now();
    const auto graph = wordnet::load_wordnet(kData + "/wordnet-lite");
    const auto tag_set = load_tag_set(kData + "/tagsets/ptb44.txt");
    const testing::SyntheticGenerator generator(graph);

    testing::SyntheticOptions train_options;
    train_options.humans = 150;
    train_options.machines = 150;
    train_options.seed = 11;
    const auto tagger = nlp::train_tagger(generator.generate(train_options).tagged, tag_set, 5, 3);

    testing::SyntheticOptions options;
    options.seed = 2024;
    const auto main = separation_on(generator, options, tagger, graph, tag_set);
    // Reported for context only: one sibling per swapped lemma and paragraph.
    options.fixed_rendering = true;
    const auto fixed = separation_on(generator, options, tagger, graph, tag_set);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double coh = main.coherence.accuracy, zipf = main.zipf.accuracy;
    return {coh > 0.65 && coh > zipf,
            "coherence acc " + fmt(coh) + " eer " + fmt(main.coherence.eer) + "; zipf acc " + fmt(zipf) + " eer " +
                fmt(main.zipf.eer) + "; [fixed-rendering variant: coherence " + fmt(fixed.coherence.accuracy) +
                " zipf " + fmt(fixed.zipf.accuracy) + "]; tagger held-out acc " + fmt(tagger.heldout_accuracy) +
                "; " + fmt(seconds) + " s"};
}

// 8. EER vs brute-force sweep.
double oracle_eer(const std::vector<double>& scores, const std::vector<Label>& labels) {
    std::set<double> distinct(scores.begin(), scores.end());
    std::vector<double> sorted(distinct.begin(), distinct.end());
    std::vector<double> thresholds{-INFINITY};
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) thresholds.push_back((sorted[i] + sorted[i + 1]) / 2);
    thresholds.push_back(INFINITY);
    double humans = 0, machines = 0;
    for (auto l : labels) (l == Label::human ? humans : machines) += 1;
    std::vector<double> fpr, fnr;
    for (double t : thresholds) {
        double fp = 0, fn = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (labels[i] == Label::human && scores[i] > t) fp += 1;
            if (labels[i] == Label::machine && !(scores[i] > t)) fn += 1;
        }
        fpr.push_back(fp / humans);
        fnr.push_back(fn / machines);
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double gap = fpr[i] - fnr[i];
        if (gap == 0) return fpr[i];
        if (gap < 0) {
            const double g0 = fpr[i - 1] - fnr[i - 1];
            const double a = g0 / (g0 - gap);
            return fpr[i - 1] + a * (fpr[i] - fpr[i - 1]);
        }
    }
    return NAN;
}

Outcome eer_oracle() {
    Rng rng(8080);
    std::size_t mismatches = 0;
    const std::size_t trials = 1200;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = 2 + rng.below(40);
        std::vector<double> scores(n);
        std::vector<Label> labels(n);
        const bool coarse = rng.below(2) == 0;  // many ties
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = coarse ? static_cast<double>(rng.below(5)) : rng.uniform() * 4 - 2;
            labels[i] = rng.below(2) ? Label::machine : Label::human;
        }
        labels[0] = Label::human;
        labels[1] = Label::machine;
        if (std::abs(classify::equal_error_rate(scores, labels) - oracle_eer(scores, labels)) > 1e-9) ++mismatches;
    }
    const std::vector<double> separated{0.1, 0.2, 0.8, 0.9};
    const std::vector<Label> sep_labels{Label::human, Label::human, Label::machine, Label::machine};
    const std::vector<double> constant{0.5, 0.5, 0.5, 0.5};
    const double sep = classify::equal_error_rate(separated, sep_labels);
    const double con = classify::equal_error_rate(constant, sep_labels);
    return {mismatches == 0 && sep == 0.0 && con == 0.5,
            std::to_string(trials) + " random sets, " + std::to_string(mismatches) + " mismatches; separated " +
                fmt(sep) + ", constant " + fmt(con)};
}

// 9. Baseline sanity.
Outcome baseline_sanity() {
    using baselines::FrequencySpectrum;
    const FrequencySpectrum a({{"apple", 3}, {"pear", 2}, {"plum", 1}});
    const FrequencySpectrum b({{"stone", 4}, {"brick", 1}});
    const double self = baselines::intertextual_distance(a, a);
    const double disjoint = baselines::intertextual_distance(a, b);

    std::map<std::string, std::size_t> counts;
    // 2520 = lcm(1..10), so 2520/rank is an exact integer 1/rank spectrum.
    for (std::size_t r = 1; r <= 10; ++r) counts["w" + std::to_string(r)] = 2520 / r;
    const auto fit = baselines::fit_zipf(FrequencySpectrum(counts));

    ProcessedParagraph p;
    p.id = "p";
    p.sentences.push_back(sentence({{"the", "DT", "the"}, {"cat", "NN", "cat"}, {"sat", "VBD", "sit"}}));
    p.sentences.push_back(sentence({{"a", "DT", "a"}, {"dog", "NN", "dog"}, {"barked", "VBD", "bark"}, {".", ".", "."}}));
    const std::unordered_set<std::string> fw{"the", "a"};
    double worst_sum = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto vocab = baselines::PosNgramVocabulary::fit({p}, n, fw);
        for (const auto& q : {p}) {
            const auto v = vocab.features(q);
            worst_sum = std::max(worst_sum, std::abs(std::accumulate(v.begin(), v.end(), 0.0) - 1.0));
        }
        ProcessedParagraph other = p;
        other.sentences[0].tokens[1].pos = "NNS";
        const auto v = vocab.features(other);
        worst_sum = std::max(worst_sum, std::abs(std::accumulate(v.begin(), v.end(), 0.0) - 1.0));
    }
    return {self == 0.0 && disjoint == 1.0 && std::abs(fit.slope + 1.0) <= 1e-9 && worst_sum <= 1e-12,
            "D(a,a)=" + fmt(self) + " D(disjoint)=" + fmt(disjoint) + " zipf slope=" +
                std::to_string(fit.slope) + " max |sum-1|=" + fmt(worst_sum)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 worked example", worked_example},
        {"2 hungarian oracle", hungarian_oracle},
        {"3 path similarity oracle", path_similarity_oracle},
        {"4 metric bounds and symmetry", bounds_and_symmetry},
        {"5 feature dimensionality", dimensionality},
        {"6 protocol determinism", protocol_determinism},
        {"7 synthetic separation", synthetic_separation},
        {"8 equal error rate oracle", eer_oracle},
        {"9 baseline sanity", baseline_sanity},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
