#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "paracoh/error.hpp"
#include "paracoh/tagger.hpp"
#include "paracoh/tagset.hpp"

using namespace paracoh;
using namespace paracoh::nlp;

namespace {

const TagSet& ptb() {
    static const TagSet ts = load_tag_set(std::string(PARACOH_DATA_DIR) + "/tagsets/ptb44.txt");
    return ts;
}

const std::vector<TaggedSentence>& toy() {
    static const auto c = read_tagged_corpus(std::string(PARACOH_FIXTURES) + "/toy_tagged.tsv");
    return c;
}

std::vector<std::string> words(std::initializer_list<const char*> w) { return {w.begin(), w.end()}; }

}  // namespace

TEST(TaggedCorpus, ParsesSentencesAndComments) {
    EXPECT_EQ(toy().size(), 10u);
    const auto c = parse_tagged_corpus("# header\nThe\tDT\ndog\tNN\n\n\nIt\tPRP\r\nran\tVBD\n");
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0], (TaggedSentence{{"The", "DT"}, {"dog", "NN"}}));
    EXPECT_EQ(c[1][1], (TaggedToken{"ran", "VBD"}));
    EXPECT_TRUE(parse_tagged_corpus("").empty());
}

TEST(TaggedCorpus, Errors) {
    EXPECT_THROW(parse_tagged_corpus("The DT\n"), ParseError);
    EXPECT_THROW(parse_tagged_corpus("The\t\n"), ParseError);
    EXPECT_THROW(read_tagged_corpus("/nonexistent/tagged.tsv"), ResourceError);
}

TEST(Tagger, ToyCorpusRetagsItself) {
    const auto model = train_tagger(toy(), ptb(), 5, 1);
    EXPECT_GE(tagging_accuracy(toy(), model), 0.95);
    EXPECT_EQ(model.iterations, 5);
    EXPECT_EQ(model.tag_set_id, ptb().id());
    EXPECT_EQ(model.training_sentences, 10u);
    EXPECT_EQ(model.heldout_sentences, 1u);
}

TEST(Tagger, DeterministicGivenSeed) {
    const auto a = train_tagger(toy(), ptb(), 5, 7);
    const auto b = train_tagger(toy(), ptb(), 5, 7);
    EXPECT_EQ(a.weights, b.weights);
    EXPECT_EQ(a, b);
}

TEST(Tagger, UnknownTagIsNamed) {
    auto bad = toy();
    bad[3][1].tag = "XYZ";
    try {
        train_tagger(bad, ptb(), 5, 1);
        FAIL();
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("XYZ"), std::string::npos);
    }
    EXPECT_THROW(train_tagger({}, ptb(), 5, 1), InvalidArgument);
    EXPECT_THROW(train_tagger(toy(), ptb(), 0, 1), InvalidArgument);
}

TEST(Tagger, WeightsOnlyForTagSetMembers) {
    const auto model = train_tagger(toy(), ptb(), 5, 1);
    for (const auto& [feature, entries] : model.weights) {
        for (const auto& [t, w] : entries) {
            EXPECT_LT(t, model.tags.size());
            EXPECT_NE(w, 0.0);
        }
    }
    EXPECT_EQ(model.tags, ptb().tags());
}

TEST(Tag, NominalExercises) {
    const auto model = train_tagger(toy(), ptb(), 5, 1);
    const auto tokens = words({"The", "teacher", "grades", "exercises", "."});
    const auto tags = tag(tokens, model);
    ASSERT_EQ(tags.size(), 5u);
    EXPECT_EQ(tags[3], "NNS");
}

TEST(Tag, EmptyAndRepeated) {
    const auto model = train_tagger(toy(), ptb(), 5, 1);
    EXPECT_TRUE(tag(std::vector<std::string>{}, model).empty());
    const auto tokens = words({"Strange", "zorbles", "wander", "happily", "."});
    const auto first = tag(tokens, model);
    EXPECT_EQ(first.size(), tokens.size());
    EXPECT_EQ(first, tag(tokens, model));
    for (const auto& t : first) EXPECT_TRUE(ptb().contains(t));
}

TEST(Tagger, SaveLoadRoundTrip) {
    const auto model = train_tagger(toy(), ptb(), 3, 2);
    const auto path = (std::filesystem::temp_directory_path() / "paracoh_tagger.json").string();
    save_tagger(model, path);
    const auto back = load_tagger(path);
    EXPECT_EQ(back.weights, model.weights);
    EXPECT_EQ(back.tags, model.tags);
    EXPECT_EQ(back.tag_rank, model.tag_rank);
    EXPECT_EQ(back.tag_set_id, model.tag_set_id);
    EXPECT_EQ(back.iterations, model.iterations);
    const auto tokens = words({"Students", "grade", "the", "exercises", "."});
    EXPECT_EQ(tag(tokens, back), tag(tokens, model));
    std::filesystem::remove(path);
    EXPECT_THROW(load_tagger(path), ResourceError);
}

TEST(Tagger, ShippedModelIsUsable) {
    const auto model = load_tagger(PARACOH_DEFAULT_TAGGER);
    EXPECT_EQ(model.tag_set_id, ptb().id());
    EXPECT_GT(model.heldout_accuracy, 0.8);
    const auto tags = tag(words({"The", "computer", "grades", "exercises", "."}), model);
    EXPECT_EQ(tags, (std::vector<std::string>{"DT", "NN", "VBZ", "NNS", "."}));
}
