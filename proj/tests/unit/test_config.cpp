#include <gtest/gtest.h>

#include "paracoh/coherence.hpp"
#include "paracoh/config.hpp"
#include "paracoh/error.hpp"

using namespace paracoh;

TEST(KeyValueConfig, ParsesBothSeparatorsAndComments) {
    const auto cfg = KeyValueConfig::parse("# settings\npenalty_exponent = 2\nmatch_threshold: 0.25\n\n");
    EXPECT_EQ(cfg.get("penalty_exponent"), "2");
    EXPECT_EQ(cfg.get_double("match_threshold"), 0.25);
    EXPECT_FALSE(cfg.get("missing").has_value());
    EXPECT_EQ(cfg.entries().size(), 2u);
}

TEST(KeyValueConfig, LaterKeysWin) {
    EXPECT_EQ(KeyValueConfig::parse("a=1\na=2\n").get("a"), "2");
}

TEST(KeyValueConfig, Errors) {
    try {
        KeyValueConfig::parse("ok = 1\nno separator here\n", "run.cfg");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.file(), "run.cfg");
        EXPECT_EQ(e.where(), "line 2");
    }
    EXPECT_THROW(KeyValueConfig::parse(" = 3\n"), ParseError);
    EXPECT_THROW(KeyValueConfig::parse("x = y\n").get_double("x"), InvalidArgument);
    EXPECT_THROW(KeyValueConfig::load("/nonexistent/paracoh.cfg"), ResourceError);
}

TEST(CoherenceConfig, FromKeyValues) {
    auto kv = KeyValueConfig::parse("penalty_exponent = 2\nmatch_threshold = 0.1\ntag_set_path = tags.txt\nother = 5\n");
    const auto c = coherence::CoherenceConfig::from(kv);
    EXPECT_EQ(c.penalty_exponent, 2.0);
    EXPECT_EQ(c.match_threshold, 0.1);
    EXPECT_EQ(c.tag_set_path, "tags.txt");

    coherence::CoherenceConfig defaults;
    defaults.penalty_exponent = 5;
    EXPECT_EQ(coherence::CoherenceConfig::from(KeyValueConfig::parse(""), defaults).penalty_exponent, 5.0);
    EXPECT_EQ(coherence::CoherenceConfig::from(KeyValueConfig::parse("")).penalty_exponent, 3.0);
}

TEST(CoherenceConfig, RejectsOutOfRange) {
    EXPECT_THROW(coherence::CoherenceConfig::from(KeyValueConfig::parse("penalty_exponent = 0")), InvalidArgument);
    EXPECT_THROW(coherence::CoherenceConfig::from(KeyValueConfig::parse("match_threshold = 1")), InvalidArgument);
    EXPECT_THROW(coherence::CoherenceConfig::from(KeyValueConfig::parse("match_threshold = -0.1")), InvalidArgument);
}
