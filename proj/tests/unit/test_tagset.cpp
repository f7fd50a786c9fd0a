#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "paracoh/error.hpp"
#include "paracoh/tagset.hpp"

using namespace paracoh;

TEST(TagSet, DefaultFileHas44Tags) {
    const auto ts = load_tag_set(std::string(PARACOH_DATA_DIR) + "/tagsets/ptb44.txt");
    EXPECT_EQ(ts.size(), 44u);
    EXPECT_EQ(ts.name(), "ptb44");
    EXPECT_TRUE(ts.contains("NN"));
    EXPECT_TRUE(ts.contains("-LRB-"));
    EXPECT_FALSE(ts.contains("XX"));
    EXPECT_EQ(ts.index_of(ts.tags()[5]), 5u);
    EXPECT_FALSE(ts.index_of("NOPE").has_value());
}

TEST(TagSet, IdDependsOnContentAndOrder) {
    const TagSet a("t", {"NN", "VB"});
    const TagSet b("t", {"VB", "NN"});
    const TagSet c("t", {"NN", "VB"});
    EXPECT_EQ(a.id(), c.id());
    EXPECT_NE(a.id(), b.id());
    EXPECT_EQ(a.id().rfind("t:", 0), 0u);
    EXPECT_NE(TagSet("t", {"NN"}).id(), a.id());
}

TEST(TagSet, Invalid) {
    EXPECT_THROW(TagSet("t", {}), InvalidArgument);
    EXPECT_THROW(TagSet("t", {"NN", "NN"}), InvalidArgument);
    EXPECT_THROW(TagSet("t", {"NN", "XX"}), InvalidArgument);
    EXPECT_THROW(TagSet("t", {"N N"}), InvalidArgument);
    EXPECT_THROW(load_tag_set("/nonexistent/tags.txt"), ResourceError);
}

TEST(TagSet, LoadSkipsBlankLines) {
    const auto path = std::filesystem::temp_directory_path() / "mini_tags.txt";
    {
        std::ofstream out(path);
        out << "NN\n\nVB\n  JJ  \n";
    }
    const auto ts = load_tag_set(path.string());
    EXPECT_EQ(ts.name(), "mini_tags");
    EXPECT_EQ(ts.tags(), (std::vector<std::string>{"NN", "VB", "JJ"}));
    std::filesystem::remove(path);
}
