#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "paracoh/error.hpp"
#include "paracoh/rng.hpp"
#include "paracoh/strings.hpp"

using namespace paracoh;

TEST(Strings, LowerAndTrim) {
    EXPECT_EQ(to_lower("MiXeD Case"), "mixed case");
    EXPECT_EQ(trim("  a b \t\n"), "a b");
    EXPECT_EQ(trim(" \t "), "");
    EXPECT_TRUE(is_blank("\n \t"));
    EXPECT_FALSE(is_blank(" x "));
}

TEST(Strings, SplitKeepsEmptyFields) {
    EXPECT_EQ(split("a\t\tb", '\t'), (std::vector<std::string>{"a", "", "b"}));
    EXPECT_EQ(split("", ','), (std::vector<std::string>{""}));
    EXPECT_EQ(split("x,", ','), (std::vector<std::string>{"x", ""}));
}

TEST(Strings, FormatDoubleRoundTripsExactly) {
    Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(rng.below(20)) - 10.0);
        double back = 0.0;
        ASSERT_TRUE(parse_double(format_double(v), back));
        EXPECT_EQ(back, v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(1.0 / 3.0), "0.3333333333333333");
}

TEST(Strings, ParseDoubleIsStrict) {
    double v = 0.0;
    EXPECT_TRUE(parse_double("+2.5", v));
    EXPECT_EQ(v, 2.5);
    EXPECT_TRUE(parse_double("-1e-3", v));
    EXPECT_EQ(v, -1e-3);
    EXPECT_FALSE(parse_double("", v));
    EXPECT_FALSE(parse_double("abc", v));
    EXPECT_FALSE(parse_double("1.5x", v));
    EXPECT_FALSE(parse_double(" 1", v));
    EXPECT_FALSE(parse_double("inf", v));
    EXPECT_FALSE(parse_double("nan", v));
}

TEST(Strings, ReadWordList) {
    const auto path = std::filesystem::temp_directory_path() / "paracoh_words.txt";
    {
        std::ofstream out(path);
        out << "# comment\n  alpha  \n\nbeta\n";
    }
    EXPECT_EQ(read_word_list(path.string()), (std::vector<std::string>{"alpha", "beta"}));
    std::filesystem::remove(path);
    EXPECT_THROW(read_word_list(path.string()), ResourceError);
}

TEST(Rng, DeterministicAndInRange) {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.below(7);
        EXPECT_EQ(x, b.below(7));
        EXPECT_LT(x, 7u);
        const double u = a.uniform();
        EXPECT_EQ(u, b.uniform());
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Rng, ShuffleIsAPermutation) {
    std::vector<int> v(50);
    for (int i = 0; i < 50; ++i) v[i] = i;
    Rng rng(9);
    rng.shuffle(std::span(v));
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
    EXPECT_NE(v, sorted);
}
