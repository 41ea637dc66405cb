#include "abst/errors.hpp"
#include "abst/matching.hpp"
#include "abst/prefix_tree.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace abst {
namespace {

MatchingPair pair_of(std::size_t n, std::map<Key, Key> l, std::map<Key, Key> r) {
    return MatchingPair{n, std::move(l), std::move(r)};
}

TEST(Matching, SkewedFive) {
    const auto tree = SearchTree::parse("(3 (2 (1 . .) .) (4 . (5 . .)))");
    const auto m = bst_to_matchings(tree);
    EXPECT_EQ(m, pair_of(5, {{2, 1}, {3, 2}}, {{3, 4}, {4, 5}}));
    EXPECT_EQ(matching_root(m), 3u);
    EXPECT_EQ(matchings_to_bst(m), tree);
    EXPECT_EQ(to_json(m).dump(), R"({"left":[[2,1],[3,2]],"right":[[3,4],[4,5]]})");
}

TEST(Matching, ReweightedFive) {
    const auto tree = SearchTree::parse("(3 (1 . (2 . .)) (4 . (5 . .)))");
    const auto m = bst_to_matchings(tree);
    EXPECT_EQ(m, pair_of(5, {{3, 1}}, {{1, 2}, {3, 4}, {4, 5}}));
    EXPECT_EQ(route(m, 2), (RoutePath{3, 1, 2}));
}

TEST(Matching, SingleNode) {
    const auto m = bst_to_matchings(SearchTree::parse("(1 . .)"));
    EXPECT_TRUE(m.left.empty());
    EXPECT_TRUE(m.right.empty());
    EXPECT_EQ(matching_root(m), 1u);
    EXPECT_EQ(route(m, 1), (RoutePath{1}));
}

TEST(Matching, RejectsInvalidPairs) {
    EXPECT_THROW(matchings_to_bst(pair_of(2, {{1, 2}}, {})), InvalidMatching);
    EXPECT_THROW(validate_matchings(pair_of(2, {}, {{1, 2}, {2, 1}})), InvalidMatching);
    EXPECT_THROW(validate_matchings(pair_of(3, {}, {{1, 2}})), InvalidMatching);  // roots 1 and 3
    EXPECT_THROW(validate_matchings(pair_of(2, {{2, 2}}, {})), InvalidMatching);
    EXPECT_THROW(validate_matchings(pair_of(3, {{3, 1}}, {{1, 1}})), InvalidMatching);
    EXPECT_THROW(validate_matchings(pair_of(3, {{3, 2}}, {{1, 2}})), InvalidMatching);  // two parents
}

TEST(Matching, Route) {
    const auto m = bst_to_matchings(SearchTree::parse("(3 (2 (1 . .) .) (4 . (5 . .)))"));
    EXPECT_EQ(route(m, 5), (RoutePath{3, 4, 5}));
    EXPECT_EQ(route(m, 3), (RoutePath{3}));
    EXPECT_EQ(route(m, 1), (RoutePath{3, 2, 1}));
    EXPECT_THROW(route(m, 6), NotFound);
    EXPECT_THROW(route(m, 0), NotFound);
}

TEST(Matching, JsonRoundTrip) {
    const auto m = bst_to_matchings(SearchTree::parse("(3 (1 . (2 . .)) (4 . (5 . .)))"));
    EXPECT_EQ(matchings_from_json(to_json(m)), m);
    auto doc = nlohmann::json::parse(R"({"n":3,"left":[[2,1]],"right":[[2,3]]})");
    EXPECT_EQ(matchings_to_bst(matchings_from_json(doc)).to_string(), "(2 (1 . .) (3 . .))");
    EXPECT_THROW(matchings_from_json(nlohmann::json::parse(R"({"left":[[2]],"right":[]})")), ParseError);
}

TEST(MatchingProperty, RoundTripAndRouteLength) {
    Rng rng(5);
    for (int c = 0; c < 200; ++c) {
        const std::size_t n = 1 + rng.below(120);
        const auto tree = sfe_to_bst(ProbabilityDistribution::from_weights(oracle::random_weights(rng, n)));
        const auto m = bst_to_matchings(tree);
        ASSERT_NO_THROW(validate_matchings(m));
        ASSERT_EQ(matchings_to_bst(m), tree);
        ASSERT_EQ(m.left.size() + m.right.size(), n - 1);
        for (Key k = 1; k <= n; ++k) {
            const auto path = route(m, k);
            ASSERT_EQ(path.size(), tree.depth_of(k));
            ASSERT_EQ(path.back(), k);
        }
    }
}

}  // namespace
}  // namespace abst
