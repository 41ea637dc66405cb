#pragma once

#include "abst/search_tree.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <map>
#include <vector>

namespace abst {

// A search tree held as two spine matchings: `left` maps a parent port to
// its left child, `right` to its right child. Ports are key ranks 1..n.
struct MatchingPair {
    std::size_t n = 0;
    std::map<Key, Key> left;
    std::map<Key, Key> right;

    friend bool operator==(const MatchingPair&, const MatchingPair&) = default;
};

using RoutePath = std::vector<Key>;

MatchingPair bst_to_matchings(const SearchTree& tree);

// Throws InvalidMatching on a reused port, self loop, cycle, multiple roots,
// or a symmetric-order violation.
SearchTree matchings_to_bst(const MatchingPair& pair);

// Checks the partial-matching and single-tree invariants.
void validate_matchings(const MatchingPair& pair);

// Node with no incoming edge.
Key matching_root(const MatchingPair& pair);

// Greedy descent from the root; throws NotFound at a dead end.
RoutePath route(const MatchingPair& pair, Key target);

// {"left": [[u, v], ...], "right": [[u, v], ...]}
nlohmann::json to_json(const MatchingPair& pair);
// n defaults to the largest port mentioned when the document has no "n".
MatchingPair matchings_from_json(const nlohmann::json& doc);

}  // namespace abst
