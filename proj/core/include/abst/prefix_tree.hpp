#pragma once

#include "abst/search_tree.hpp"
#include "abst/sfe_code.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace abst {

// Binary trie of codewords: bit 0 goes left, bit 1 goes right, keys sit at
// the leaves. Nodes live in a pool; index -1 stands for "no node".
class PrefixTree {
public:
    using NodeId = std::int32_t;
    static constexpr NodeId kNull = -1;

    struct Node {
        NodeId child[2] = {kNull, kNull};
        Key key = 0;  // nonzero only on leaves
    };

    PrefixTree() = default;

    // Throws CorruptCode when one codeword is a prefix of another.
    static PrefixTree from_codewords(std::span<const std::pair<Key, std::string>> words);

    NodeId root() const noexcept { return root_; }
    const Node& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    bool is_leaf(NodeId id) const { return node(id).key != 0; }

    // Keys read left to right.
    std::vector<Key> leaves_in_order() const;
    // Node-count depth of each leaf (root = 1), as (key, depth) in left-to-right order.
    std::vector<std::pair<Key, Depth>> leaf_depths() const;
    std::size_t leaf_count() const;

private:
    friend class TrieToBst;

    NodeId add_node();

    NodeId root_ = kNull;
    std::vector<Node> nodes_;
};

PrefixTree build_prefix_tree(const CodeTable& table);

// Recursive conversion: the subtree root becomes the shallower of the
// rightmost leaf of the left subtree and the leftmost leaf of the right
// subtree (left candidate on ties, the existing one when a side has no leaf).
// The chosen leaf is removed, then both trie subtrees are converted.
// The trie's leaf keys must be exactly 1..n.
SearchTree prefix_tree_to_bst(PrefixTree trie);

SearchTree sfe_to_bst(const ProbabilityDistribution& dist);

inline Depth depth_of(const SearchTree& tree, Key key) {
    return tree.depth_of(key);
}

}  // namespace abst
