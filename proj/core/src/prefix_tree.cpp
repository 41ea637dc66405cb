#include "abst/prefix_tree.hpp"

#include "abst/errors.hpp"

#include <algorithm>

namespace abst {

PrefixTree::NodeId PrefixTree::add_node() {
    nodes_.emplace_back();
    return static_cast<NodeId>(nodes_.size() - 1);
}

PrefixTree PrefixTree::from_codewords(std::span<const std::pair<Key, std::string>> words) {
    PrefixTree t;
    if (words.empty()) return t;
    t.root_ = t.add_node();
    for (const auto& [key, word] : words) {
        if (key == 0) throw CorruptCode("key 0 is not a valid key");
        if (word.empty()) throw CorruptCode("empty codeword for key " + std::to_string(key));
        NodeId cur = t.root_;
        for (char bit : word) {
            if (bit != '0' && bit != '1') throw CorruptCode("codeword for key " + std::to_string(key) + " is not binary");
            if (t.nodes_[static_cast<std::size_t>(cur)].key != 0) {
                throw CorruptCode("codeword of key " + std::to_string(t.nodes_[static_cast<std::size_t>(cur)].key) +
                                  " is a prefix of the codeword of key " + std::to_string(key));
            }
            const int side = bit - '0';
            NodeId next = t.nodes_[static_cast<std::size_t>(cur)].child[side];
            if (next == kNull) {
                next = t.add_node();
                t.nodes_[static_cast<std::size_t>(cur)].child[side] = next;
            }
            cur = next;
        }
        auto& leaf = t.nodes_[static_cast<std::size_t>(cur)];
        if (leaf.key != 0 || leaf.child[0] != kNull || leaf.child[1] != kNull) {
            throw CorruptCode("codeword of key " + std::to_string(key) + " collides with another codeword");
        }
        leaf.key = key;
    }
    return t;
}

std::vector<std::pair<Key, Depth>> PrefixTree::leaf_depths() const {
    std::vector<std::pair<Key, Depth>> out;
    if (root_ == kNull) return out;
    // Right child pushed first so leaves come off the stack left to right.
    std::vector<std::pair<NodeId, Depth>> stack{{root_, 1}};
    while (!stack.empty()) {
        auto [id, d] = stack.back();
        stack.pop_back();
        const Node& nd = node(id);
        if (nd.key != 0) {
            out.emplace_back(nd.key, d);
            continue;
        }
        if (nd.child[1] != kNull) stack.emplace_back(nd.child[1], d + 1);
        if (nd.child[0] != kNull) stack.emplace_back(nd.child[0], d + 1);
    }
    return out;
}

std::vector<Key> PrefixTree::leaves_in_order() const {
    std::vector<Key> out;
    for (auto [key, depth] : leaf_depths()) out.push_back(key);
    return out;
}

std::size_t PrefixTree::leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const Node& nd) { return nd.key != 0; }));
}

PrefixTree build_prefix_tree(const CodeTable& table) {
    std::vector<std::pair<Key, std::string>> words;
    words.reserve(table.size());
    for (const auto& e : table.entries()) words.emplace_back(e.key, e.codeword);
    return PrefixTree::from_codewords(words);
}

class TrieToBst {
public:
    explicit TrieToBst(PrefixTree trie) : trie_(std::move(trie)) {}

    SearchTree run() {
        const std::size_t n = trie_.leaf_count();
        if (n == 0) return SearchTree{};
        left_.assign(n + 1, 0);
        right_.assign(n + 1, 0);
        for (const auto& nd : trie_.nodes_) {
            if (nd.key > n) {
                throw InvalidArgument("trie leaf keys must be exactly 1.." + std::to_string(n));
            }
        }
        const Key root = convert(trie_.root_);
        try {
            return SearchTree(root, std::move(left_), std::move(right_));
        } catch (const InvalidArgument& e) {
            throw CorruptCode(std::string("trie leaves are not in key order: ") + e.what());
        }
    }

private:
    using NodeId = PrefixTree::NodeId;

    // Root-to-leaf node path inside the current subtree, subtree root first.
    std::vector<NodeId> extreme_leaf_path(NodeId subtree, int first_side, int preferred) const {
        std::vector<NodeId> path{subtree};
        NodeId cur = node(subtree).child[first_side];
        if (cur == PrefixTree::kNull) return {};
        while (true) {
            path.push_back(cur);
            const auto& nd = node(cur);
            if (nd.key != 0) return path;
            NodeId next = nd.child[preferred];
            cur = next != PrefixTree::kNull ? next : nd.child[1 - preferred];
        }
    }

    // Removes the leaf ending `path`, pruning internal nodes left without
    // children, but never the subtree root path[0].
    void remove_leaf(const std::vector<NodeId>& path) {
        for (std::size_t j = path.size() - 1; j >= 1; --j) {
            auto& parent = mut(path[j - 1]);
            for (auto& c : parent.child) {
                if (c == path[j]) c = PrefixTree::kNull;
            }
            if (j - 1 == 0 || parent.child[0] != PrefixTree::kNull || parent.child[1] != PrefixTree::kNull) break;
        }
    }

    Key convert(NodeId id) {
        if (id == PrefixTree::kNull) return 0;
        if (node(id).key != 0) return node(id).key;

        auto pre = extreme_leaf_path(id, 0, 1);
        auto post = extreme_leaf_path(id, 1, 0);
        const std::vector<NodeId>* chosen = nullptr;
        if (pre.empty()) {
            chosen = &post;
        } else if (post.empty()) {
            chosen = &pre;
        } else {
            chosen = pre.size() <= post.size() ? &pre : &post;
        }
        if (chosen->empty()) throw CorruptCode("trie contains an internal node without leaves");

        const Key key = node(chosen->back()).key;
        remove_leaf(*chosen);
        // Children are read after the removal, which may have pruned one side.
        const NodeId l = node(id).child[0];
        const NodeId r = node(id).child[1];
        left_[key] = convert(l);
        right_[key] = convert(r);
        return key;
    }

    const PrefixTree::Node& node(NodeId id) const { return trie_.nodes_[static_cast<std::size_t>(id)]; }
    PrefixTree::Node& mut(NodeId id) { return trie_.nodes_[static_cast<std::size_t>(id)]; }

    PrefixTree trie_;
    std::vector<Key> left_;
    std::vector<Key> right_;
};

SearchTree prefix_tree_to_bst(PrefixTree trie) {
    return TrieToBst(std::move(trie)).run();
}

SearchTree sfe_to_bst(const ProbabilityDistribution& dist) {
    return prefix_tree_to_bst(build_prefix_tree(build_sfe_code(dist)));
}

}  // namespace abst
