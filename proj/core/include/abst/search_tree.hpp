#pragma once

#include "abst/distribution.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace abst {

using Depth = std::uint32_t;

// Binary search tree over the keys 1..n, stored as child links indexed by key.
// A link value of 0 means "no child". Construction validates that every key
// appears exactly once and that the symmetric order holds.
class SearchTree {
public:
    SearchTree() = default;
    // `left` and `right` have n + 1 slots; slot 0 is unused.
    SearchTree(Key root, std::vector<Key> left, std::vector<Key> right);

    // Median-root tree: the top range uses its lower median, and an even-sized
    // child range takes the median adjacent to its parent.
    static SearchTree balanced(std::size_t n);

    // Inverse of to_string(): "(key left right)" with "." for an empty child.
    static SearchTree parse(std::string_view text);

    std::size_t size() const noexcept { return left_.empty() ? 0 : left_.size() - 1; }
    bool empty() const noexcept { return root_ == 0; }
    Key root() const noexcept { return root_; }
    Key left(Key key) const;
    Key right(Key key) const;
    bool contains(Key key) const noexcept { return key >= 1 && key <= size(); }

    // Node count on the root-to-key path; the root has depth 1.
    Depth depth_of(Key key) const;
    // depths()[k - 1] is the depth of key k.
    std::vector<Depth> depths() const;
    std::vector<Key> in_order() const;
    Depth height() const;

    std::string to_string() const;

    friend bool operator==(const SearchTree&, const SearchTree&) = default;

private:
    Key root_ = 0;
    std::vector<Key> left_;
    std::vector<Key> right_;
};

namespace detail {

// Fills links for a balanced subtree over keys lo..hi and returns its root
// (0 when lo > hi). With lean_upper, an even-sized range takes its upper median.
Key build_balanced(std::vector<Key>& left, std::vector<Key>& right, Key lo, Key hi, bool lean_upper);

}  // namespace detail

}  // namespace abst
