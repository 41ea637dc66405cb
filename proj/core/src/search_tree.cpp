#include "abst/search_tree.hpp"

#include "abst/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace abst {

namespace detail {

Key build_balanced(std::vector<Key>& left, std::vector<Key>& right, Key lo, Key hi, bool lean_upper) {
    if (lo > hi) return 0;
    const Key count = hi - lo + 1;
    Key mid = lo + count / 2;
    if (count % 2 == 0 && !lean_upper) --mid;
    left[mid] = mid > lo ? build_balanced(left, right, lo, mid - 1, true) : 0;
    right[mid] = build_balanced(left, right, mid + 1, hi, false);
    return mid;
}

}  // namespace detail

SearchTree::SearchTree(Key root, std::vector<Key> left, std::vector<Key> right)
    : root_(root), left_(std::move(left)), right_(std::move(right)) {
    if (left_.size() != right_.size() || left_.empty()) {
        throw InvalidArgument("search tree link arrays must both have n + 1 slots");
    }
    const std::size_t n = size();
    if (n == 0) {
        if (root_ != 0) throw InvalidArgument("empty tree cannot have a root");
        return;
    }
    if (root_ < 1 || root_ > n) throw InvalidArgument("root key out of range");

    // Iterative walk carrying the open key interval (lo, hi) of each subtree.
    struct Frame {
        Key key;
        Key lo;  // exclusive
        Key hi;  // exclusive
    };
    std::vector<char> seen(n + 1, 0);
    std::vector<Frame> stack{{root_, 0, static_cast<Key>(n + 1)}};
    std::size_t visited = 0;
    while (!stack.empty()) {
        auto [key, lo, hi] = stack.back();
        stack.pop_back();
        if (key < 1 || key > n) throw InvalidArgument("child key " + std::to_string(key) + " out of range");
        if (seen[key]) throw InvalidArgument("key " + std::to_string(key) + " appears more than once");
        if (key <= lo || key >= hi) {
            throw InvalidArgument("key " + std::to_string(key) + " violates the symmetric order");
        }
        seen[key] = 1;
        ++visited;
        if (left_[key]) stack.push_back({left_[key], lo, key});
        if (right_[key]) stack.push_back({right_[key], key, hi});
    }
    if (visited != n) throw InvalidArgument("tree does not contain every key 1.." + std::to_string(n));
}

SearchTree SearchTree::balanced(std::size_t n) {
    if (n == 0) return SearchTree{};
    std::vector<Key> left(n + 1, 0);
    std::vector<Key> right(n + 1, 0);
    const Key root = detail::build_balanced(left, right, 1, static_cast<Key>(n), false);
    return SearchTree(root, std::move(left), std::move(right));
}

Key SearchTree::left(Key key) const {
    if (!contains(key)) throw NotFound("key " + std::to_string(key) + " not in tree");
    return left_[key];
}

Key SearchTree::right(Key key) const {
    if (!contains(key)) throw NotFound("key " + std::to_string(key) + " not in tree");
    return right_[key];
}

Depth SearchTree::depth_of(Key key) const {
    if (!contains(key)) throw NotFound("key " + std::to_string(key) + " not in tree");
    Depth depth = 1;
    for (Key node = root_; node != key; ++depth) {
        node = key < node ? left_[node] : right_[node];
    }
    return depth;
}

std::vector<Depth> SearchTree::depths() const {
    std::vector<Depth> out(size(), 0);
    if (empty()) return out;
    std::vector<std::pair<Key, Depth>> stack{{root_, 1}};
    while (!stack.empty()) {
        auto [key, d] = stack.back();
        stack.pop_back();
        out[key - 1] = d;
        if (left_[key]) stack.emplace_back(left_[key], d + 1);
        if (right_[key]) stack.emplace_back(right_[key], d + 1);
    }
    return out;
}

std::vector<Key> SearchTree::in_order() const {
    std::vector<Key> out;
    out.reserve(size());
    std::vector<Key> stack;
    Key node = root_;
    while (node != 0 || !stack.empty()) {
        while (node != 0) {
            stack.push_back(node);
            node = left_[node];
        }
        node = stack.back();
        stack.pop_back();
        out.push_back(node);
        node = right_[node];
    }
    return out;
}

Depth SearchTree::height() const {
    auto d = depths();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

namespace {

void serialize(const std::vector<Key>& left, const std::vector<Key>& right, Key node, std::string& out) {
    if (node == 0) {
        out += '.';
        return;
    }
    out += '(';
    out += std::to_string(node);
    out += ' ';
    serialize(left, right, left[node], out);
    out += ' ';
    serialize(left, right, right[node], out);
    out += ')';
}

class TreeParser {
public:
    explicit TreeParser(std::string_view text) : text_(text) {}

    SearchTree parse() {
        skip_ws();
        const Key root = node();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        std::size_t n = keys_.size();
        for (auto k : keys_) {
            if (k < 1 || k > n) fail("key " + std::to_string(k) + " outside 1.." + std::to_string(n));
        }
        std::vector<Key> left(n + 1, 0);
        std::vector<Key> right(n + 1, 0);
        for (auto [parent, l, r] : links_) {
            left[parent] = l;
            right[parent] = r;
        }
        if (n == 0) return SearchTree{};
        return SearchTree(root, std::move(left), std::move(right));
    }

private:
    Key node() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (text_[pos_] == '.') {
            ++pos_;
            return 0;
        }
        expect('(');
        skip_ws();
        Key key = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), key);
        if (ec != std::errc{} || key == 0) fail("expected a positive key");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        keys_.push_back(key);
        const Key l = node();
        const Key r = node();
        skip_ws();
        expect(')');
        links_.push_back({key, l, r});
        return key;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("tree text at offset " + std::to_string(pos_) + ": " + what);
    }

    struct Link {
        Key parent, left, right;
    };
    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<Key> keys_;
    std::vector<Link> links_;
};

}  // namespace

SearchTree SearchTree::parse(std::string_view text) {
    try {
        return TreeParser(text).parse();
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("invalid tree: ") + e.what());
    }
}

std::string SearchTree::to_string() const {
    std::string out;
    serialize(left_, right_, root_, out);
    return out;
}

}  // namespace abst
