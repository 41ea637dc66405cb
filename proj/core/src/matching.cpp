#include "abst/matching.hpp"

#include "abst/errors.hpp"

#include <nlohmann/json.hpp>

#include <set>

namespace abst {

MatchingPair bst_to_matchings(const SearchTree& tree) {
    MatchingPair pair;
    pair.n = tree.size();
    for (Key k = 1; k <= tree.size(); ++k) {
        if (Key l = tree.left(k)) pair.left.emplace(k, l);
        if (Key r = tree.right(k)) pair.right.emplace(k, r);
    }
    return pair;
}

namespace {

void check_partial_matching(const std::map<Key, Key>& edges, std::size_t n, const char* side) {
    std::set<Key> targets;
    for (auto [u, v] : edges) {
        if (u < 1 || u > n || v < 1 || v > n) {
            throw InvalidMatching(std::string(side) + " edge " + std::to_string(u) + "->" + std::to_string(v) +
                                  " uses a port outside 1.." + std::to_string(n));
        }
        if (u == v) throw InvalidMatching(std::string(side) + " matching maps " + std::to_string(u) + " to itself");
        if (!targets.insert(v).second) {
            throw InvalidMatching(std::string(side) + " matching reuses target port " + std::to_string(v));
        }
    }
}

}  // namespace

Key matching_root(const MatchingPair& pair) {
    std::vector<int> indegree(pair.n + 1, 0);
    for (const auto* side : {&pair.left, &pair.right}) {
        for (auto [u, v] : *side) {
            if (v >= 1 && v <= pair.n) ++indegree[v];
        }
    }
    Key root = 0;
    for (Key k = 1; k <= pair.n; ++k) {
        if (indegree[k] > 1) throw InvalidMatching("node " + std::to_string(k) + " has two parents");
        if (indegree[k] == 0) {
            if (root != 0) {
                throw InvalidMatching("multiple roots (" + std::to_string(root) + " and " + std::to_string(k) + ")");
            }
            root = k;
        }
    }
    if (root == 0 && pair.n > 0) throw InvalidMatching("no root: the edges form a cycle");
    return root;
}

void validate_matchings(const MatchingPair& pair) {
    check_partial_matching(pair.left, pair.n, "left");
    check_partial_matching(pair.right, pair.n, "right");
    const Key root = matching_root(pair);
    if (pair.n == 0) return;
    // Single root and in-degree <= 1 everywhere; every node must also be reachable.
    std::vector<char> seen(pair.n + 1, 0);
    std::vector<Key> stack{root};
    std::size_t reached = 0;
    while (!stack.empty()) {
        Key u = stack.back();
        stack.pop_back();
        if (seen[u]) throw InvalidMatching("cycle through node " + std::to_string(u));
        seen[u] = 1;
        ++reached;
        if (auto it = pair.left.find(u); it != pair.left.end()) stack.push_back(it->second);
        if (auto it = pair.right.find(u); it != pair.right.end()) stack.push_back(it->second);
    }
    if (reached != pair.n) throw InvalidMatching("edges contain a cycle detached from the root");
}

SearchTree matchings_to_bst(const MatchingPair& pair) {
    validate_matchings(pair);
    if (pair.n == 0) return SearchTree{};
    std::vector<Key> left(pair.n + 1, 0);
    std::vector<Key> right(pair.n + 1, 0);
    for (auto [u, v] : pair.left) left[u] = v;
    for (auto [u, v] : pair.right) right[u] = v;
    try {
        return SearchTree(matching_root(pair), std::move(left), std::move(right));
    } catch (const InvalidArgument& e) {
        throw InvalidMatching(e.what());
    }
}

RoutePath route(const MatchingPair& pair, Key target) {
    RoutePath path;
    Key node = matching_root(pair);
    while (node != 0) {
        path.push_back(node);
        if (target == node) return path;
        const auto& side = target < node ? pair.left : pair.right;
        auto it = side.find(node);
        node = it == side.end() ? 0 : it->second;
        if (path.size() > pair.n) throw InvalidMatching("routing loop");
    }
    throw NotFound("key " + std::to_string(target) + " not reachable by greedy routing");
}

nlohmann::json to_json(const MatchingPair& pair) {
    auto edges = [](const std::map<Key, Key>& m) {
        nlohmann::json arr = nlohmann::json::array();
        for (auto [u, v] : m) arr.push_back({u, v});
        return arr;
    };
    return {{"left", edges(pair.left)}, {"right", edges(pair.right)}};
}

MatchingPair matchings_from_json(const nlohmann::json& doc) {
    MatchingPair pair;
    Key max_port = 0;
    auto load = [&](const char* name, std::map<Key, Key>& out) {
        if (!doc.contains(name)) return;
        for (const auto& e : doc.at(name)) {
            if (!e.is_array() || e.size() != 2) throw ParseError(std::string(name) + " edge must be [u, v]");
            const Key u = e[0].get<Key>();
            const Key v = e[1].get<Key>();
            if (!out.emplace(u, v).second) {
                throw InvalidMatching(std::string(name) + " matching reuses source port " + std::to_string(u));
            }
            max_port = std::max({max_port, u, v});
        }
    };
    load("left", pair.left);
    load("right", pair.right);
    pair.n = doc.contains("n") ? doc.at("n").get<std::size_t>() : max_port;
    return pair;
}

}  // namespace abst
