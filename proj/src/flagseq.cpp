#include "flagft/flagseq.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace flagft {

int FlagPattern::weight() const {
    return std::popcount(bits);
}

std::string FlagPattern::str() const {
    std::string s(width, '0');
    for (int i = 0; i < width; ++i)
        if (test(i)) s[i] = '1';
    return s;
}

FlagPattern FlagPattern::from_string(const std::string& s) {
    FlagPattern p;
    p.width = static_cast<int>(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            p.bits |= 1u << i;
        else if (s[i] != '0')
            throw std::invalid_argument("flag pattern must be a 0/1 string: " + s);
    }
    return p;
}

namespace {

HypercubePath to_path(int a, const std::vector<uint32_t>& words) {
    HypercubePath p;
    p.dimension = a;
    p.vertices.reserve(words.size());
    for (uint32_t w : words) p.vertices.push_back(FlagPattern{w, a});
    return p;
}

uint32_t swap_bits(uint32_t v, int i, int j) {
    if (i == j) return v;
    uint32_t bi = (v >> i) & 1u, bj = (v >> j) & 1u;
    if (bi != bj) v ^= (1u << i) | (1u << j);
    return v;
}

std::vector<uint32_t> gray_words(int a) {
    std::vector<uint32_t> g = {0u, 1u};
    for (int d = 2; d <= a; ++d) {
        std::vector<uint32_t> next = g;
        for (auto it = g.rbegin(); it != g.rend(); ++it)
            next.push_back(*it | (1u << (d - 1)));
        g = std::move(next);
    }
    return g;
}

std::vector<uint32_t> ft_words(int a) {
    if (a == 2) return {0b01u, 0b11u, 0b10u};        // 10, 11, 01
    if (a == 3) return {1u, 3u, 7u, 6u, 4u};         // 100, 110, 111, 011, 001
    std::vector<uint32_t> prev = ft_words(a - 1);
    std::vector<uint32_t> out;
    out.reserve((1u << a) - 2 * a + 3);
    // Forward run with 0 appended, up to the second-to-last element.
    for (size_t i = 0; i + 1 < prev.size(); ++i) out.push_back(prev[i]);
    // Backward run with 1 appended, coordinates 2 and a-1 swapped.
    for (size_t i = prev.size() - 1; i-- > 0;)
        out.push_back(swap_bits(prev[i], 1, a - 2) | (1u << (a - 1)));
    // Tail from 1_{1,a}: weight-two milestones with weight-three connectors.
    std::vector<int> chain = {0};
    for (int s = 2; s <= a - 3; ++s) chain.push_back(s);
    chain.push_back(1);
    uint32_t top = 1u << (a - 1);
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        out.push_back((1u << chain[i]) | (1u << chain[i + 1]) | top);
        out.push_back((1u << chain[i + 1]) | top);
    }
    out.push_back(top);
    return out;
}

}  // namespace

HypercubePath gray_code(int a) {
    if (a < 1) throw std::invalid_argument("gray_code: dimension must be >= 1");
    return to_path(a, gray_words(a));
}

HypercubePath ft_path(int a) {
    if (a < 2) throw std::invalid_argument("ft_path: dimension must be >= 2");
    return to_path(a, ft_words(a));
}

PathValidity validate_path(const HypercubePath& p, bool require_interior_weight2) {
    if (p.vertices.empty()) return {false, "empty path", -1};
    std::unordered_set<uint32_t> seen;
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        const FlagPattern& v = p.vertices[i];
        if (v.width != p.dimension)
            return {false, "vertex width differs from path dimension", static_cast<int>(i)};
        if (i > 0 && std::popcount(v.bits ^ p.vertices[i - 1].bits) != 1)
            return {false, "non-adjacent step", static_cast<int>(i)};
        if (!seen.insert(v.bits).second)
            return {false, "repeated vertex " + v.str(), static_cast<int>(i)};
        bool interior = i > 0 && i + 1 < p.vertices.size();
        if (require_interior_weight2 && interior && v.weight() < 2)
            return {false, "interior vertex " + v.str() + " has weight < 2", static_cast<int>(i)};
    }
    return {};
}

namespace {

int dfs_longest(uint32_t v, uint32_t goal, int a, uint32_t visited, int len) {
    int best = 0;
    for (int i = 0; i < a; ++i) {
        uint32_t u = v ^ (1u << i);
        if (u == goal) {
            best = std::max(best, len + 1);
            continue;
        }
        if (std::popcount(u) < 2) continue;
        if (visited & (1u << u)) continue;
        best = std::max(best, dfs_longest(u, goal, a, visited | (1u << u), len + 1));
    }
    return best;
}

}  // namespace

int max_ft_path_length_bruteforce(int a) {
    if (a < 2 || a > 4)
        throw std::invalid_argument("max_ft_path_length_bruteforce: a must be in [2, 4]");
    uint32_t start = 1u;               // 10^(a-1)
    uint32_t goal = 1u << (a - 1);     // 0^(a-1)1
    return dfs_longest(start, goal, a, 1u << start, 1);
}

}  // namespace flagft
