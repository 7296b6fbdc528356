#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flagft {

// A flag pattern is a vertex of the a-dimensional hypercube. Bit 0 is the
// topmost flag row in circuit diagrams and the first character of the
// string form, so "100" has bit 0 set.
struct FlagPattern {
    uint32_t bits = 0;
    int width = 0;

    bool test(int i) const { return (bits >> i) & 1u; }
    int weight() const;
    std::string str() const;

    static FlagPattern from_string(const std::string& s);

    friend bool operator==(const FlagPattern&, const FlagPattern&) = default;
};

struct HypercubePath {
    int dimension = 0;
    std::vector<FlagPattern> vertices;

    size_t length() const { return vertices.size(); }
};

struct PathValidity {
    bool valid = true;
    std::string violation;  // empty when valid
    int index = -1;         // vertex index of the first violation
};

// Gray code: a Hamming path visiting all 2^a vertices. New bits are appended
// at the bottom (highest index), so a=2 gives 00, 10, 11, 01.
HypercubePath gray_code(int a);

// Maximal path from 10^(a-1) to 0^(a-1)1 whose interior vertices all have
// weight >= 2. Length is 2^a - 2a + 3. The a=2 and a=3 sequences are fixed
// base cases; larger dimensions are built by reflect-swap recursion.
HypercubePath ft_path(int a);

PathValidity validate_path(const HypercubePath& p, bool require_interior_weight2);

// Exhaustive DFS over all simple paths with the ft_path endpoint and
// interior-weight constraints. Only sensible for small a; the guard
// rejects a outside [2, 4].
int max_ft_path_length_bruteforce(int a);

}  // namespace flagft
