#pragma once

#include <array>
#include <string>
#include <vector>

#include "polyadic/finite_group.hpp"

namespace polyadic {

inline FiniteGroup trivial_group() { return validate_group({{0}}, {"e"}); }

inline FiniteGroup cyclic_group(std::uint32_t k) {
    if (k == 0) fail(Errc::no_identity, "cyclic group of order 0");
    std::vector<std::vector<Elem>> t(k, std::vector<Elem>(k));
    for (std::uint32_t x = 0; x < k; ++x)
        for (std::uint32_t y = 0; y < k; ++y) t[x][y] = (x + y) % k;
    return validate_group(t);
}

// Z2 x Z2 with elements encoded as bit pairs, so the product is XOR.
inline FiniteGroup klein_four_group() {
    std::vector<std::vector<Elem>> t(4, std::vector<Elem>(4));
    for (Elem x = 0; x < 4; ++x)
        for (Elem y = 0; y < 4; ++y) t[x][y] = x ^ y;
    return validate_group(t, {"e", "a", "b", "ab"});
}

// Permutations of {0,1,2}; product composes left factor first:
// (s * t)(i) = t(s(i)).
inline FiniteGroup symmetric_group_3() {
    const std::array<std::array<int, 3>, 6> perms = {{
        {0, 1, 2}, // e
        {1, 0, 2}, // (01)
        {2, 1, 0}, // (02)
        {0, 2, 1}, // (12)
        {1, 2, 0}, // (012)
        {2, 0, 1}, // (021)
    }};
    auto index_of = [&](const std::array<int, 3>& p) -> Elem {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return static_cast<Elem>(i);
        fail(Errc::internal_inconsistency, "permutation lookup");
    };
    std::vector<std::vector<Elem>> t(6, std::vector<Elem>(6));
    for (std::size_t x = 0; x < 6; ++x)
        for (std::size_t y = 0; y < 6; ++y) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[y][perms[x][i]];
            t[x][y] = index_of(c);
        }
    return validate_group(t, {"e", "(01)", "(02)", "(12)", "(012)", "(021)"});
}

} // namespace polyadic
