#pragma once

#include "cartanlim/expr.hpp"
#include "cartanlim/generator.hpp"
#include "cartanlim/limits.hpp"

#include <array>
#include <vector>

namespace cartanlim::testing {

inline HReal h(const std::string& expr) { return parse_hreal(expr); }

/// Expected reflexive-transitive reachability of the digraph.
inline bool expected_reachable(ClassLabel a, ClassLabel b) {
    auto idx = [](ClassLabel c) {
        switch (c) {
            case ClassLabel::C: return 0;
            case ClassLabel::F: return 1;
            case ClassLabel::N1: return 2;
            case ClassLabel::N2: return 3;
            case ClassLabel::N3: return 4;
        }
        return -1;
    };
    static const bool table[5][5] = {
        {true, true, true, true, true},    // C ->
        {false, true, true, true, true},   // F ->
        {false, false, true, true, true},  // N1 ->
        {false, false, false, true, false},
        {false, false, false, false, true},
    };
    return table[idx(a)][idx(b)];
}

/// Applies a rational projective map to every vertex of a triangle.
inline NonstandardTriangle transform(const NonstandardTriangle& tri, const Mat3<Rational>& g) {
    Mat3<HReal> gh;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) gh.at(i, j) = HReal(g.at(i, j));
    return NonstandardTriangle(ProjPoint<HReal>(gh * tri.p.rep()), ProjPoint<HReal>(gh * tri.q.rep()),
                               ProjPoint<HReal>(gh * tri.x.rep()));
}

/// The six relabelings of the vertex triple.
inline std::vector<NonstandardTriangle> permutations(const NonstandardTriangle& tri) {
    const std::array<ProjPoint<HReal>, 3> v = {tri.p, tri.q, tri.x};
    static const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<NonstandardTriangle> out;
    for (const auto& s : perm) out.emplace_back(v[s[0]], v[s[1]], v[s[2]]);
    return out;
}

/// Rescales each vertex representative by a (nonzero) appreciable factor.
inline NonstandardTriangle rescale(const NonstandardTriangle& tri, InstanceGenerator& gen) {
    auto scaled = [&](const ProjPoint<HReal>& p) {
        const HReal c = gen.random_appreciable();
        return ProjPoint<HReal>(p.rep() * c);
    };
    return NonstandardTriangle(scaled(tri.p), scaled(tri.q), scaled(tri.x));
}

}  // namespace cartanlim::testing
