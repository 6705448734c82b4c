#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <qid/series.hpp>
#include <qid/theta.hpp>

namespace qid {

/// One residue pair +-a (mod M) with a color multiplicity. A class covers
/// both residues a and M-a; when a = M/2 the two coincide and each part size
/// effectively gets 2*colors copies (the square of the pm block), which is
/// what makes the counting identities balance.
struct PartClass {
    std::int64_t residue;
    int colors = 1;
};

struct PartSpec {
    std::int64_t modulus = 1;
    std::vector<PartClass> classes;
};

inline void validate(const PartSpec& spec) {
    if (spec.modulus <= 0) throw std::invalid_argument("PartSpec: modulus must be positive");
    std::set<std::int64_t> seen;
    for (const auto& c : spec.classes) {
        if (c.residue <= 0 || c.residue >= spec.modulus)
            throw std::invalid_argument("PartSpec: residue out of range (0, modulus)");
        if (c.colors < 1) throw std::invalid_argument("PartSpec: colors must be positive");
        const std::int64_t lo = std::min(c.residue, spec.modulus - c.residue);
        if (!seen.insert(lo).second)
            throw std::invalid_argument("PartSpec: residue classes must be disjoint");
    }
}

/// Generating function of the colored-partition count: the reciprocal of the
/// product of pm blocks raised to their color multiplicities.
inline LatticeSeries gf_expand(const PartSpec& spec, std::int64_t n) {
    validate(spec);
    std::vector<PochhammerSpec> blocks;
    const Exponent m(spec.modulus);
    for (const auto& c : spec.classes) {
        blocks.push_back({Exponent(c.residue), m, c.colors, 1});
        blocks.push_back({Exponent(spec.modulus - c.residue), m, c.colors, 1});
    }
    return invert(pochhammer_product(blocks, 1, n));
}

/// Independent counting oracle: unrolls every residue class to the concrete
/// colored part sizes <= n and runs the textbook unbounded-parts DP. No
/// series machinery is involved.
inline Int enumerate_count(const PartSpec& spec, std::int64_t n) {
    validate(spec);
    if (n < 0) return Int(0);
    std::vector<Int> ways(static_cast<std::size_t>(n + 1));
    ways[0] = 1;
    for (const auto& c : spec.classes) {
        for (std::int64_t residue : {c.residue, spec.modulus - c.residue}) {
            for (std::int64_t size = residue; size <= n; size += spec.modulus) {
                for (int color = 0; color < c.colors; ++color) {
                    for (std::int64_t v = size; v <= n; ++v)
                        ways[static_cast<std::size_t>(v)] +=
                            ways[static_cast<std::size_t>(v - size)];
                }
            }
        }
    }
    return ways[static_cast<std::size_t>(n)];
}

/// The three counting functions of one theorem and its shift:
/// x1(n) - x2(n - shift) - x3(n) = 0 (negative arguments count as 0).
struct CountTriple {
    std::string_view id; // "T35", "T36", "T37"
    PartSpec x1, x2, x3;
    std::int64_t shift;
};

inline const std::vector<CountTriple>& partition_theorems() {
    static const std::vector<CountTriple> table = {
        {"T35",
         {36, {{3, 1}, {6, 2}, {15, 1}, {18, 2}}},
         {36, {{3, 1}, {12, 2}, {15, 1}, {18, 2}}},
         {36, {{6, 2}, {9, 2}, {12, 2}}},
         3},
        {"T36",
         {52, {{1, 1}, {12, 2}, {25, 1}, {26, 2}}},
         {52, {{1, 1}, {14, 2}, {25, 1}, {26, 2}}},
         {52, {{12, 2}, {13, 2}, {14, 2}}},
         1},
        {"T37",
         {60, {{1, 1}, {14, 2}, {29, 1}, {30, 2}}},
         {60, {{1, 1}, {16, 2}, {29, 1}, {30, 2}}},
         {60, {{14, 2}, {15, 2}, {16, 2}}},
         1},
    };
    return table;
}

inline const CountTriple& partition_theorem(std::string_view id) {
    for (const auto& t : partition_theorems())
        if (t.id == id) return t;
    throw std::invalid_argument("partition_theorem: unknown id '" + std::string(id) + "'");
}

/// Named generating-function specs, keys "T35.X1" .. "T37.Z3".
inline const std::vector<std::pair<std::string, const PartSpec*>>& partition_spec_registry() {
    static const std::vector<std::pair<std::string, const PartSpec*>> table = [] {
        std::vector<std::pair<std::string, const PartSpec*>> v;
        const char* families[3] = {"X", "Y", "Z"};
        for (std::size_t i = 0; i < partition_theorems().size(); ++i) {
            const auto& t = partition_theorems()[i];
            const std::string base = std::string(t.id) + "." + families[i];
            v.emplace_back(base + "1", &t.x1);
            v.emplace_back(base + "2", &t.x2);
            v.emplace_back(base + "3", &t.x3);
        }
        return v;
    }();
    return table;
}

inline const PartSpec& partition_spec(std::string_view key) {
    for (const auto& [k, spec] : partition_spec_registry())
        if (k == key) return *spec;
    throw std::invalid_argument("partition_spec: unknown key '" + std::string(key) + "'");
}

/// x1(n) - x2(n-shift) - x3(n) for n = 0..n_max, computed from the
/// generating functions.
inline std::vector<Int> theorem_residual(const CountTriple& t, std::int64_t n_max) {
    const LatticeSeries g1 = gf_expand(t.x1, n_max);
    const LatticeSeries g2 = gf_expand(t.x2, n_max);
    const LatticeSeries g3 = gf_expand(t.x3, n_max);
    std::vector<Int> out;
    out.reserve(static_cast<std::size_t>(n_max + 1));
    for (std::int64_t n = 0; n <= n_max; ++n) {
        Int r = g1.unit_coeff(n) - g3.unit_coeff(n);
        if (n >= t.shift) r -= g2.unit_coeff(n - t.shift);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace qid
