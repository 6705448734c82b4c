#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <qid/series.hpp>
#include <qid/theta.hpp>

namespace qid {

/// Parameters of the p-dissection
///   (q^t, q^t, q^{r+s}, q^{t-r-s}; q^t) / (q^s, q^{t-s}, q^r, q^{t-r}; q^t)
///     = sum_{j=0}^{p-1} q^{jr} * N_j / D_j   (blocks mod q^{pt}).
struct DissectionParams {
    std::int64_t t, s, r, p;
};

inline void validate(const DissectionParams& d) {
    if (d.t <= 0 || d.s <= 0 || d.r <= 0 || d.p <= 0)
        throw std::invalid_argument("dissection: parameters must be positive");
    if (!(d.s < d.t && d.r < d.t))
        throw std::invalid_argument("dissection: need 0 < s < t and 0 < r < t");
    if (std::gcd(d.r, d.p) != 1)
        throw std::invalid_argument("dissection: need gcd(r, p) = 1");
}

/// The eight factor starts of term j, before expansion. A zero numerator
/// start annihilates the term; negative starts stay as Laurent factors.
struct DissectionTermFactors {
    std::int64_t prefactor_exp;            // j*r
    std::array<std::int64_t, 4> num_starts;
    std::array<std::int64_t, 4> den_starts;
    std::int64_t modulus;                  // p*t
};

inline DissectionTermFactors dissection_term_factors(const DissectionParams& d, std::int64_t j) {
    validate(d);
    if (j < 0 || j >= d.p) throw std::invalid_argument("dissection: term index out of range");
    DissectionTermFactors f;
    f.prefactor_exp = j * d.r;
    f.modulus = d.p * d.t;
    f.num_starts = {d.p * d.t, d.p * d.t, d.p * d.r + d.s + j * d.t,
                    (d.p - j) * d.t - d.p * d.r - d.s};
    f.den_starts = {j * d.t + d.s, (d.p - j) * d.t - d.s, d.p * d.r, (d.t - d.r) * d.p};
    return f;
}

inline LatticeSeries dissection_lhs(const DissectionParams& d, std::int64_t n) {
    validate(d);
    const Exponent t(d.t);
    // r + s > t makes (q^{t-r-s}; q^t) a Laurent block; headroom keeps the
    // quotient known through n.
    std::int64_t laurent_weight = 0;
    for (std::int64_t e = d.t - d.r - d.s; e < 0; e += d.t) laurent_weight += -e;
    const std::int64_t ni = n + laurent_weight;
    LatticeSeries num = pochhammer_product(
        {{t, t, 2, 1}, {Exponent(d.r + d.s), t, 1, 1}, {Exponent(d.t - d.r - d.s), t, 1, 1}}, 1,
        ni);
    if (num.is_zero()) return LatticeSeries::zero(1, n);
    LatticeSeries den = pochhammer_product({{Exponent(d.s), t, 1, 1},
                                            {Exponent(d.t - d.s), t, 1, 1},
                                            {Exponent(d.r), t, 1, 1},
                                            {Exponent(d.t - d.r), t, 1, 1}},
                                           1, ni);
    return truncate(num * invert(den), n);
}

inline LatticeSeries dissection_term(const DissectionParams& d, std::int64_t j, std::int64_t n) {
    const DissectionTermFactors f = dissection_term_factors(d, j);
    const Exponent m(f.modulus);
    std::vector<PochhammerSpec> num, den;
    std::int64_t laurent_weight = 0;
    for (std::int64_t st : f.num_starts) {
        num.push_back({Exponent(st), m, 1, 1});
        for (std::int64_t e = st; e < 0; e += f.modulus) laurent_weight += -e;
    }
    for (std::int64_t st : f.den_starts) den.push_back({Exponent(st), m, 1, 1});
    // Denominator starts are positive for valid parameters, so the quotient
    // is well formed; all Laurent behavior lives in the numerator blocks.
    // Extra headroom keeps the term known through n even when the Laurent
    // shift outweighs the q^{jr} prefactor.
    const std::int64_t ni = n + std::max<std::int64_t>(0, laurent_weight - f.prefactor_exp);
    LatticeSeries qn = pochhammer_product(num, 1, ni);
    if (qn.is_zero()) return LatticeSeries::zero(1, n);
    LatticeSeries qd = pochhammer_product(den, 1, ni);
    return truncate(mul_monomial(qn * invert(qd), Int(1), f.prefactor_exp), n);
}

inline std::vector<LatticeSeries> dissection_terms(const DissectionParams& d, std::int64_t n) {
    validate(d);
    std::vector<LatticeSeries> terms;
    terms.reserve(static_cast<std::size_t>(d.p));
    for (std::int64_t j = 0; j < d.p; ++j) terms.push_back(dissection_term(d, j, n));
    return terms;
}

/// LHS minus the sum of the p dissection terms; zero through n when the
/// dissection identity holds.
inline LatticeSeries verify_dissection(const DissectionParams& d, std::int64_t n) {
    LatticeSeries acc = dissection_lhs(d, n);
    for (const auto& term : dissection_terms(d, n)) acc = acc - term;
    return acc;
}

/// One theorem-series: a two-over-two Pochhammer quotient together with the
/// arithmetic progression the coefficients are claimed to vanish on.
struct QuotientSpec {
    std::string_view id;        // registry key, e.g. "T21.a"
    std::string_view claim_id;  // scan claim key, e.g. "T21.i"
    std::string_view display;   // e.g. "A1*" or "1/A4*"
    std::array<std::int64_t, 2> num;
    std::array<std::int64_t, 2> den;
    std::int64_t modulus;
    std::int64_t prog_r;
    std::int64_t prog_m;
};

inline const std::vector<QuotientSpec>& quotient_registry() {
    static const std::vector<QuotientSpec> table = {
        {"T21.a", "T21.i", "A1*", {4, 14}, {5, 13}, 18, 8, 9},
        {"T21.b", "T21.ii", "A3*", {2, 16}, {7, 11}, 18, 8, 9},
        {"T21.c", "T21.iii", "1/A4*", {8, 10}, {1, 17}, 18, 3, 9},
        {"T22.a", "T22.i", "B1*", {6, 20}, {7, 19}, 26, 11, 13},
        {"T22.b", "T22.ii", "1/B2*", {8, 18}, {5, 21}, 26, 11, 13},
        {"T22.c", "T22.iii", "B3*", {4, 22}, {9, 17}, 26, 7, 13},
        {"T22.d", "T22.iv", "1/B4*", {10, 16}, {3, 23}, 26, 7, 13},
        {"T22.e", "T22.v", "B5*", {2, 24}, {11, 15}, 26, 12, 13},
        {"T22.f", "T22.vi", "1/B6*", {12, 14}, {1, 25}, 26, 12, 13},
        {"T23.a", "T23.i", "1/C1*", {8, 22}, {7, 23}, 30, 2, 15},
        {"T23.b", "T23.ii", "C4*", {4, 26}, {11, 19}, 30, 9, 15},
        {"T23.c", "T23.iii", "C6*", {2, 28}, {13, 17}, 30, 4, 15},
        {"T23.d", "T23.iv", "1/C7*", {14, 16}, {1, 29}, 30, 14, 15},
    };
    return table;
}

inline const QuotientSpec& quotient_spec(std::string_view id) {
    for (const auto& q : quotient_registry())
        if (q.id == id || q.claim_id == id) return q;
    throw std::invalid_argument("quotient_spec: unknown id '" + std::string(id) + "'");
}

inline LatticeSeries quotient_series(const QuotientSpec& q, std::int64_t n) {
    const Exponent m(q.modulus);
    LatticeSeries num = pochhammer_product(
        {{Exponent(q.num[0]), m, 1, 1}, {Exponent(q.num[1]), m, 1, 1}}, 1, n);
    LatticeSeries den = pochhammer_product(
        {{Exponent(q.den[0]), m, 1, 1}, {Exponent(q.den[1]), m, 1, 1}}, 1, n);
    return num * invert(den);
}

inline LatticeSeries quotient_series(std::string_view id, std::int64_t n) {
    return quotient_series(quotient_spec(id), n);
}

/// Same quotient upside down (pairs like B2* and 1/B2*).
inline QuotientSpec reciprocal(const QuotientSpec& q) {
    QuotientSpec r = q;
    r.num = q.den;
    r.den = q.num;
    return r;
}

struct ScanOutcome {
    enum class Status { AllZero, FirstNonzero };
    Status status = Status::AllZero;
    std::int64_t n = 0;  // minimal offending exponent when FirstNonzero
    Int coefficient;     // its (nonzero) coefficient
};

/// Checks every coefficient at exponents == r (mod m) up to n.
inline ScanOutcome vanish_scan(const LatticeSeries& s, std::int64_t r, std::int64_t m,
                               std::int64_t n) {
    if (s.scale() != 1) throw std::invalid_argument("vanish_scan: series must have scale 1");
    if (m <= 0 || r < 0 || r >= m)
        throw std::invalid_argument("vanish_scan: progression out of range");
    if (s.trunc() < n) throw std::out_of_range("vanish_scan: series truncated below scan bound");
    std::int64_t e = r;
    if (!s.is_zero() && s.min_exp() < 0)
        e = r + m * detail::floor_div(s.min_exp() - r, m);
    for (; e <= n; e += m) {
        Int c = s.unit_coeff(e);
        if (c != 0) return ScanOutcome{ScanOutcome::Status::FirstNonzero, e, std::move(c)};
    }
    return ScanOutcome{ScanOutcome::Status::AllZero, 0, Int(0)};
}

/// The reduction from the dissection LHS to the theorem quotient:
/// multiplying by (q^k; q^{2k})^2 / (q^{2k}; q^{2k})^2 cancels the
/// (q^k, q^k; q^{2k}) block of the denominator against the (q^{2k};q^{2k})^2
/// of the numerator, leaving exactly the first theorem series.
inline LatticeSeries verify_reduction(std::string_view theorem_tag, std::int64_t n) {
    DissectionParams params{};
    std::int64_t k = 0;
    std::string_view first_id;
    if (theorem_tag == "T21") {
        params = {18, 9, 5, 9};
        k = 9;
        first_id = "T21.a";
    } else if (theorem_tag == "T22") {
        params = {26, 13, 7, 13};
        k = 13;
        first_id = "T22.a";
    } else if (theorem_tag == "T23") {
        params = {30, 15, 7, 15};
        k = 15;
        first_id = "T23.a";
    } else {
        throw std::invalid_argument("verify_reduction: unknown theorem tag '" +
                                    std::string(theorem_tag) + "'");
    }
    LatticeSeries multiplier =
        pochhammer({Exponent(k), Exponent(2 * k), 2, 1}, 1, n) *
        invert(pochhammer({Exponent(2 * k), Exponent(2 * k), 2, 1}, 1, n));
    return dissection_lhs(params, n) * multiplier - quotient_series(first_id, n);
}

inline const std::vector<std::string_view>& reduction_tags() {
    static const std::vector<std::string_view> tags = {"T21", "T22", "T23"};
    return tags;
}

/// The three dissection instances behind the theorem quotients.
inline DissectionParams dissection_instance(std::int64_t t) {
    switch (t) {
    case 18: return {18, 9, 5, 9};
    case 26: return {26, 13, 7, 13};
    case 30: return {30, 15, 7, 15};
    default: throw std::invalid_argument("dissection_instance: unknown order");
    }
}

} // namespace qid
