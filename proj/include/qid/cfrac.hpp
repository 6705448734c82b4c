#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <qid/exponent.hpp>
#include <qid/series.hpp>
#include <qid/theta.hpp>

namespace qid {

struct CfTerm {
    LatticeSeries num;
    LatticeSeries den;
};

/// A generalized continued fraction lead * 1/(d0 + n1/(d1 + n2/(d2 + ...))).
/// Building blocks are produced on demand at a requested truncation order so
/// the same spec can be evaluated at any depth and precision. Every d_k must
/// have unit constant term and every n_k strictly positive order; that makes
/// the convergent difference order grow linearly in depth, which is the
/// formal-series notion of convergence used here.
struct CFSpec {
    std::int64_t scale;
    std::function<LatticeSeries(std::int64_t)> lead;
    std::function<LatticeSeries(std::int64_t)> d0;
    std::function<CfTerm(int, std::int64_t)> term; // k >= 1
};

namespace detail {

inline void check_cf_term(const CfTerm& t, int k) {
    if (t.den.is_zero() || t.den.min_exp() != 0 || t.den.coeffs().front() != 1)
        throw std::domain_error("continued fraction: d_" + std::to_string(k) +
                                " lacks unit constant term");
    // A numerator that is zero at this truncation carries no information at
    // this order (its true order exceeds the trunc); genuinely degenerate
    // pairs are rejected at construction.
    if (!t.num.is_zero() && t.num.min_exp() <= 0)
        throw std::domain_error("continued fraction: n_" + std::to_string(k) +
                                " must have positive order");
}

} // namespace detail

/// Three-term recurrence state for the tail d0 + K(n_k/d_k). Convergent K of
/// the full object is lead * B_K / A_K with A_{-1}=1, B_{-1}=0, A_0=d0,
/// B_0=1, so depth 0 evaluates to lead/d0.
class CfEvaluator {
public:
    CfEvaluator(const CFSpec& spec, std::int64_t n)
        : spec_(spec), n_(n), a_prev_(one(spec.scale, n)), a_cur_(spec.d0(n)),
          b_prev_(LatticeSeries::zero(spec.scale, n)), b_cur_(one(spec.scale, n)),
          lead_(spec.lead(n)) {
        if (a_cur_.is_zero() || a_cur_.min_exp() != 0)
            throw std::domain_error("continued fraction: d_0 lacks unit constant term");
    }

    int depth() const { return depth_; }

    void advance() {
        ++depth_;
        CfTerm t = spec_.term(depth_, n_);
        detail::check_cf_term(t, depth_);
        LatticeSeries a_next = t.den * a_cur_ + t.num * a_prev_;
        LatticeSeries b_next = t.den * b_cur_ + t.num * b_prev_;
        a_prev_ = std::move(a_cur_);
        a_cur_ = std::move(a_next);
        b_prev_ = std::move(b_cur_);
        b_cur_ = std::move(b_next);
    }

    LatticeSeries value() const { return lead_ * b_cur_ * invert(a_cur_); }

private:
    const CFSpec& spec_;
    std::int64_t n_;
    int depth_ = 0;
    LatticeSeries a_prev_, a_cur_, b_prev_, b_cur_;
    LatticeSeries lead_;
};

inline LatticeSeries convergent(const CFSpec& spec, int depth, std::int64_t n) {
    if (depth < 0) throw std::invalid_argument("convergent: depth must be >= 0");
    CfEvaluator ev(spec, n);
    while (ev.depth() < depth) ev.advance();
    return ev.value();
}

struct Stabilized {
    LatticeSeries value;
    int depth; // smallest K with convergents K-1 and K equal through n
};

/// Smallest K <= depth_cap whose convergent agrees with the previous one
/// through lattice order n. Throws (with the best agreement order reached)
/// when the cap is hit first.
inline Stabilized stabilized_value(const CFSpec& spec, std::int64_t n, int depth_cap = 64) {
    if (depth_cap < 1) throw std::invalid_argument("stabilized_value: depth_cap must be >= 1");
    CfEvaluator ev(spec, n);
    LatticeSeries prev = ev.value();
    std::int64_t best_agreement = -1;
    for (int k = 1; k <= depth_cap; ++k) {
        ev.advance();
        LatticeSeries cur = ev.value();
        const auto diff = eq_to_order(prev, cur, n);
        if (!diff) return Stabilized{std::move(cur), k};
        best_agreement = std::max(best_agreement, diff->exp_units - 1);
        prev = std::move(cur);
    }
    throw std::runtime_error("stabilized_value: no stabilization through order " +
                             std::to_string(n) + " within depth " + std::to_string(depth_cap) +
                             " (best agreement order " + std::to_string(best_agreement) + ")");
}

/// Entry-12 continued fraction for the quotient
/// (a^2 Q^3; Q^4)(b^2 Q^3; Q^4) / ((a^2 Q; Q^4)(b^2 Q; Q^4)), Q = q^qpow:
/// d_0 = 1 - ab, n_k = (a - b Q^{2k-1})(b - a Q^{2k-1}),
/// d_k = (1 - ab)(Q^{2k} + 1), lead = 1.
inline CFSpec entry12_cf(SignedMonomial a, SignedMonomial b, const Exponent& qpow,
                         std::int64_t scale) {
    if (!(qpow > Exponent(0))) throw std::invalid_argument("entry12_cf: qpow must be positive");
    const SignedMonomial ab = a * b;
    if (!(ab.exponent > Exponent(0)))
        throw std::domain_error("entry12_cf: exponent(ab) must be positive");
    if (a.exponent < Exponent(0) || b.exponent < Exponent(0))
        throw std::domain_error("entry12_cf: negative argument exponents break formal convergence");
    // a = b q^{(2k-1) qpow} (or symmetrically) zeroes a partial numerator;
    // that is the excluded a = b^{2m+1} family of Entry 12.
    if (a.sign == b.sign) {
        const Exponent d = a.exponent < b.exponent ? b.exponent - a.exponent
                                                   : a.exponent - b.exponent;
        const Exponent ratio = d / qpow;
        if (ratio.den() == 1 && ratio.num() >= 1 && ratio.num() % 2 == 1)
            throw std::domain_error("entry12_cf: degenerate pair (a = b q^{odd multiple of qpow})");
    }
    // validate the lattice up front
    (void)a.exponent.lattice_units(scale);
    (void)b.exponent.lattice_units(scale);
    (void)qpow.lattice_units(scale);

    const auto mono = [scale](SignedMonomial x, std::int64_t n) {
        return monomial(Int(x.sign), x.exponent, scale, n);
    };
    CFSpec spec;
    spec.scale = scale;
    spec.lead = [scale](std::int64_t n) { return one(scale, n); };
    spec.d0 = [=](std::int64_t n) { return one(scale, n) - mono(ab, n); };
    spec.term = [=](int k, std::int64_t n) {
        const Exponent t = (2 * k - 1) * qpow;
        LatticeSeries num = (mono(a, n) - mono(SignedMonomial{b.sign, b.exponent + t}, n)) *
                            (mono(b, n) - mono(SignedMonomial{a.sign, a.exponent + t}, n));
        LatticeSeries den = (one(scale, n) - mono(ab, n)) *
                            (one(scale, n) + mono(SignedMonomial{1, 2 * k * qpow}, n));
        return CfTerm{std::move(num), std::move(den)};
    };
    return spec;
}

/// Product side of Entry 12 with q -> q^qpow, built from four Pochhammer
/// blocks (a^2 and b^2 always carry sign +1).
inline LatticeSeries entry12_lhs(SignedMonomial a, SignedMonomial b, const Exponent& qpow,
                                 std::int64_t scale, std::int64_t n) {
    if (!(qpow > Exponent(0))) throw std::invalid_argument("entry12_lhs: qpow must be positive");
    if (!((a.exponent + b.exponent) > Exponent(0)))
        throw std::domain_error("entry12_lhs: exponent(ab) must be positive");
    const Exponent a2 = 2 * a.exponent, b2 = 2 * b.exponent, m = 4 * qpow;
    LatticeSeries num =
        pochhammer_product({{a2 + 3 * qpow, m, 1, 1}, {b2 + 3 * qpow, m, 1, 1}}, scale, n);
    LatticeSeries den =
        pochhammer_product({{a2 + qpow, m, 1, 1}, {b2 + qpow, m, 1, 1}}, scale, n);
    return num * invert(den);
}

/// One of the seventeen named continued fractions. All data derives from the
/// (family, index) pair: the family fixes qpow = modulus/4 and the index the
/// quarter-power substitution pair; the small numerator exponent c doubles as
/// the lead factor (1 - q^c).
struct NamedCF {
    std::string key;     // "A1".."C7"
    char family;         // 'A', 'B', 'C'
    int index;
    std::int64_t modulus;      // 18, 26, 30
    SignedMonomial a, b;       // quarter-power pair, both sign +1
    Exponent qpow;             // modulus/4
    std::int64_t lead_exp;     // c
    std::array<std::int64_t, 2> num_args; // f(-q^u, -q^{m-u})
    std::array<std::int64_t, 2> den_args; // f(-q^v, -q^{m-v})
};

inline const std::vector<NamedCF>& all_named_cfs() {
    static const std::vector<NamedCF> table = [] {
        std::vector<NamedCF> v;
        const struct {
            char family;
            std::int64_t modulus;
            int count;
        } families[] = {{'A', 18, 4}, {'B', 26, 6}, {'C', 30, 7}};
        for (const auto& fam : families) {
            for (int i = 1; i <= fam.count; ++i) {
                NamedCF cf;
                cf.key = std::string(1, fam.family) + std::to_string(i);
                cf.family = fam.family;
                cf.index = i;
                cf.modulus = fam.modulus;
                cf.a = sm(1, Exponent(2 * i - 1, 4));
                cf.b = sm(1, Exponent(fam.modulus - (2 * i - 1), 4));
                cf.qpow = Exponent(fam.modulus, 4);
                const std::int64_t u = (fam.modulus + 2) / 4 - i;
                const std::int64_t mv = fam.modulus / 2 - u;
                cf.lead_exp = u;
                cf.num_args = {u, fam.modulus - u};
                cf.den_args = {mv, fam.modulus - mv};
                v.push_back(std::move(cf));
            }
        }
        return v;
    }();
    return table;
}

inline const NamedCF& named_cf(char family, int index) {
    for (const auto& cf : all_named_cfs())
        if (cf.family == family && cf.index == index) return cf;
    throw std::invalid_argument("named_cf: unknown name " + std::string(1, family) +
                                std::to_string(index));
}

inline const NamedCF& named_cf(std::string_view key) {
    for (const auto& cf : all_named_cfs())
        if (cf.key == key) return cf;
    throw std::invalid_argument("named_cf: unknown name '" + std::string(key) + "'");
}

/// The quarter-power substitution forces the CF onto scale 4.
inline CFSpec named_cf_spec(const NamedCF& cf) {
    CFSpec spec = entry12_cf(cf.a, cf.b, cf.qpow, 4);
    const std::int64_t c4 = cf.lead_exp * 4;
    spec.lead = [c4](std::int64_t n) {
        return one(4, n) - monomial(Int(1), Exponent(c4, 4), 4, n);
    };
    return spec;
}

/// Closed form f(-q^u, -q^{m-u}) / f(-q^v, -q^{m-v}) at scale 2 (the scale
/// every final identity lives on), via the triple product.
inline LatticeSeries named_cf_quotient(const NamedCF& cf, std::int64_t n2) {
    LatticeSeries num = theta_product(sm(-1, Exponent(cf.num_args[0])),
                                      sm(-1, Exponent(cf.num_args[1])), 2, n2);
    LatticeSeries den = theta_product(sm(-1, Exponent(cf.den_args[0])),
                                      sm(-1, Exponent(cf.den_args[1])), 2, n2);
    return num * invert(den);
}

/// Entry-12 evaluation of a named CF: stabilized on the quarter lattice,
/// then forced down to scale 2 (a hard check that no quarter powers leak).
inline Stabilized named_cf_value(const NamedCF& cf, std::int64_t n2, int depth_cap = 64) {
    CFSpec spec = named_cf_spec(cf);
    Stabilized st = stabilized_value(spec, 2 * n2, depth_cap);
    return Stabilized{rescale(st.value, 2), st.depth};
}

} // namespace qid
