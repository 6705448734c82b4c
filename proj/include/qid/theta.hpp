#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <qid/exponent.hpp>
#include <qid/series.hpp>

namespace qid {

/// +-q^e, the argument type for theta functions and the Entry-12 machinery.
struct SignedMonomial {
    int sign = 1; // +1 or -1
    Exponent exponent;
};

inline SignedMonomial sm(int sign, Exponent e) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("SignedMonomial: sign must be +-1");
    return SignedMonomial{sign, e};
}

inline SignedMonomial operator*(SignedMonomial a, SignedMonomial b) {
    return SignedMonomial{a.sign * b.sign, a.exponent + b.exponent};
}

inline SignedMonomial operator/(SignedMonomial a, SignedMonomial b) {
    return SignedMonomial{a.sign * b.sign, a.exponent - b.exponent};
}

inline SignedMonomial sm_pow(SignedMonomial a, int k) {
    if (k < 0) throw std::invalid_argument("sm_pow: negative power");
    return SignedMonomial{(k % 2 == 0) ? 1 : a.sign, k * a.exponent};
}

inline SignedMonomial operator-(SignedMonomial a) { return SignedMonomial{-a.sign, a.exponent}; }

/// One q-Pochhammer block: prod_{j>=0} (1 - lambda_sign * q^{start+j*modulus})^power.
/// lambda_sign -1 encodes (-q^start; q^modulus)_inf, whose factors are (1 + q^...).
struct PochhammerSpec {
    Exponent start;
    Exponent modulus;
    int power = 1;
    int lambda_sign = 1;
};

namespace detail {

struct PochUnits {
    std::int64_t start;
    std::int64_t modulus;
    int power;
    int lambda_sign;
};

inline PochUnits poch_units(const PochhammerSpec& spec, std::int64_t scale) {
    if (!(spec.modulus > Exponent(0)))
        throw std::invalid_argument("pochhammer: modulus must be positive");
    if (spec.power < 1) throw std::invalid_argument("pochhammer: power must be positive");
    if (spec.lambda_sign != 1 && spec.lambda_sign != -1)
        throw std::invalid_argument("pochhammer: sign must be +-1");
    return PochUnits{spec.start.lattice_units(scale), spec.modulus.lattice_units(scale),
                     spec.power, spec.lambda_sign};
}

// Sum of |e| over the finitely many factor exponents e < 0 in one pass.
inline std::int64_t poch_negative_weight(const PochUnits& u) {
    std::int64_t w = 0;
    for (std::int64_t e = u.start; e < 0; e += u.modulus) w += -e;
    return w * u.power;
}

inline bool poch_hits_zero(const PochUnits& u) {
    return u.lambda_sign == 1 && u.start <= 0 && (-u.start) % u.modulus == 0;
}

// Multiplies acc by every factor of one block with exponent <= cap; factors
// are exact binomials, so only the negative-exponent ones lower the
// truncation order. The cap is the fixed initial bound, not the current
// trunc: factors above the eroded trunc can still reach known coefficients
// through the Laurent part of the product.
inline LatticeSeries poch_apply(LatticeSeries acc, const PochUnits& u, std::int64_t cap) {
    for (int p = 0; p < u.power; ++p)
        for (std::int64_t e = u.start; e <= cap; e += u.modulus)
            acc = mul_binomial(acc, Int(-u.lambda_sign), e);
    return acc;
}

} // namespace detail

/// A product of Pochhammer blocks truncated at order n. Negative start
/// exponents are handled exactly (Laurent factors); a factor hitting q^0
/// with positive lambda makes the whole product the zero series.
inline LatticeSeries pochhammer_product(const std::vector<PochhammerSpec>& specs,
                                        std::int64_t scale, std::int64_t n) {
    std::int64_t margin = 0;
    std::vector<detail::PochUnits> units;
    units.reserve(specs.size());
    for (const auto& s : specs) {
        units.push_back(detail::poch_units(s, scale));
        margin += detail::poch_negative_weight(units.back());
    }
    for (const auto& u : units)
        if (detail::poch_hits_zero(u)) return LatticeSeries::zero(scale, n);
    LatticeSeries acc = one(scale, n + margin);
    for (const auto& u : units) acc = detail::poch_apply(acc, u, n + margin);
    return acc.trunc() == n ? acc : truncate(acc, n);
}

inline LatticeSeries pochhammer(const PochhammerSpec& spec, std::int64_t scale, std::int64_t n) {
    return pochhammer_product({spec}, scale, n);
}

/// (q^{+-a}; q^M)_inf = (q^a; q^M)_inf (q^{M-a}; q^M)_inf with 0 < a < M.
/// For a = M/2 both blocks coincide and the result is the square of one.
inline LatticeSeries pm_pochhammer(const Exponent& a, const Exponent& m, std::int64_t scale,
                                   std::int64_t n) {
    if (!(a > Exponent(0) && a < m))
        throw std::invalid_argument("pm_pochhammer: need 0 < a < modulus");
    return pochhammer_product({{a, m, 1, 1}, {m - a, m, 1, 1}}, scale, n);
}

/// Ramanujan's theta function as the bilateral sum
/// sum_n a^{n(n+1)/2} b^{n(n-1)/2}, truncated at lattice order n.
/// Requires exponent(ab) > 0; individual exponents may be <= 0, in which
/// case the term exponent dips before the quadratic growth takes over.
inline LatticeSeries theta_sum(SignedMonomial a, SignedMonomial b, std::int64_t scale,
                               std::int64_t n) {
    const std::int64_t ea = a.exponent.lattice_units(scale);
    const std::int64_t eb = b.exponent.lattice_units(scale);
    if (ea + eb <= 0)
        throw std::domain_error("theta_sum: exponent(ab) must be positive, got " +
                                exponent_string(ea + eb, scale));
    const auto term_exp = [&](std::int64_t k) {
        return ea * (k * (k + 1) / 2) + eb * (k * (k - 1) / 2);
    };
    const auto term_sign = [&](std::int64_t k) {
        const std::int64_t ta = k * (k + 1) / 2, tb = k * (k - 1) / 2;
        int s = 1;
        if (a.sign < 0 && ((ta % 2 + 2) % 2) == 1) s = -s;
        if (b.sign < 0 && ((tb % 2 + 2) % 2) == 1) s = -s;
        return s;
    };
    std::vector<std::pair<std::int64_t, int>> terms;
    // Walk each direction until past the vertex of the exponent parabola and
    // above the cutoff; E(k)-E(k-1) = ((ea+eb)(2k-1) + ea - eb)/2.
    for (std::int64_t k = 0;; ++k) {
        const std::int64_t e = term_exp(k);
        if (e <= n) terms.emplace_back(e, term_sign(k));
        else if ((ea + eb) * (2 * k + 1) + ea - eb > 0) break;
    }
    for (std::int64_t k = -1;; --k) {
        const std::int64_t e = term_exp(k);
        if (e <= n) terms.emplace_back(e, term_sign(k));
        else if ((ea + eb) * (2 * k - 1) + ea - eb < 0) break;
    }
    if (terms.empty()) return LatticeSeries::zero(scale, n);
    std::int64_t lo = terms.front().first;
    for (const auto& t : terms) lo = std::min(lo, t.first);
    std::vector<Int> v(static_cast<std::size_t>(n - lo + 1));
    for (const auto& t : terms) v[static_cast<std::size_t>(t.first - lo)] += t.second;
    return LatticeSeries::make(scale, lo, n, std::move(v));
}

namespace detail {

// (lambda; ratio)_inf as pochhammer blocks. A negative ratio alternates the
// factor signs, so it splits by parity of the factor index:
// (l; -q^m) = (l; q^{2m}) (-l q^m; q^{2m}).
inline void append_poch_blocks(std::vector<PochhammerSpec>& out, SignedMonomial lambda,
                               SignedMonomial ratio) {
    if (ratio.sign > 0) {
        out.push_back({lambda.exponent, ratio.exponent, 1, lambda.sign});
    } else {
        out.push_back({lambda.exponent, 2 * ratio.exponent, 1, lambda.sign});
        out.push_back({lambda.exponent + ratio.exponent, 2 * ratio.exponent, 1, -lambda.sign});
    }
}

} // namespace detail

/// The triple-product route: f(a,b) = (-a; ab)_inf (-b; ab)_inf (ab; ab)_inf.
inline LatticeSeries theta_product(SignedMonomial a, SignedMonomial b, std::int64_t scale,
                                   std::int64_t n) {
    const SignedMonomial ab = a * b;
    if (!(ab.exponent > Exponent(0)))
        throw std::domain_error("theta_product: exponent(ab) must be positive");
    std::vector<PochhammerSpec> blocks;
    detail::append_poch_blocks(blocks, -a, ab);
    detail::append_poch_blocks(blocks, -b, ab);
    detail::append_poch_blocks(blocks, ab, ab);
    return pochhammer_product(blocks, scale, n);
}

namespace detail {

inline void require_positive(const Exponent& k, const char* who) {
    if (!(k > Exponent(0))) throw std::invalid_argument(std::string(who) + ": need exponent > 0");
}

} // namespace detail

/// phi(s*q^k) = f(s*q^k, s*q^k)
inline LatticeSeries phi(int sign, const Exponent& k, std::int64_t scale, std::int64_t n) {
    detail::require_positive(k, "phi");
    return theta_sum(sm(sign, k), sm(sign, k), scale, n);
}

/// psi(q^k) = f(q^k, q^{3k})
inline LatticeSeries psi(const Exponent& k, std::int64_t scale, std::int64_t n) {
    detail::require_positive(k, "psi");
    return theta_sum(sm(1, k), sm(1, 3 * k), scale, n);
}

/// f(-q^k) = f(-q^k, -q^{2k}), the pentagonal-number series for k = 1.
inline LatticeSeries f_minus(const Exponent& k, std::int64_t scale, std::int64_t n) {
    detail::require_positive(k, "f_minus");
    return theta_sum(sm(-1, k), sm(-1, 2 * k), scale, n);
}

/// chi(q^k) = (-q^k; q^{2k})_inf
inline LatticeSeries chi(const Exponent& k, std::int64_t scale, std::int64_t n) {
    detail::require_positive(k, "chi");
    return pochhammer({k, 2 * k, 1, -1}, scale, n);
}

namespace detail {

inline LatticeSeries theta_of(SignedMonomial x, SignedMonomial y, std::int64_t scale,
                              std::int64_t n) {
    return theta_sum(x, y, scale, n);
}

inline LatticeSeries phi_of(SignedMonomial x, std::int64_t scale, std::int64_t n) {
    return theta_sum(x, x, scale, n);
}

inline LatticeSeries psi_of(SignedMonomial x, std::int64_t scale, std::int64_t n) {
    return theta_sum(x, sm_pow(x, 3), scale, n);
}

inline LatticeSeries sm_times(const LatticeSeries& s, SignedMonomial x, std::int64_t scale,
                              const Int& c = Int(1)) {
    return mul_monomial(s, Int(x.sign) * c, x.exponent.lattice_units(scale));
}

} // namespace detail

inline const std::vector<std::string>& helper_ids() {
    static const std::vector<std::string> ids = {"E20A", "E26", "E27", "E31", "E38", "E40"};
    return ids;
}

namespace detail {

inline LatticeSeries helper_residual_at(std::string_view id, SignedMonomial a, SignedMonomial b,
                                        std::int64_t scale, std::int64_t n) {
    using namespace detail;
    if (id == "E20A") {
        LatticeSeries lhs = theta_of(a, b, scale, n);
        LatticeSeries rhs = theta_of(sm_pow(a, 3) * b, a * sm_pow(b, 3), scale, n) +
                            sm_times(theta_of(b / a, sm_pow(a, 5) * sm_pow(b, 3), scale, n), a, scale);
        return lhs - rhs;
    }
    if (id == "E26") {
        LatticeSeries lhs =
            theta_of(a, a * sm_pow(b, 2), scale, n) * theta_of(b, sm_pow(a, 2) * b, scale, n);
        LatticeSeries rhs = theta_of(a, b, scale, n) * psi_of(a * b, scale, n);
        return lhs - rhs;
    }
    if (id == "E27") {
        LatticeSeries lhs = theta_of(a, b, scale, n) * theta_of(-a, -b, scale, n);
        LatticeSeries rhs = theta_of(-sm_pow(a, 2), -sm_pow(b, 2), scale, n) *
                            phi_of(-(a * b), scale, n);
        return lhs - rhs;
    }
    if (id == "E31") {
        LatticeSeries fab = theta_of(a, b, scale, n);
        LatticeSeries lhs = fab * fab;
        LatticeSeries rhs =
            theta_of(sm_pow(a, 2), sm_pow(b, 2), scale, n) * phi_of(a * b, scale, n) +
            sm_times(theta_of(b / a, sm_pow(a, 3) * b, scale, n) *
                         psi_of(sm_pow(a, 2) * sm_pow(b, 2), scale, n),
                     a, scale, Int(2));
        return lhs - rhs;
    }
    const auto fm = [&](std::int64_t k) { return f_minus(Exponent(k), scale, n); };
    const auto th = [&](std::int64_t i, std::int64_t j) {
        return theta_of(sm(-1, Exponent(i)), sm(-1, Exponent(j)), scale, n);
    };
    if (id == "E38") {
        LatticeSeries lhs = th(1, 8) * th(2, 7) * th(4, 5);
        LatticeSeries rhs = fm(1) * fm(9) * fm(9) * fm(9) * invert(fm(3));
        return lhs - rhs;
    }
    if (id == "E40") {
        LatticeSeries lhs = one(scale, n);
        for (std::int64_t i = 1; i <= 6; ++i) lhs = lhs * th(i, 13 - i);
        LatticeSeries rhs = fm(1);
        for (int i = 0; i < 5; ++i) rhs = rhs * fm(13);
        return lhs - rhs;
    }
    throw std::invalid_argument("helper_residual: unknown identity id '" + std::string(id) + "'");
}

} // namespace detail

/// LHS - RHS of one of the proof identities, as a series known through
/// order n. E38 and E40 take no arguments.
///
///   E20A: f(a,b) = f(a^3 b, a b^3) + a f(b/a, a^5 b^3)
///   E26:  f(a, a b^2) f(b, a^2 b) = f(a,b) psi(ab)
///   E27:  f(a,b) f(-a,-b) = f(-a^2, -b^2) phi(-ab)
///   E31:  f(a,b)^2 = f(a^2,b^2) phi(ab) + 2a f(b/a, a^3 b) psi(a^2 b^2)
///   E38:  f(-q,-q^8) f(-q^2,-q^7) f(-q^4,-q^5) = f(-q) f(-q^9)^3 / f(-q^3)
///   E40:  prod_{i=1..6} f(-q^i, -q^{13-i}) = f(-q) f(-q^13)^5
///
/// Arguments with negative exponents erode the truncation of intermediate
/// products; the deficit is independent of the order, so a recomputation at
/// the inflated order restores knowledge through n exactly.
inline LatticeSeries helper_residual(std::string_view id, SignedMonomial a, SignedMonomial b,
                                     std::int64_t scale, std::int64_t n) {
    std::int64_t margin = 0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        LatticeSeries r = detail::helper_residual_at(id, a, b, scale, n + margin);
        if (r.trunc() >= n) return r.trunc() == n ? r : truncate(r, n);
        margin += n - r.trunc();
    }
    throw std::domain_error("helper_residual: cannot reach order " + std::to_string(n));
}

inline LatticeSeries helper_residual(std::string_view id, std::int64_t scale, std::int64_t n) {
    return helper_residual(id, sm(1, Exponent(1)), sm(1, Exponent(1)), scale, n);
}

} // namespace qid
