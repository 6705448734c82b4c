#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <qid/exponent.hpp>

namespace qid {

using Int = boost::multiprecision::cpp_int;

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return -floor_div(-a, b);
}

} // namespace detail

/// Truncated Laurent series on the exponent lattice (1/scale)*Z with exact
/// integer coefficients. Storage is dense over lattice indices
/// min_exp..trunc; indices above trunc are unknown (reading them is an
/// error, never a silent zero), indices below min_exp are known zeros.
/// The zero series is canonical: empty storage, min_exp == trunc + 1.
/// Values are immutable after construction.
class LatticeSeries {
public:
    static LatticeSeries zero(std::int64_t scale, std::int64_t trunc) {
        check_scale(scale);
        LatticeSeries s;
        s.scale_ = scale;
        s.min_exp_ = trunc + 1;
        s.trunc_ = trunc;
        return s;
    }

    /// Normalizing constructor: strips leading zeros, canonicalizes zero.
    static LatticeSeries make(std::int64_t scale, std::int64_t min_exp, std::int64_t trunc,
                              std::vector<Int> coeffs) {
        check_scale(scale);
        if (trunc - min_exp + 1 != static_cast<std::int64_t>(coeffs.size()))
            throw std::invalid_argument("LatticeSeries: storage does not span min_exp..trunc");
        std::size_t lead = 0;
        while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
        if (lead == coeffs.size()) return zero(scale, trunc);
        LatticeSeries s;
        s.scale_ = scale;
        s.min_exp_ = min_exp + static_cast<std::int64_t>(lead);
        s.trunc_ = trunc;
        if (lead > 0) coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
        s.coeffs_ = std::move(coeffs);
        return s;
    }

    std::int64_t scale() const { return scale_; }
    std::int64_t min_exp() const { return min_exp_; }
    std::int64_t trunc() const { return trunc_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Int>& coeffs() const { return coeffs_; }

    const Int& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of the zero series");
        return coeffs_.front();
    }

    /// Coefficient at a lattice index; hard error past the truncation order.
    Int unit_coeff(std::int64_t idx) const {
        if (idx > trunc_)
            throw std::out_of_range("coefficient query at index " + std::to_string(idx) +
                                    " past truncation " + std::to_string(trunc_));
        if (idx < min_exp_) return Int(0);
        return coeffs_[static_cast<std::size_t>(idx - min_exp_)];
    }

    bool operator==(const LatticeSeries& o) const {
        return scale_ == o.scale_ && min_exp_ == o.min_exp_ && trunc_ == o.trunc_ &&
               coeffs_ == o.coeffs_;
    }
    bool operator!=(const LatticeSeries& o) const { return !(*this == o); }

private:
    static void check_scale(std::int64_t scale) {
        if (scale <= 0) throw std::invalid_argument("LatticeSeries: scale must be positive");
    }

    std::int64_t scale_ = 1;
    std::int64_t min_exp_ = 1;
    std::int64_t trunc_ = 0;
    std::vector<Int> coeffs_;
};

inline void require_same_scale(const LatticeSeries& a, const LatticeSeries& b) {
    if (a.scale() != b.scale())
        throw std::invalid_argument("scale mismatch: " + std::to_string(a.scale()) + " vs " +
                                    std::to_string(b.scale()) + " (rescale first)");
}

inline LatticeSeries monomial(const Int& c, const Exponent& e, std::int64_t scale,
                              std::int64_t trunc) {
    const std::int64_t idx = e.lattice_units(scale);
    // A monomial past the truncation order is indistinguishable from zero
    // at this precision.
    if (c == 0 || idx > trunc) return LatticeSeries::zero(scale, trunc);
    std::vector<Int> v(static_cast<std::size_t>(trunc - idx + 1));
    v[0] = c;
    return LatticeSeries::make(scale, idx, trunc, std::move(v));
}

inline LatticeSeries one(std::int64_t scale, std::int64_t trunc) {
    return monomial(Int(1), Exponent(0), scale, trunc);
}

inline LatticeSeries add(const LatticeSeries& a, const LatticeSeries& b) {
    require_same_scale(a, b);
    const std::int64_t trunc = std::min(a.trunc(), b.trunc());
    const std::int64_t lo = std::min(a.min_exp(), b.min_exp());
    if (lo > trunc) return LatticeSeries::zero(a.scale(), trunc);
    std::vector<Int> v(static_cast<std::size_t>(trunc - lo + 1));
    for (std::int64_t i = std::max(lo, a.min_exp()); i <= std::min(trunc, a.trunc()); ++i)
        v[static_cast<std::size_t>(i - lo)] += a.coeffs()[static_cast<std::size_t>(i - a.min_exp())];
    for (std::int64_t i = std::max(lo, b.min_exp()); i <= std::min(trunc, b.trunc()); ++i)
        v[static_cast<std::size_t>(i - lo)] += b.coeffs()[static_cast<std::size_t>(i - b.min_exp())];
    return LatticeSeries::make(a.scale(), lo, trunc, std::move(v));
}

inline LatticeSeries neg(const LatticeSeries& a) {
    std::vector<Int> v(a.coeffs().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = -a.coeffs()[i];
    return LatticeSeries::make(a.scale(), a.is_zero() ? a.trunc() + 1 : a.min_exp(), a.trunc(),
                               std::move(v));
}

inline LatticeSeries sub(const LatticeSeries& a, const LatticeSeries& b) { return add(a, neg(b)); }

inline LatticeSeries scalar_mul(const LatticeSeries& a, const Int& c) {
    if (c == 0 || a.is_zero()) return LatticeSeries::zero(a.scale(), a.trunc());
    std::vector<Int> v(a.coeffs().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a.coeffs()[i];
    return LatticeSeries::make(a.scale(), a.min_exp(), a.trunc(), std::move(v));
}

/// Dense convolution. The product of a series known to order ta with one of
/// lowest exponent mb is known to ta + mb (and symmetrically), so
/// trunc = min(ta + mb, tb + ma); for a zero operand its virtual
/// min_exp = trunc + 1 feeds the same rule.
inline LatticeSeries mul(const LatticeSeries& a, const LatticeSeries& b) {
    require_same_scale(a, b);
    const std::int64_t trunc =
        std::min(a.trunc() + b.min_exp(), b.trunc() + a.min_exp());
    if (a.is_zero() || b.is_zero()) return LatticeSeries::zero(a.scale(), trunc);
    const std::int64_t lo = a.min_exp() + b.min_exp();
    if (lo > trunc) return LatticeSeries::zero(a.scale(), trunc);
    std::vector<Int> v(static_cast<std::size_t>(trunc - lo + 1));
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ca[i] == 0) continue;
        const std::int64_t ea = a.min_exp() + static_cast<std::int64_t>(i);
        const std::int64_t jmax =
            std::min<std::int64_t>(static_cast<std::int64_t>(cb.size()) - 1,
                                   trunc - ea - b.min_exp());
        for (std::int64_t j = 0; j <= jmax; ++j) {
            if (cb[static_cast<std::size_t>(j)] == 0) continue;
            v[static_cast<std::size_t>(ea + b.min_exp() + j - lo)] +=
                ca[i] * cb[static_cast<std::size_t>(j)];
        }
    }
    return LatticeSeries::make(a.scale(), lo, trunc, std::move(v));
}

/// Exact multiplication by the monomial c*q^{e/scale}; c must be nonzero.
inline LatticeSeries mul_monomial(const LatticeSeries& a, const Int& c, std::int64_t e) {
    if (c == 0) throw std::invalid_argument("mul_monomial: zero coefficient");
    if (a.is_zero()) return LatticeSeries::zero(a.scale(), a.trunc() + e);
    std::vector<Int> v(a.coeffs().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a.coeffs()[i];
    return LatticeSeries::make(a.scale(), a.min_exp() + e, a.trunc() + e, std::move(v));
}

/// Exact multiplication by the binomial (1 + c*q^{e/scale}). A negative e
/// lowers the truncation order by |e|: coefficients above trunc(a) + e would
/// need unknown coefficients of a.
inline LatticeSeries mul_binomial(const LatticeSeries& a, const Int& c, std::int64_t e) {
    if (c == 0 || a.is_zero()) {
        if (a.is_zero()) return LatticeSeries::zero(a.scale(), a.trunc() + std::min<std::int64_t>(0, e));
        return a;
    }
    const std::int64_t shift = std::min<std::int64_t>(0, e);
    const std::int64_t lo = a.min_exp() + shift;
    const std::int64_t trunc = a.trunc() + shift;
    std::vector<Int> v(static_cast<std::size_t>(trunc - lo + 1));
    for (std::int64_t x = lo; x <= trunc; ++x) {
        Int acc = (x >= a.min_exp() && x <= a.trunc())
                      ? a.coeffs()[static_cast<std::size_t>(x - a.min_exp())]
                      : Int(0);
        const std::int64_t y = x - e;
        if (y >= a.min_exp() && y <= a.trunc())
            acc += c * a.coeffs()[static_cast<std::size_t>(y - a.min_exp())];
        v[static_cast<std::size_t>(x - lo)] = std::move(acc);
    }
    return LatticeSeries::make(a.scale(), lo, trunc, std::move(v));
}

/// Reciprocal of a unit-led series: the lowest coefficient must be +-1.
/// Writing a = l*q^m*(1 + u), the reciprocal is known to trunc(a) - 2m.
inline LatticeSeries invert(const LatticeSeries& a) {
    if (a.is_zero()) throw std::domain_error("invert: zero series");
    if (a.leading() != 1 && a.leading() != -1)
        throw std::domain_error("invert: leading coefficient is not a unit");
    const std::int64_t m = a.min_exp();
    const std::int64_t n = a.trunc() - m; // length - 1
    const Int s = a.leading();
    std::vector<Int> b(static_cast<std::size_t>(n + 1));
    b[0] = s;
    const auto& u = a.coeffs();
    for (std::int64_t k = 1; k <= n; ++k) {
        Int acc = 0;
        for (std::int64_t j = 1; j <= k; ++j) {
            if (u[static_cast<std::size_t>(j)] == 0) continue;
            acc += u[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
        }
        b[static_cast<std::size_t>(k)] = -s * acc;
    }
    return LatticeSeries::make(a.scale(), -m, a.trunc() - 2 * m, std::move(b));
}

/// View of the same series at another scale; one scale must divide the other,
/// and downscaling requires every nonzero coefficient to sit on the coarser
/// lattice.
inline LatticeSeries rescale(const LatticeSeries& a, std::int64_t new_scale) {
    if (new_scale <= 0) throw std::invalid_argument("rescale: scale must be positive");
    if (new_scale == a.scale()) return a;
    if (new_scale % a.scale() == 0) {
        const std::int64_t f = new_scale / a.scale();
        if (a.is_zero()) return LatticeSeries::zero(new_scale, a.trunc() * f);
        const std::int64_t lo = a.min_exp() * f;
        const std::int64_t trunc = a.trunc() * f;
        std::vector<Int> v(static_cast<std::size_t>(trunc - lo + 1));
        for (std::size_t i = 0; i < a.coeffs().size(); ++i)
            v[i * static_cast<std::size_t>(f)] = a.coeffs()[i];
        return LatticeSeries::make(new_scale, lo, trunc, std::move(v));
    }
    if (a.scale() % new_scale == 0) {
        const std::int64_t g = a.scale() / new_scale;
        const std::int64_t trunc = detail::floor_div(a.trunc(), g);
        if (a.is_zero()) return LatticeSeries::zero(new_scale, trunc);
        for (std::size_t i = 0; i < a.coeffs().size(); ++i)
            if (a.coeffs()[i] != 0 && (a.min_exp() + static_cast<std::int64_t>(i)) % g != 0)
                throw std::domain_error(
                    "rescale: coefficient at " +
                    exponent_string(a.min_exp() + static_cast<std::int64_t>(i), a.scale()) +
                    " is off the target lattice");
        const std::int64_t lo = a.min_exp() / g;
        std::vector<Int> v(static_cast<std::size_t>(trunc - lo + 1));
        for (std::size_t i = 0; i < a.coeffs().size(); i += static_cast<std::size_t>(g))
            v[i / static_cast<std::size_t>(g)] = a.coeffs()[i];
        return LatticeSeries::make(new_scale, lo, trunc, std::move(v));
    }
    throw std::invalid_argument("rescale: incompatible scales " + std::to_string(a.scale()) +
                                " -> " + std::to_string(new_scale));
}

/// q -> q^k on every exponent; k must be a positive rational and every image
/// exponent must land on the requested output lattice.
inline LatticeSeries substitute_power(const LatticeSeries& a, const Exponent& k,
                                      std::int64_t out_scale) {
    if (out_scale <= 0) throw std::invalid_argument("substitute_power: scale must be positive");
    if (!(k > Exponent(0))) throw std::invalid_argument("substitute_power: k must be positive");
    // image of units i at scale D is i*k*out_scale/D units at out_scale
    const auto image = [&](std::int64_t i) -> std::pair<std::int64_t, bool> {
        const std::int64_t num = i * k.num() * out_scale;
        const std::int64_t den = k.den() * a.scale();
        return {detail::floor_div(num, den), num % den == 0};
    };
    const std::int64_t trunc = image(a.trunc()).first;
    if (a.is_zero()) return LatticeSeries::zero(out_scale, trunc);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        if (!image(a.min_exp() + static_cast<std::int64_t>(i)).second)
            throw std::domain_error(
                "substitute_power: image of " +
                exponent_string(a.min_exp() + static_cast<std::int64_t>(i), a.scale()) +
                " not representable at scale " + std::to_string(out_scale));
    }
    const std::int64_t lo = image(a.min_exp()).first;
    std::vector<Int> v(static_cast<std::size_t>(trunc - lo + 1));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        v[static_cast<std::size_t>(image(a.min_exp() + static_cast<std::int64_t>(i)).first - lo)] =
            a.coeffs()[i];
    }
    return LatticeSeries::make(out_scale, lo, trunc, std::move(v));
}

/// The series sum_n a_{mn+r} q^n (integer-exponent input only).
inline LatticeSeries extract_progression(const LatticeSeries& a, std::int64_t r, std::int64_t m) {
    if (a.scale() != 1)
        throw std::invalid_argument("extract_progression: input must have scale 1");
    if (m <= 0) throw std::invalid_argument("extract_progression: modulus must be positive");
    r = ((r % m) + m) % m;
    const std::int64_t n_hi = detail::floor_div(a.trunc() - r, m);
    if (a.is_zero()) return LatticeSeries::zero(1, n_hi);
    const std::int64_t n_lo = detail::ceil_div(a.min_exp() - r, m);
    if (n_lo > n_hi) return LatticeSeries::zero(1, n_hi);
    std::vector<Int> v(static_cast<std::size_t>(n_hi - n_lo + 1));
    for (std::int64_t n = n_lo; n <= n_hi; ++n)
        v[static_cast<std::size_t>(n - n_lo)] = a.unit_coeff(m * n + r);
    return LatticeSeries::make(1, n_lo, n_hi, std::move(v));
}

/// Exact coefficient at a rational exponent. Off-lattice exponents within
/// the known range are genuine zeros; queries past the truncation throw.
inline Int coefficient(const LatticeSeries& a, const Exponent& e) {
    if (e > Exponent(a.trunc(), a.scale()))
        throw std::out_of_range("coefficient query at " + e.str() + " past truncation " +
                                exponent_string(a.trunc(), a.scale()));
    if (!e.on_lattice(a.scale())) return Int(0);
    return a.unit_coeff(e.lattice_units(a.scale()));
}

struct DiffWitness {
    std::int64_t exp_units;
    std::int64_t scale;
    Int lhs;
    Int rhs;
};

/// Compares two series through lattice order N; both must be known that far.
/// Returns the smallest differing exponent with both coefficients, or
/// nothing when equal.
inline std::optional<DiffWitness> eq_to_order(const LatticeSeries& a, const LatticeSeries& b,
                                              std::int64_t n) {
    require_same_scale(a, b);
    if (a.trunc() < n || b.trunc() < n)
        throw std::out_of_range("eq_to_order: operand truncated below comparison order");
    const std::int64_t lo = std::min(a.is_zero() ? n : a.min_exp(), b.is_zero() ? n : b.min_exp());
    for (std::int64_t i = std::min(lo, n); i <= n; ++i) {
        Int ca = a.unit_coeff(i);
        Int cb = b.unit_coeff(i);
        if (ca != cb) return DiffWitness{i, a.scale(), std::move(ca), std::move(cb)};
    }
    return std::nullopt;
}

/// Restricts knowledge to a lower truncation order.
inline LatticeSeries truncate(const LatticeSeries& a, std::int64_t new_trunc) {
    if (new_trunc > a.trunc())
        throw std::out_of_range("truncate: cannot extend knowledge past trunc");
    if (new_trunc == a.trunc()) return a;
    if (a.is_zero() || a.min_exp() > new_trunc) return LatticeSeries::zero(a.scale(), new_trunc);
    std::vector<Int> v(a.coeffs().begin(),
                       a.coeffs().begin() + static_cast<std::ptrdiff_t>(new_trunc - a.min_exp() + 1));
    return LatticeSeries::make(a.scale(), a.min_exp(), new_trunc, std::move(v));
}

inline LatticeSeries operator+(const LatticeSeries& a, const LatticeSeries& b) { return add(a, b); }
inline LatticeSeries operator-(const LatticeSeries& a, const LatticeSeries& b) { return sub(a, b); }
inline LatticeSeries operator-(const LatticeSeries& a) { return neg(a); }
inline LatticeSeries operator*(const LatticeSeries& a, const LatticeSeries& b) { return mul(a, b); }

/// Human-readable rendering, e.g. "1 - q^{1/2} + 2q^3 + O(q^{7/2})".
inline std::string to_pretty_string(const LatticeSeries& a, std::size_t max_terms = 24) {
    std::ostringstream os;
    std::size_t shown = 0;
    bool first = true;
    for (std::size_t i = 0; i < a.coeffs().size() && shown < max_terms; ++i) {
        const Int& c = a.coeffs()[i];
        if (c == 0) continue;
        const std::int64_t e = a.min_exp() + static_cast<std::int64_t>(i);
        Int abs_c = c < 0 ? Int(-c) : c;
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        const bool unit_coeff = abs_c == 1 && e != 0;
        if (!unit_coeff) os << abs_c.str();
        if (e != 0) {
            os << "q";
            if (e != a.scale()) {
                const std::string es = exponent_string(e, a.scale());
                os << (es.find('/') == std::string::npos && e > 0 ? "^" + es : "^{" + es + "}");
            }
        }
        ++shown;
    }
    if (first) os << "0";
    os << " + O(q^{" << exponent_string(a.trunc() + 1, a.scale()) << "})";
    return os.str();
}

} // namespace qid
