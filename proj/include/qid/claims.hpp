#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <qid/cfrac.hpp>
#include <qid/dissection.hpp>
#include <qid/partitions.hpp>
#include <qid/series.hpp>
#include <qid/theta.hpp>

namespace qid {

// ---------------------------------------------------------------------------
// Theta identities behind the continued fractions (families A, B, C).
// ---------------------------------------------------------------------------

enum class SignCase { upper, lower };

namespace detail {

struct Theta3Family {
    char family;
    std::int64_t modulus;   // 18, 26, 30
    int linear_count;       // items with both sign cases
    bool has_product;       // trailing product item
    std::vector<int> product_indices;
};

inline const Theta3Family& theta3_family(std::string_view theorem) {
    static const std::vector<Theta3Family> fams = {
        {'A', 18, 4, true, {1, 3, 4}},
        {'B', 26, 6, true, {1, 2, 3, 4, 5, 6}},
        {'C', 30, 7, false, {}},
    };
    if (theorem == "T31") return fams[0];
    if (theorem == "T32") return fams[1];
    if (theorem == "T33") return fams[2];
    throw std::invalid_argument("theta3_family: unknown theorem '" + std::string(theorem) + "'");
}

inline int roman_to_int(std::string_view r) {
    static const std::pair<std::string_view, int> table[] = {
        {"vii", 7}, {"iii", 3}, {"vi", 6}, {"iv", 4}, {"ii", 2}, {"v", 5}, {"i", 1}};
    for (const auto& [s, v] : table)
        if (r == s) return v;
    throw std::invalid_argument("bad roman numeral '" + std::string(r) + "'");
}

inline std::string int_to_roman(int v) {
    static const char* table[] = {"", "i", "ii", "iii", "iv", "v", "vi", "vii"};
    return table[v];
}

// Closed form of the i-th fraction of a family as a theta quotient, scale 2.
inline LatticeSeries theta3_quotient(const Theta3Family& fam, int i, std::int64_t n) {
    const std::int64_t u = (fam.modulus + 2) / 4 - i;
    const std::int64_t v = fam.modulus / 2 - u;
    LatticeSeries num =
        theta_sum(sm(-1, Exponent(u)), sm(-1, Exponent(fam.modulus - u)), 2, n);
    LatticeSeries den =
        theta_sum(sm(-1, Exponent(v)), sm(-1, Exponent(fam.modulus - v)), 2, n);
    return num * invert(den);
}

} // namespace detail

/// Residual of one linear theta identity:
///   1/X_i(q) -+ q^{(2i-1)/2} X_i(q)
///     = f(-+q^{(2i-1)/2}, -+q^{(m-(2i-1))/2}) phi(+-q^{m/4})
///       / (f(-q^u, -q^v) psi(q^{m/2}))
/// at scale 2 through lattice order n. The denominator pair (u, v) is the
/// same pair that forms the fraction's own theta quotient.
inline LatticeSeries theorem3_linear_residual(std::string_view theorem, int i, SignCase sc,
                                              std::int64_t n,
                                              std::optional<std::array<std::int64_t, 2>>
                                                  denominator_override = std::nullopt) {
    const auto& fam = detail::theta3_family(theorem);
    if (i < 1 || i > fam.linear_count)
        throw std::invalid_argument("theorem3_linear_residual: index out of range");
    const std::int64_t m = fam.modulus;
    const std::int64_t u = (m + 2) / 4 - i;
    const std::int64_t v = m / 2 - u;
    const std::int64_t h = 2 * i - 1; // exponent (2i-1)/2 in scale-2 units
    const int sigma = sc == SignCase::upper ? -1 : 1;

    LatticeSeries quot = detail::theta3_quotient(fam, i, n);
    LatticeSeries lhs = invert(quot) + mul_monomial(quot, Int(sigma), h);

    LatticeSeries num = theta_sum(sm(sigma, Exponent(h, 2)), sm(sigma, Exponent(m - h, 2)), 2, n) *
                        phi(-sigma, Exponent(m, 4), 2, n);
    const std::array<std::int64_t, 2> den_args =
        denominator_override.value_or(std::array<std::int64_t, 2>{u, v});
    LatticeSeries den = theta_sum(sm(-1, Exponent(den_args[0])), sm(-1, Exponent(den_args[1])), 2,
                                  n) *
                        psi(Exponent(m, 2), 2, n);
    return lhs - num * invert(den);
}

/// Residual of a product identity (the last item of theorems T31 and T32),
/// with the triple-product evaluations of the denominators replaced by their
/// eta-quotient closed forms:
///   prod_i (1/X_i + q^{(2i-1)/2} X_i)
///     = phi^k(-q^{m/4}) prod_i f(q^{(2i-1)/2}, q^{(m-(2i-1))/2})
///       / (psi^k(q^{m/2}) * [f(-q) f^3(-q^9) / f(-q^3)  or  f(-q) f^5(-q^13)])
inline LatticeSeries theorem3_product_residual(std::string_view theorem, std::int64_t n) {
    const auto& fam = detail::theta3_family(theorem);
    if (!fam.has_product)
        throw std::invalid_argument("theorem3_product_residual: theorem has no product item");
    const std::int64_t m = fam.modulus;
    LatticeSeries lhs = one(2, n);
    LatticeSeries num = one(2, n);
    LatticeSeries den = one(2, n);
    for (int i : fam.product_indices) {
        const std::int64_t h = 2 * i - 1;
        LatticeSeries quot = detail::theta3_quotient(fam, i, n);
        lhs = lhs * (invert(quot) + mul_monomial(quot, Int(1), h));
        num = num * theta_sum(sm(1, Exponent(h, 2)), sm(1, Exponent(m - h, 2)), 2, n);
        num = num * phi(-1, Exponent(m, 4), 2, n);
        den = den * psi(Exponent(m, 2), 2, n);
    }
    if (fam.family == 'A') {
        num = num * f_minus(Exponent(3), 2, n);
        den = den * f_minus(Exponent(1), 2, n);
        for (int k = 0; k < 3; ++k) den = den * f_minus(Exponent(9), 2, n);
    } else {
        den = den * f_minus(Exponent(1), 2, n);
        for (int k = 0; k < 5; ++k) den = den * f_minus(Exponent(13), 2, n);
    }
    return lhs - num * invert(den);
}

/// Residual for a registry claim id like "T31.i" / "T32.vii"; sign is
/// ignored for the product items.
inline LatticeSeries theorem3_residual(std::string_view claim_id, SignCase sc, std::int64_t n) {
    const auto dot = claim_id.find('.');
    if (dot == std::string_view::npos)
        throw std::invalid_argument("theorem3_residual: bad claim id");
    const std::string_view theorem = claim_id.substr(0, dot);
    const auto& fam = detail::theta3_family(theorem);
    const int item = detail::roman_to_int(claim_id.substr(dot + 1));
    if (item <= fam.linear_count) return theorem3_linear_residual(theorem, item, sc, n);
    return theorem3_product_residual(theorem, n);
}

// ---------------------------------------------------------------------------
// Claim registry and runner.
// ---------------------------------------------------------------------------

struct OrderChecked {
    std::int64_t units;
    std::int64_t scale;
};

struct ClaimWitness {
    std::string exponent; // reduced "k" or "k/D"
    std::string lhs;
    std::string rhs;
};

struct ClaimReport {
    std::string claim_id;
    std::string status; // "pass", "fail", "error"
    OrderChecked order_checked{0, 1};
    std::optional<ClaimWitness> witness;
    std::int64_t runtime_ms = 0;
    std::string detail; // only for status == "error"
};

namespace detail {

inline ClaimReport report_pass(std::string key, std::int64_t units, std::int64_t scale) {
    ClaimReport r;
    r.claim_id = std::move(key);
    r.status = "pass";
    r.order_checked = {units, scale};
    return r;
}

inline ClaimReport report_fail(std::string key, std::int64_t units, std::int64_t scale,
                               ClaimWitness w) {
    ClaimReport r;
    r.claim_id = std::move(key);
    r.status = "fail";
    r.order_checked = {units, scale};
    r.witness = std::move(w);
    return r;
}

// Pass iff the residual is the zero series through order n.
inline std::optional<ClaimWitness> residual_witness(const LatticeSeries& res, std::int64_t n) {
    if (res.is_zero()) return std::nullopt;
    for (std::int64_t e = res.min_exp(); e <= std::min(n, res.trunc()); ++e) {
        const Int& c = res.unit_coeff(e);
        if (c != 0)
            return ClaimWitness{exponent_string(e, res.scale()), c.str(), "0"};
    }
    return std::nullopt;
}

inline ClaimReport report_from_residual(std::string key, const LatticeSeries& res, std::int64_t n,
                                        std::int64_t scale) {
    if (auto w = residual_witness(res, n)) return report_fail(std::move(key), n, scale, *w);
    return report_pass(std::move(key), n, scale);
}

inline ClaimReport report_from_diff(std::string key, const std::optional<DiffWitness>& diff,
                                    std::int64_t n, std::int64_t scale) {
    if (diff)
        return report_fail(std::move(key), n, scale,
                           ClaimWitness{exponent_string(diff->exp_units, diff->scale),
                                        diff->lhs.str(), diff->rhs.str()});
    return report_pass(std::move(key), n, scale);
}

} // namespace detail

struct Claim {
    std::string key;
    std::string summary;
    std::int64_t default_order;
    std::int64_t scale;
    bool in_all = true;
    bool is_scan = false;
    std::function<ClaimReport(std::int64_t order, int depth_cap)> run;
};

namespace detail {

inline void add_helper_claims(std::vector<Claim>& out) {
    struct HelperPanel {
        const char* id;
        std::int64_t scale;
        std::int64_t order;
        std::vector<std::pair<SignedMonomial, SignedMonomial>> args;
    };
    const std::vector<HelperPanel> panels = {
        {"E20A", 4, 120,
         {{sm(-1, Exponent(1, 4)), sm(1, Exponent(17, 4))},
          {sm(1, Exponent(1, 4)), sm(-1, Exponent(17, 4))},
          {sm(1, Exponent(1)), sm(1, Exponent(1))}}},
        {"E26", 1, 200,
         {{sm(-1, Exponent(4)), sm(-1, Exponent(5))},
          {sm(-1, Exponent(6)), sm(-1, Exponent(7))},
          {sm(-1, Exponent(7)), sm(-1, Exponent(8))}}},
        {"E27", 4, 120,
         {{sm(-1, Exponent(1, 4)), sm(1, Exponent(17, 4))},
          {sm(-1, Exponent(3, 4)), sm(1, Exponent(15, 4))}}},
        {"E31", 4, 120,
         {{sm(1, Exponent(1, 4)), sm(-1, Exponent(17, 4))},
          {sm(1, Exponent(3, 4)), sm(-1, Exponent(15, 4))}}},
        {"E38", 1, 200, {}},
        {"E40", 1, 200, {}},
    };
    for (const auto& p : panels) {
        Claim c;
        c.key = p.id;
        c.summary = std::string("helper identity ") + p.id + " on its proof instances";
        c.default_order = p.order;
        c.scale = p.scale;
        const std::string id = p.id;
        const auto args = p.args;
        const std::int64_t scale = p.scale;
        c.run = [id, args, scale](std::int64_t n, int) {
            if (args.empty())
                return report_from_residual(id, helper_residual(id, scale, n), n, scale);
            for (const auto& [a, b] : args) {
                auto rep = report_from_residual(id, helper_residual(id, a, b, scale, n), n, scale);
                if (rep.status != "pass") return rep;
            }
            return report_pass(id, n, scale);
        };
        out.push_back(std::move(c));
    }
}

inline void add_triple_claim(std::vector<Claim>& out) {
    Claim c;
    c.key = "TRIPLE";
    c.summary = "theta sum equals triple product for all 34 named theta arguments";
    c.default_order = 200;
    c.scale = 1;
    c.run = [](std::int64_t n, int) {
        for (const auto& cf : all_named_cfs()) {
            for (const auto& pair : {cf.num_args, cf.den_args}) {
                const SignedMonomial a = sm(-1, Exponent(pair[0]));
                const SignedMonomial b = sm(-1, Exponent(pair[1]));
                auto rep = report_from_diff(
                    "TRIPLE", eq_to_order(theta_sum(a, b, 1, n), theta_product(a, b, 1, n), n), n,
                    1);
                if (rep.status != "pass") return rep;
            }
        }
        return report_pass("TRIPLE", n, 1);
    };
    out.push_back(std::move(c));
}

inline void add_cf_claims(std::vector<Claim>& out) {
    for (const auto& cf : all_named_cfs()) {
        Claim c;
        c.key = "CF." + cf.key;
        c.summary = "continued fraction " + cf.key + " stabilizes to its theta quotient";
        c.default_order = 60; // scale-2 units, i.e. q^30
        c.scale = 2;
        const NamedCF* ptr = &cf;
        c.run = [ptr](std::int64_t n, int depth_cap) {
            Stabilized st = named_cf_value(*ptr, n, depth_cap);
            return report_from_diff("CF." + ptr->key,
                                    eq_to_order(st.value, named_cf_quotient(*ptr, n), n), n, 2);
        };
        out.push_back(std::move(c));
    }
}

inline void add_dissection_claims(std::vector<Claim>& out) {
    for (std::int64_t t : {18, 26, 30}) {
        Claim c;
        c.key = "DISS." + std::to_string(t);
        c.summary = "p-dissection identity for the order-" + std::to_string(t) + " quotient";
        c.default_order = 200;
        c.scale = 1;
        c.run = [t](std::int64_t n, int) {
            return report_from_residual("DISS." + std::to_string(t),
                                        verify_dissection(dissection_instance(t), n), n, 1);
        };
        out.push_back(std::move(c));
    }
    for (std::string_view tag : reduction_tags()) {
        Claim c;
        c.key = "RED." + std::string(tag);
        c.summary = "reduction of the dissection to the " + std::string(tag) + " quotient";
        c.default_order = 200;
        c.scale = 1;
        const std::string tag_s(tag);
        c.run = [tag_s](std::int64_t n, int) {
            return report_from_residual("RED." + tag_s, verify_reduction(tag_s, n), n, 1);
        };
        out.push_back(std::move(c));
    }
}

inline void add_scan_claims(std::vector<Claim>& out) {
    for (const auto& q : quotient_registry()) {
        Claim c;
        c.key = std::string(q.claim_id);
        c.summary = std::string(q.display) + " coefficients vanish on " +
                    std::to_string(q.prog_m) + "n+" + std::to_string(q.prog_r);
        c.default_order = 500;
        c.scale = 1;
        c.is_scan = true;
        const QuotientSpec* spec = &q;
        c.run = [spec](std::int64_t n, int) {
            const ScanOutcome sc = vanish_scan(quotient_series(*spec, n), spec->prog_r,
                                               spec->prog_m, n);
            if (sc.status == ScanOutcome::Status::AllZero)
                return report_pass(std::string(spec->claim_id), n, 1);
            return report_fail(std::string(spec->claim_id), n, 1,
                               ClaimWitness{std::to_string(sc.n), sc.coefficient.str(), "0"});
        };
        out.push_back(std::move(c));
    }
}

inline void add_theta_identity_claims(std::vector<Claim>& out) {
    const std::pair<std::string, int> groups[] = {{"T31", 5}, {"T32", 7}, {"T33", 7}};
    for (const auto& [theorem, items] : groups) {
        const auto& fam = theta3_family(theorem);
        for (int i = 1; i <= items; ++i) {
            Claim c;
            c.key = theorem + "." + int_to_roman(i);
            c.default_order = 60; // scale-2 units, i.e. q^30
            c.scale = 2;
            const std::string key = c.key;
            if (i <= fam.linear_count) {
                c.summary = "theta identity for " + std::string(1, fam.family) +
                            std::to_string(i) + ", both sign cases";
                const std::string theorem_s = theorem;
                const int idx = i;
                c.run = [key, theorem_s, idx](std::int64_t n, int) {
                    for (SignCase sc : {SignCase::upper, SignCase::lower}) {
                        auto rep = report_from_residual(
                            key, theorem3_linear_residual(theorem_s, idx, sc, n), n, 2);
                        if (rep.status != "pass") return rep;
                    }
                    return report_pass(key, n, 2);
                };
            } else {
                c.summary = "product of the " + std::string(1, fam.family) +
                            "-family identities against its eta form";
                const std::string theorem_s = theorem;
                c.run = [key, theorem_s](std::int64_t n, int) {
                    return report_from_residual(key, theorem3_product_residual(theorem_s, n), n, 2);
                };
            }
            out.push_back(std::move(c));
        }
    }
    // The denominator printed for T32.iii; kept runnable to document the typo
    // but excluded from "all" (it can never pass).
    Claim printed;
    printed.key = "T32.iii-printed";
    printed.summary = "T32.iii with the printed denominator f(-q^4,-q^8) (expected to fail)";
    printed.default_order = 60;
    printed.scale = 2;
    printed.in_all = false;
    printed.run = [](std::int64_t n, int) {
        for (SignCase sc : {SignCase::upper, SignCase::lower}) {
            auto rep = report_from_residual(
                "T32.iii-printed",
                theorem3_linear_residual("T32", 3, sc, n, std::array<std::int64_t, 2>{4, 8}), n,
                2);
            if (rep.status != "pass") return rep;
        }
        return report_pass("T32.iii-printed", n, 2);
    };
    out.push_back(std::move(printed));
}

inline void add_partition_claims(std::vector<Claim>& out) {
    for (const auto& t : partition_theorems()) {
        Claim c;
        c.key = std::string(t.id);
        c.summary = "colored-partition identity " + std::string(t.id) + ", residuals zero";
        c.default_order = 200;
        c.scale = 1;
        const CountTriple* triple = &t;
        c.run = [triple](std::int64_t n, int) {
            const auto res = theorem_residual(*triple, n);
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(res.size()); ++i)
                if (res[static_cast<std::size_t>(i)] != 0)
                    return report_fail(std::string(triple->id), n, 1,
                                       ClaimWitness{std::to_string(i),
                                                    res[static_cast<std::size_t>(i)].str(), "0"});
            return report_pass(std::string(triple->id), n, 1);
        };
        out.push_back(std::move(c));
    }
}

} // namespace detail

inline const std::vector<Claim>& claim_registry() {
    static const std::vector<Claim> claims = [] {
        std::vector<Claim> v;
        detail::add_helper_claims(v);
        detail::add_triple_claim(v);
        detail::add_cf_claims(v);
        detail::add_dissection_claims(v);
        detail::add_scan_claims(v);
        detail::add_theta_identity_claims(v);
        detail::add_partition_claims(v);
        return v;
    }();
    return claims;
}

inline const Claim* find_claim(std::string_view key) {
    for (const auto& c : claim_registry())
        if (c.key == key) return &c;
    return nullptr;
}

struct CheckResult {
    std::vector<ClaimReport> reports;
    std::int64_t passed = 0;
    std::int64_t failed = 0;
    std::int64_t errors = 0;
    std::vector<std::string> scans_confirmed;
    std::vector<std::string> scan_counterexamples;
};

inline ClaimReport run_claim(const Claim& claim, std::int64_t order = -1, int depth_cap = 64,
                             bool timings = false) {
    const std::int64_t n = order >= 0 ? order : claim.default_order;
    const auto start = std::chrono::steady_clock::now();
    ClaimReport rep;
    try {
        rep = claim.run(n, depth_cap);
    } catch (const std::exception& e) {
        rep.claim_id = claim.key;
        rep.status = "error";
        rep.order_checked = {n, claim.scale};
        rep.detail = e.what();
    }
    if (timings)
        rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    return rep;
}

/// Runs the given claims (possibly in parallel) and assembles a result whose
/// content is independent of the parallelism: reports are keyed by claim and
/// sorted afterwards.
inline CheckResult run_claims(const std::vector<const Claim*>& selected, std::int64_t order = -1,
                              int depth_cap = 64, int jobs = 1, bool timings = false) {
    CheckResult result;
    result.reports.resize(selected.size());
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(selected.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < selected.size(); ++i)
            result.reports[i] = run_claim(*selected[i], order, depth_cap, timings);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < selected.size();
                     i = next.fetch_add(1))
                    result.reports[i] = run_claim(*selected[i], order, depth_cap, timings);
            });
        for (auto& th : pool) th.join();
    }
    std::sort(result.reports.begin(), result.reports.end(),
              [](const ClaimReport& a, const ClaimReport& b) { return a.claim_id < b.claim_id; });
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
        const ClaimReport& r = result.reports[i];
        if (r.status == "pass") ++result.passed;
        else if (r.status == "fail") ++result.failed;
        else ++result.errors;
        const Claim* cl = find_claim(r.claim_id);
        if (cl && cl->is_scan) {
            if (r.status == "pass") result.scans_confirmed.push_back(r.claim_id);
            else result.scan_counterexamples.push_back(r.claim_id);
        }
    }
    return result;
}

inline std::vector<const Claim*> claims_in_all() {
    std::vector<const Claim*> out;
    for (const auto& c : claim_registry())
        if (c.in_all) out.push_back(&c);
    return out;
}

inline int exit_code(const CheckResult& r) { return (r.failed == 0 && r.errors == 0) ? 0 : 1; }

} // namespace qid
