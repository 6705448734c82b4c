#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <qid/dissection.hpp>

using namespace qid;

TEST_CASE("parameter validation") {
    REQUIRE_THROWS_AS(validate(DissectionParams{18, 9, 6, 9}), std::invalid_argument); // gcd
    REQUIRE_THROWS_AS(validate(DissectionParams{18, 18, 5, 9}), std::invalid_argument);
    REQUIRE_THROWS_AS(validate(DissectionParams{18, 9, 0, 9}), std::invalid_argument);
    REQUIRE_THROWS_AS(validate(DissectionParams{18, 9, 19, 9}), std::invalid_argument);
    REQUIRE_NOTHROW(validate(DissectionParams{18, 9, 5, 9}));
}

TEST_CASE("order-18 term factors") {
    const DissectionParams d{18, 9, 5, 9};
    const auto f0 = dissection_term_factors(d, 0);
    REQUIRE(f0.prefactor_exp == 0);
    REQUIRE(f0.modulus == 162);
    REQUIRE(f0.num_starts == std::array<std::int64_t, 4>{162, 162, 54, 108});
    REQUIRE(f0.den_starts == std::array<std::int64_t, 4>{9, 153, 45, 117});

    const auto f7 = dissection_term_factors(d, 7);
    REQUIRE(f7.prefactor_exp == 35);
    REQUIRE(f7.num_starts == std::array<std::int64_t, 4>{162, 162, 180, -18});
    REQUIRE(f7.den_starts == std::array<std::int64_t, 4>{135, 27, 45, 117});

    REQUIRE_THROWS_AS(dissection_term_factors(d, 9), std::invalid_argument);
}

TEST_CASE("zero and Laurent terms of the order-18 instance") {
    const DissectionParams d{18, 9, 5, 9};
    // j = 6 contains the factor (q^0; q^162) and dies
    REQUIRE(dissection_term(d, 6, 300).is_zero());
    // j = 7 carries (q^{-18}; q^162): after the q^35 prefactor the lowest
    // exponent is 17
    const LatticeSeries t7 = dissection_term(d, 7, 300);
    REQUIRE(t7.min_exp() == 17);
    REQUIRE(t7.unit_coeff(17) == -1);
}

TEST_CASE("deepest Laurent terms of the larger instances") {
    // order 26, j = 12: prefactor q^84 against (q^{-78}; q^{338})
    const LatticeSeries t26 = dissection_term({26, 13, 7, 13}, 12, 300);
    REQUIRE(t26.min_exp() == 6);
    REQUIRE(t26.unit_coeff(6) == -1);
    // order 30, j = 14: prefactor q^98 against (q^{-90}; q^{450})
    const LatticeSeries t30 = dissection_term({30, 15, 7, 15}, 14, 300);
    REQUIRE(t30.min_exp() == 8);
    REQUIRE(t30.unit_coeff(8) == -1);
}

TEST_CASE("p = 1 collapses to the left side") {
    const DissectionParams d{12, 5, 7, 1};
    const auto terms = dissection_terms(d, 150);
    REQUIRE(terms.size() == 1);
    REQUIRE(!eq_to_order(terms[0], dissection_lhs(d, 150), 150));
}

TEST_CASE("constant term of the left side is one") {
    REQUIRE(dissection_lhs({18, 9, 5, 9}, 60).unit_coeff(0) == 1);
    REQUIRE(dissection_lhs({26, 13, 7, 13}, 60).unit_coeff(0) == 1);
    REQUIRE(dissection_lhs({30, 15, 7, 15}, 60).unit_coeff(0) == 1);
}

TEST_CASE("dissection identity for the three instances") {
    REQUIRE(verify_dissection({18, 9, 5, 9}, 300).is_zero());
    REQUIRE(verify_dissection({26, 13, 7, 13}, 300).is_zero());
    REQUIRE(verify_dissection({30, 15, 7, 15}, 300).is_zero());
}

TEST_CASE("dissection identity for randomized parameters") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::int64_t> td(2, 20), pd(1, 7);
    int done = 0;
    while (done < 10) {
        DissectionParams d{td(rng), 0, 0, pd(rng)};
        std::uniform_int_distribution<std::int64_t> in_t(1, d.t - 1);
        d.s = in_t(rng);
        d.r = in_t(rng);
        try {
            validate(d);
        } catch (const std::invalid_argument&) {
            continue;
        }
        INFO("t=" << d.t << " s=" << d.s << " r=" << d.r << " p=" << d.p);
        REQUIRE(verify_dissection(d, 300).is_zero());
        ++done;
    }
}

TEST_CASE("terms are supported on residue jr mod p when p divides t and s") {
    for (const auto& d : {DissectionParams{18, 9, 5, 9}, DissectionParams{26, 13, 7, 13},
                          DissectionParams{30, 15, 7, 15}}) {
        const auto terms = dissection_terms(d, 300);
        for (std::int64_t j = 0; j < d.p; ++j) {
            const LatticeSeries& t = terms[static_cast<std::size_t>(j)];
            if (t.is_zero()) continue;
            for (std::int64_t e = t.min_exp(); e <= t.trunc(); ++e)
                if (t.unit_coeff(e) != 0)
                    REQUIRE(((e % d.p) + d.p) % d.p == (j * d.r) % d.p);
        }
    }
}

TEST_CASE("theorem quotient registry") {
    REQUIRE(quotient_registry().size() == 13);
    const auto& a1 = quotient_spec("T21.a");
    REQUIRE(a1.num == std::array<std::int64_t, 2>{4, 14});
    REQUIRE(a1.den == std::array<std::int64_t, 2>{5, 13});
    REQUIRE(a1.modulus == 18);
    const LatticeSeries s = quotient_series(a1, 40);
    REQUIRE(s.unit_coeff(0) == 1);
    // also addressable by claim id
    REQUIRE(&quotient_spec("T21.i") == &a1);
    REQUIRE_THROWS_AS(quotient_spec("T24.a"), std::invalid_argument);
}

TEST_CASE("paired quotients multiply to one") {
    for (const char* id : {"T22.b", "T22.d", "T22.f", "T21.c", "T23.a", "T23.d"}) {
        const auto& q = quotient_spec(id);
        const LatticeSeries p =
            mul(quotient_series(q, 200), quotient_series(reciprocal(q), 200));
        INFO(id);
        REQUIRE(!eq_to_order(p, one(1, 200), 200));
    }
}

TEST_CASE("vanish_scan basics") {
    std::vector<Int> v(40, Int(0));
    v[0] = 1;
    v[9] = 3;
    v[27] = -2;
    const LatticeSeries nines = LatticeSeries::make(1, 0, 39, std::move(v));
    REQUIRE(vanish_scan(nines, 8, 9, 39).status == ScanOutcome::Status::AllZero);
    const ScanOutcome hit = vanish_scan(nines, 0, 9, 39);
    REQUIRE(hit.status == ScanOutcome::Status::FirstNonzero);
    REQUIRE(hit.n == 0);
    REQUIRE(hit.coefficient == 1);

    REQUIRE_THROWS_AS(vanish_scan(nines, 9, 9, 39), std::invalid_argument);
    REQUIRE_THROWS_AS(vanish_scan(nines, 1, 9, 60), std::out_of_range);
    REQUIRE_THROWS_AS(vanish_scan(one(2, 10), 0, 2, 10), std::invalid_argument);
}

TEST_CASE("scan agrees with extract_progression") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::int64_t> md(1, 9), coeff(-4, 4);
    for (int i = 0; i < 40; ++i) {
        const std::int64_t m = md(rng);
        std::uniform_int_distribution<std::int64_t> rd(0, m - 1);
        const std::int64_t r = rd(rng);
        std::vector<Int> v(80);
        for (auto& c : v) c = coeff(rng);
        const LatticeSeries s = LatticeSeries::make(1, 0, 79, std::move(v));
        const bool all_zero = vanish_scan(s, r, m, 79).status == ScanOutcome::Status::AllZero;
        REQUIRE(all_zero == extract_progression(s, r, m).is_zero());
    }
}

TEST_CASE("scans over the theorem quotients") {
    const std::int64_t n = 300;
    // confirmed progressions
    for (const char* id : {"T21.b", "T22.a", "T22.b", "T22.c", "T22.d", "T22.e", "T22.f",
                           "T23.a", "T23.b", "T23.d"}) {
        const auto& q = quotient_spec(id);
        INFO(id);
        REQUIRE(vanish_scan(quotient_series(q, n), q.prog_r, q.prog_m, n).status ==
                ScanOutcome::Status::AllZero);
    }
    // the three with counterexamples, with their minimal witnesses
    const struct {
        const char* id;
        std::int64_t n;
        int coeff;
    } witnesses[] = {{"T21.a", 17, -1}, {"T21.c", 3, 1}, {"T23.c", 19, -1}};
    for (const auto& w : witnesses) {
        const auto& q = quotient_spec(w.id);
        const ScanOutcome sc = vanish_scan(quotient_series(q, n), q.prog_r, q.prog_m, n);
        INFO(w.id);
        REQUIRE(sc.status == ScanOutcome::Status::FirstNonzero);
        REQUIRE(sc.n == w.n);
        REQUIRE(sc.coefficient == w.coeff);
    }
    // the progressions these series do vanish on
    REQUIRE(vanish_scan(quotient_series("T21.a", n), 3, 9, n).status ==
            ScanOutcome::Status::AllZero);
    REQUIRE(vanish_scan(quotient_series("T21.c", n), 8, 9, n).status ==
            ScanOutcome::Status::AllZero);
    REQUIRE(vanish_scan(quotient_series("T23.c", n), 14, 15, n).status ==
            ScanOutcome::Status::AllZero);
}

TEST_CASE("reduction to the first theorem series") {
    REQUIRE(verify_reduction("T21", 200).is_zero());
    REQUIRE(verify_reduction("T22", 200).is_zero());
    REQUIRE(verify_reduction("T23", 200).is_zero());
    REQUIRE_THROWS_AS(verify_reduction("T20", 50), std::invalid_argument);
}
