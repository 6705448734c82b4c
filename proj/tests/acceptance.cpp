// Acceptance suite: runs every top-level requirement at its stated order and
// prints one pass/fail line per criterion. Exits nonzero when any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <qid/qid.hpp>

#include "property_suite.hpp"

namespace {

using namespace qid;
using Clock = std::chrono::steady_clock;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

void expect_zero(const LatticeSeries& s, std::int64_t order, const std::string& what) {
    if (s.trunc() < order)
        throw Failure(what + ": residual only known to " + std::to_string(s.trunc()) +
                      " of requested " + std::to_string(order));
    if (s.is_zero()) return;
    for (std::int64_t e = s.min_exp(); e <= s.trunc(); ++e)
        if (s.unit_coeff(e) != 0)
            throw Failure(what + ": residual " + s.unit_coeff(e).str() + " at q^{" +
                          exponent_string(e, s.scale()) + "}");
    throw Failure(what + ": non-canonical nonzero series");
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- criteria

void criterion1_triple_product() {
    const auto t0 = Clock::now();
    for (const auto& cf : all_named_cfs()) {
        for (const auto& pair : {cf.num_args, cf.den_args}) {
            const SignedMonomial a = sm(-1, Exponent(pair[0])), b = sm(-1, Exponent(pair[1]));
            expect(!eq_to_order(theta_sum(a, b, 1, 200), theta_product(a, b, 1, 200), 200),
                   "triple product differs for f(-q^" + std::to_string(pair[0]) + ", -q^" +
                       std::to_string(pair[1]) + ")");
        }
    }
    std::mt19937_64 rng(20250811);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<std::int64_t> num(-6, 20), den_idx(0, 2);
    const std::int64_t dens[] = {1, 2, 4};
    int done = 0;
    while (done < 50) {
        const SignedMonomial a = sm(sign(rng) ? 1 : -1, Exponent(num(rng), dens[den_idx(rng)]));
        const SignedMonomial b = sm(sign(rng) ? 1 : -1, Exponent(num(rng), dens[den_idx(rng)]));
        if (!((a.exponent + b.exponent) > Exponent(0))) continue;
        expect(!eq_to_order(theta_sum(a, b, 4, 200), theta_product(a, b, 4, 200), 200),
               "triple product differs for randomized arguments " + a.exponent.str() + "," +
                   b.exponent.str());
        ++done;
    }
    const double dt = seconds_since(t0);
    expect(dt < 10.0, "triple-product budget exceeded: " + std::to_string(dt) + " s");
}

void criterion2_entry12() {
    const auto t0 = Clock::now();
    for (const auto& cf : all_named_cfs()) {
        const Stabilized st = named_cf_value(cf, 50, 64);
        expect(st.depth <= 64, cf.key + ": no stabilization within depth 64");
        expect(!eq_to_order(st.value, named_cf_quotient(cf, 50), 50),
               cf.key + ": stabilized value differs from its theta quotient");
    }
    const double dt = seconds_since(t0);
    expect(dt < 60.0, "continued-fraction budget exceeded: " + std::to_string(dt) + " s");
}

struct TermRow {
    std::int64_t prefactor, num3, num4, den1, den2;
};

void check_factor_table(const DissectionParams& d, const std::vector<TermRow>& rows) {
    const std::int64_t pt = d.p * d.t, pr = d.p * d.r, trp = (d.t - d.r) * d.p;
    expect(static_cast<std::int64_t>(rows.size()) == d.p, "factor table has wrong length");
    for (std::int64_t j = 0; j < d.p; ++j) {
        const auto f = dissection_term_factors(d, j);
        const TermRow& row = rows[static_cast<std::size_t>(j)];
        const bool ok = f.prefactor_exp == row.prefactor && f.modulus == pt &&
                        f.num_starts[0] == pt && f.num_starts[1] == pt &&
                        f.num_starts[2] == row.num3 && f.num_starts[3] == row.num4 &&
                        f.den_starts[0] == row.den1 && f.den_starts[1] == row.den2 &&
                        f.den_starts[2] == pr && f.den_starts[3] == trp;
        expect(ok, "factor mismatch at order " + std::to_string(d.t) + ", term " +
                       std::to_string(j));
    }
}

void criterion3_dissection() {
    // expected factor lists, term by term: {jr, num3, num4, den1, den2}
    const std::vector<TermRow> rows18 = {
        {0, 54, 108, 9, 153},   {5, 72, 90, 27, 135},  {10, 90, 72, 45, 117},
        {15, 108, 54, 63, 99},  {20, 126, 36, 81, 81}, {25, 144, 18, 99, 63},
        {30, 162, 0, 117, 45},  {35, 180, -18, 135, 27}, {40, 198, -36, 153, 9}};
    const std::vector<TermRow> rows26 = {
        {0, 104, 234, 13, 325},  {7, 130, 208, 39, 299},  {14, 156, 182, 65, 273},
        {21, 182, 156, 91, 247}, {28, 208, 130, 117, 221}, {35, 234, 104, 143, 195},
        {42, 260, 78, 169, 169}, {49, 286, 52, 195, 143}, {56, 312, 26, 221, 117},
        {63, 338, 0, 247, 91},   {70, 364, -26, 273, 65}, {77, 390, -52, 299, 39},
        {84, 416, -78, 325, 13}};
    const std::vector<TermRow> rows30 = {
        {0, 120, 330, 15, 435},   {7, 150, 300, 45, 405},  {14, 180, 270, 75, 375},
        {21, 210, 240, 105, 345}, {28, 240, 210, 135, 315}, {35, 270, 180, 165, 285},
        {42, 300, 150, 195, 255}, {49, 330, 120, 225, 225}, {56, 360, 90, 255, 195},
        {63, 390, 60, 285, 165},  {70, 420, 30, 315, 135}, {77, 450, 0, 345, 105},
        {84, 480, -30, 375, 75},  {91, 510, -60, 405, 45}, {98, 540, -90, 435, 15}};
    check_factor_table({18, 9, 5, 9}, rows18);
    check_factor_table({26, 13, 7, 13}, rows26);
    check_factor_table({30, 15, 7, 15}, rows30);

    // the zero term and the Laurent terms must materialize as such
    expect(dissection_term({18, 9, 5, 9}, 6, 100).is_zero(), "order-18 term 6 should vanish");
    expect(dissection_term({26, 13, 7, 13}, 9, 100).is_zero(), "order-26 term 9 should vanish");
    expect(dissection_term({30, 15, 7, 15}, 11, 100).is_zero(), "order-30 term 11 should vanish");

    for (std::int64_t t : {18, 26, 30})
        expect_zero(verify_dissection(dissection_instance(t), 600), 600,
                    "dissection residual at order " + std::to_string(t));
}

void criterion4_reductions() {
    for (std::string_view tag : reduction_tags())
        expect_zero(verify_reduction(tag, 400), 400, "reduction residual " + std::string(tag));
}

void criterion5_scans(std::ostream& log) {
    struct Expected {
        const char* claim;
        bool all_zero;
        std::int64_t n;
        int coeff;
    };
    const Expected expected[] = {
        {"T21.i", false, 17, -1}, {"T21.ii", true, 0, 0},  {"T21.iii", false, 3, 1},
        {"T22.i", true, 0, 0},    {"T22.ii", true, 0, 0},  {"T22.iii", true, 0, 0},
        {"T22.iv", true, 0, 0},   {"T22.v", true, 0, 0},   {"T22.vi", true, 0, 0},
        {"T23.i", true, 0, 0},    {"T23.ii", true, 0, 0},  {"T23.iii", false, 19, -1},
        {"T23.iv", true, 0, 0}};
    std::vector<std::string> confirmed, counterexamples;
    for (const auto& e : expected) {
        const auto& q = quotient_spec(e.claim);
        const ScanOutcome sc = vanish_scan(quotient_series(q, 500), q.prog_r, q.prog_m, 500);
        if (e.all_zero) {
            expect(sc.status == ScanOutcome::Status::AllZero,
                   std::string(e.claim) + ": expected AllZero, found coefficient " +
                       sc.coefficient.str() + " at " + std::to_string(sc.n));
            confirmed.push_back(e.claim);
        } else {
            expect(sc.status == ScanOutcome::Status::FirstNonzero,
                   std::string(e.claim) + ": recorded counterexample disappeared");
            expect(sc.n == e.n && sc.coefficient == e.coeff,
                   std::string(e.claim) + ": witness moved to n=" + std::to_string(sc.n) +
                       ", coeff " + sc.coefficient.str());
            counterexamples.push_back(std::string(e.claim) + " (n=" + std::to_string(e.n) +
                                      ", coeff " + std::to_string(e.coeff) + ")");
        }
    }
    log << "      scan fidelity: " << confirmed.size() << " progressions confirmed to n=500: ";
    for (const auto& c : confirmed) log << c << " ";
    log << "\n      counterexamples (stable, minimal witnesses): ";
    for (const auto& c : counterexamples) log << c << " ";
    log << "\n";
}

void criterion6_theta_identities() {
    const struct {
        const char* theorem;
        int linear;
    } groups[] = {{"T31", 4}, {"T32", 6}, {"T33", 7}};
    for (const auto& g : groups)
        for (int i = 1; i <= g.linear; ++i)
            for (SignCase sc : {SignCase::upper, SignCase::lower})
                expect_zero(theorem3_linear_residual(g.theorem, i, sc, 60), 60,
                            std::string(g.theorem) + "." + std::to_string(i) +
                                (sc == SignCase::upper ? " upper" : " lower"));
    expect_zero(theorem3_product_residual("T31", 60), 60, "T31.v product");
    expect_zero(theorem3_product_residual("T32", 60), 60, "T32.vii product");
    expect_zero(helper_residual("E38", 1, 200), 200, "E38");
    expect_zero(helper_residual("E40", 1, 200), 200, "E40");
}

void criterion7_helpers() {
    std::mt19937_64 rng(424243);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<std::int64_t> num(-6, 20), den_idx(0, 2);
    const std::int64_t dens[] = {1, 2, 4};
    for (const char* id : {"E20A", "E26", "E27", "E31"}) {
        int done = 0;
        while (done < 20) {
            const SignedMonomial a =
                sm(sign(rng) ? 1 : -1, Exponent(num(rng), dens[den_idx(rng)]));
            const SignedMonomial b =
                sm(sign(rng) ? 1 : -1, Exponent(num(rng), dens[den_idx(rng)]));
            if (!((a.exponent + b.exponent) > Exponent(0))) continue;
            expect_zero(helper_residual(id, a, b, 4, 200), 200,
                        std::string(id) + " at a=" + (a.sign < 0 ? "-" : "") + "q^" +
                            a.exponent.str() + ", b=" + (b.sign < 0 ? "-" : "") + "q^" +
                            b.exponent.str());
            ++done;
        }
    }
    // the squared-form instance: E31 at (q^{1/4}, -q^{17/4})
    expect_zero(helper_residual("E31", sm(1, Exponent(1, 4)), sm(-1, Exponent(17, 4)), 4, 200), 200,
                "E31 squared-form instance");
}

void criterion8_partitions() {
    const struct {
        const char* key;
        std::int64_t n;
        int expected;
    } rows[] = {{"T35.X1", 9, 3},  {"T35.X2", 6, 1},  {"T35.X3", 9, 2},
                {"T36.Y1", 12, 3}, {"T36.Y2", 11, 1}, {"T36.Y3", 12, 2},
                {"T37.Z1", 16, 3}, {"T37.Z2", 15, 1}, {"T37.Z3", 16, 2}};
    for (const auto& row : rows) {
        const PartSpec& spec = partition_spec(row.key);
        expect(coefficient(gf_expand(spec, row.n), Exponent(row.n)) == row.expected,
               std::string(row.key) + " generating function disagrees with the table");
        expect(enumerate_count(spec, row.n) == row.expected,
               std::string(row.key) + " enumeration disagrees with the table");
    }
    for (const auto& t : partition_theorems()) {
        for (const auto& r : theorem_residual(t, 200))
            expect(r == 0, std::string(t.id) + " residual nonzero");
    }
    for (const auto& [key, spec] : partition_spec_registry()) {
        const LatticeSeries g = gf_expand(*spec, 200);
        for (std::int64_t n = 0; n <= 200; ++n)
            expect(g.unit_coeff(n) == enumerate_count(*spec, n),
                   key + ": generating function and enumeration disagree at n=" +
                       std::to_string(n));
    }
}

void criterion9_property_suite(std::ostream& log) {
    const auto result = qid_props::run_series_property_suite(97531, 210);
    expect(result.cases >= 1000,
           "property suite ran only " + std::to_string(result.cases) + " cases");
    log << "      " << result.cases << " randomized cases\n";
}

// -------------------------------------------------------------- CLI contract

struct CommandResult {
    int exit_code;
    std::string output;
};

CommandResult run_command(const std::string& cmd) {
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) throw Failure("cannot spawn: " + cmd);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return CommandResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(out)};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion10_cli() {
    const std::string cli = QID_CLI_PATH;
    const CommandResult all1 = run_command(cli + " check all --format json");
    expect(all1.exit_code == 1,
           "check all should exit 1 (three scan counterexamples), got " +
               std::to_string(all1.exit_code));
    const CommandResult all4 = run_command(cli + " check all --format json --jobs 4");
    expect(all4.exit_code == 1, "check all --jobs 4 exit code");
    expect(all1.output == all4.output, "JSON output differs between --jobs settings");
    expect(all1.output == read_file(QID_GOLDEN_PATH),
           "JSON output differs from the committed golden report");

    // every line parses; summary counts line up
    std::istringstream lines(all1.output);
    std::string line, last;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        const json j = json::parse(line);
        if (!j.contains("summary")) {
            const ClaimReport rep = report_from_json(j);
            expect(report_to_json(rep).dump() == line, "report does not round-trip: " + line);
            ++count;
        }
        last = line;
    }
    const json summary = json::parse(last);
    expect(count == 65, "expected 65 claim reports, got " + std::to_string(count));
    expect(summary["summary"]["passed"] == 62 && summary["summary"]["failed"] == 3 &&
               summary["summary"]["errors"] == 0,
           "summary counts changed: " + last);

    expect(run_command(cli + " check TRIPLE --order 120 --format json").exit_code == 0,
           "check TRIPLE should exit 0");
    expect(run_command(cli + " expand nosuch").exit_code == 2, "expand nosuch should exit 2");
    expect(run_command(cli + " check nosuch").exit_code == 2, "check nosuch should exit 2");
    expect(run_command(cli + " frobnicate").exit_code == 2, "unknown subcommand should exit 2");

    const CommandResult phi9 = run_command(cli + " expand phi --order 9 --format json");
    expect(phi9.exit_code == 0, "expand phi failed");
    const json pj = json::parse(phi9.output);
    const std::vector<std::string> want = {"1", "2", "0", "0", "2", "0", "0", "0", "0", "2"};
    expect(pj["series"]["coeffs"].get<std::vector<std::string>>() == want,
           "expand phi --order 9 coefficients changed");
}

} // namespace

int main() {
    unsetenv("QID_DEFAULT_ORDER");
    struct Criterion {
        int id;
        const char* label;
        std::function<void(std::ostream&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "triple product, 34 named + 50 randomized arguments, order 200",
         [](std::ostream&) { criterion1_triple_product(); }},
        {2, "17 continued fractions equal their theta quotients through q^25",
         [](std::ostream&) { criterion2_entry12(); }},
        {3, "dissection identities to N=600 with exact factor tables",
         [](std::ostream&) { criterion3_dissection(); }},
        {4, "reductions to the theorem quotients, N=400",
         [](std::ostream&) { criterion4_reductions(); }},
        {5, "13 vanishing scans to N=500 with recorded outcomes",
         [](std::ostream& log) { criterion5_scans(log); }},
        {6, "theta identities to q^30 plus the eta-quotient products",
         [](std::ostream&) { criterion6_theta_identities(); }},
        {7, "helper identities on 20 randomized argument sets each",
         [](std::ostream&) { criterion7_helpers(); }},
        {8, "partition tables, residuals and dual-count agreement to n=200",
         [](std::ostream&) { criterion8_partitions(); }},
        {9, "series-core property suite, >= 1000 randomized cases",
         [](std::ostream& log) { criterion9_property_suite(log); }},
        {10, "CLI contract: deterministic JSON, golden report, exit codes",
         [](std::ostream&) { criterion10_cli(); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        std::ostringstream log;
        std::string error;
        try {
            c.run(log);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double dt = seconds_since(t0);
        if (error.empty()) {
            std::printf("[PASS] criterion %2d: %s (%.1f s)\n", c.id, c.label, dt);
        } else {
            std::printf("[FAIL] criterion %2d: %s (%.1f s)\n       %s\n", c.id, c.label, dt,
                        error.c_str());
            ++failures;
        }
        const std::string extra = log.str();
        if (!extra.empty()) std::fputs(extra.c_str(), stdout);
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
