// qid: expand named q-series and run the identity claim registry.
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qid/qid.hpp>

namespace {

constexpr std::int64_t kExpandDefaultOrder = 32;

std::optional<std::int64_t> env_default_order() {
    const char* v = std::getenv("QID_DEFAULT_ORDER");
    if (!v || !*v) return std::nullopt;
    try {
        const long long n = std::stoll(v);
        if (n < 0) return std::nullopt;
        return n;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

struct Expansion {
    std::string name;
    qid::LatticeSeries series;
};

// Resolvable names: phi, psi, fminus, chi; the 17 continued fractions
// (their theta-quotient closed forms); the 13 theorem quotients; the nine
// partition generating functions.
std::optional<Expansion> expand_name(const std::string& name, std::int64_t order) {
    using namespace qid;
    if (name == "phi") return Expansion{name, phi(1, Exponent(1), 1, order)};
    if (name == "psi") return Expansion{name, psi(Exponent(1), 1, order)};
    if (name == "fminus") return Expansion{name, f_minus(Exponent(1), 1, order)};
    if (name == "chi") return Expansion{name, chi(Exponent(1), 1, order)};
    for (const auto& cf : all_named_cfs())
        if (cf.key == name) return Expansion{name, named_cf_quotient(cf, order)};
    for (const auto& q : quotient_registry())
        if (q.id == name) return Expansion{name, quotient_series(q, order)};
    for (const auto& [key, spec] : partition_spec_registry())
        if (key == name) return Expansion{name, gf_expand(*spec, order)};
    return std::nullopt;
}

std::string known_expand_names() {
    std::string out = "phi, psi, fminus, chi";
    for (const auto& cf : qid::all_named_cfs()) out += ", " + cf.key;
    for (const auto& q : qid::quotient_registry()) out += ", " + std::string(q.id);
    for (const auto& [key, spec] : qid::partition_spec_registry()) out += ", " + key;
    return out;
}

int cmd_expand(const std::string& name, std::optional<std::int64_t> order,
               const std::string& format) {
    const std::int64_t n = order.value_or(env_default_order().value_or(kExpandDefaultOrder));
    const auto exp = expand_name(name, n);
    if (!exp) {
        std::cerr << "qid: unknown expression '" << name << "'\n"
                  << "known names: " << known_expand_names() << "\n";
        return 2;
    }
    if (format == "json") {
        qid::json j;
        j["name"] = exp->name;
        j["series"] = qid::series_to_json(exp->series);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << exp->name << " (scale " << exp->series.scale() << ", order "
                  << qid::exponent_string(n, exp->series.scale()) << ")\n"
                  << qid::to_pretty_string(exp->series, 64) << "\n";
    }
    return 0;
}

void print_text_report(const qid::CheckResult& result, bool timings) {
    std::size_t width = 8;
    for (const auto& r : result.reports) width = std::max(width, r.claim_id.size());
    for (const auto& r : result.reports) {
        std::string line = r.claim_id;
        line.resize(width + 2, ' ');
        line += r.status;
        line.resize(width + 9, ' ');
        line += "order " + std::to_string(r.order_checked.units) + " @ D=" +
                std::to_string(r.order_checked.scale);
        if (r.witness)
            line += "  witness q^{" + r.witness->exponent + "}: " + r.witness->lhs + " vs " +
                    r.witness->rhs;
        if (!r.detail.empty()) line += "  (" + r.detail + ")";
        if (timings) line += "  [" + std::to_string(r.runtime_ms) + " ms]";
        std::cout << line << "\n";
    }
    std::cout << result.reports.size() << " claims: " << result.passed << " passed, "
              << result.failed << " failed, " << result.errors << " errors\n";
    if (!result.scans_confirmed.empty() || !result.scan_counterexamples.empty()) {
        std::cout << "vanishing scans confirmed:";
        for (const auto& k : result.scans_confirmed) std::cout << " " << k;
        std::cout << "\nvanishing scans with counterexamples:";
        for (const auto& k : result.scan_counterexamples) std::cout << " " << k;
        std::cout << "\n";
    }
}

int cmd_check(const std::string& what, std::optional<std::int64_t> order, int depth_cap, int jobs,
              const std::string& format, bool timings) {
    using namespace qid;
    std::vector<const Claim*> selected;
    if (what == "all") {
        selected = claims_in_all();
    } else if (const Claim* c = find_claim(what)) {
        selected.push_back(c);
    } else {
        std::cerr << "qid: unknown claim '" << what << "'\nknown claims:";
        for (const auto& c : claim_registry()) std::cerr << " " << c.key;
        std::cerr << "\n";
        return 2;
    }
    const std::int64_t order_arg = order ? *order : env_default_order().value_or(-1);
    const CheckResult result = run_claims(selected, order_arg, depth_cap, jobs, timings);
    if (format == "json")
        std::cout << check_result_to_jsonl(result);
    else
        print_text_report(result, timings);
    return exit_code(result);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for q-series identities"};
    app.require_subcommand(1);

    std::string expand_name_arg, expand_format = "text";
    std::optional<std::int64_t> expand_order;
    auto* expand = app.add_subcommand("expand", "expand a named series");
    expand->add_option("name", expand_name_arg, "series name (e.g. phi, A1, T21.a, T35.X1)")
        ->required();
    expand->add_option("--order", expand_order, "truncation order in lattice units")
        ->check(CLI::NonNegativeNumber);
    expand->add_option("--format", expand_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    std::string check_what, check_format = "text";
    std::optional<std::int64_t> check_order;
    int depth_cap = 64, jobs = 1;
    bool timings = false;
    auto* check = app.add_subcommand("check", "run claims from the registry");
    check->add_option("claim", check_what, "claim key or 'all'")->required();
    check->add_option("--order", check_order, "order override in the claim's lattice units")
        ->check(CLI::NonNegativeNumber);
    check->add_option("--depth-cap", depth_cap, "continued-fraction depth cap")
        ->check(CLI::PositiveNumber);
    check->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);
    check->add_option("--format", check_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    check->add_flag("--timings", timings, "include wall-clock runtimes in reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*expand) return cmd_expand(expand_name_arg, expand_order, expand_format);
        return cmd_check(check_what, check_order, depth_cap, jobs, check_format, timings);
    } catch (const std::exception& e) {
        std::cerr << "qid: " << e.what() << "\n";
        return 2;
    }
}
