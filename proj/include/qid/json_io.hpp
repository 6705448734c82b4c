#pragma once

#include <string>

#include <json.hpp>

#include <qid/claims.hpp>
#include <qid/dissection.hpp>
#include <qid/series.hpp>

namespace qid {

using json = nlohmann::ordered_json;

/// {status, n, coefficient}; n and coefficient only for FirstNonzero.
inline json scan_outcome_to_json(const ScanOutcome& sc) {
    json j;
    if (sc.status == ScanOutcome::Status::AllZero) {
        j["status"] = "AllZero";
    } else {
        j["status"] = "FirstNonzero";
        j["n"] = sc.n;
        j["coefficient"] = sc.coefficient.str();
    }
    return j;
}

/// {scale, min_exp, trunc, coeffs: array of decimal strings}
inline json series_to_json(const LatticeSeries& s) {
    json j;
    j["scale"] = s.scale();
    j["min_exp"] = s.min_exp();
    j["trunc"] = s.trunc();
    json coeffs = json::array();
    for (const Int& c : s.coeffs()) coeffs.push_back(c.str());
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline LatticeSeries series_from_json(const json& j) {
    std::vector<Int> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.emplace_back(c.get<std::string>());
    return LatticeSeries::make(j.at("scale").get<std::int64_t>(),
                               j.at("min_exp").get<std::int64_t>(),
                               j.at("trunc").get<std::int64_t>(), std::move(coeffs));
}

inline json report_to_json(const ClaimReport& r) {
    json j;
    j["claim_id"] = r.claim_id;
    j["status"] = r.status;
    j["order_checked"] = {{"units", r.order_checked.units}, {"scale", r.order_checked.scale}};
    if (r.witness) {
        j["witness"] = {{"exponent", r.witness->exponent},
                        {"lhs_coefficient", r.witness->lhs},
                        {"rhs_coefficient", r.witness->rhs}};
    }
    j["runtime_ms"] = r.runtime_ms;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline ClaimReport report_from_json(const json& j) {
    ClaimReport r;
    r.claim_id = j.at("claim_id").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.order_checked.units = j.at("order_checked").at("units").get<std::int64_t>();
    r.order_checked.scale = j.at("order_checked").at("scale").get<std::int64_t>();
    if (j.contains("witness")) {
        r.witness = ClaimWitness{j.at("witness").at("exponent").get<std::string>(),
                                 j.at("witness").at("lhs_coefficient").get<std::string>(),
                                 j.at("witness").at("rhs_coefficient").get<std::string>()};
    }
    r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
    if (j.contains("detail")) r.detail = j.at("detail").get<std::string>();
    return r;
}

inline json summary_to_json(const CheckResult& result) {
    json j;
    j["summary"] = {{"claims", result.reports.size()},
                    {"passed", result.passed},
                    {"failed", result.failed},
                    {"errors", result.errors}};
    if (!result.scans_confirmed.empty() || !result.scan_counterexamples.empty()) {
        j["summary"]["scans"] = {{"confirmed", result.scans_confirmed},
                                 {"counterexamples", result.scan_counterexamples}};
    }
    return j;
}

/// JSON Lines: one compact record per claim, then the summary record.
inline std::string check_result_to_jsonl(const CheckResult& result) {
    std::string out;
    for (const auto& r : result.reports) {
        out += report_to_json(r).dump();
        out += '\n';
    }
    out += summary_to_json(result).dump();
    out += '\n';
    return out;
}

} // namespace qid
