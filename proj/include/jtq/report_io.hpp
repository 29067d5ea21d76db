#pragma once

#include "jtq/constants.hpp"
#include "jtq/verify.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <sstream>
#include <string>

namespace jtq {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* version_string = "1.0.0";

inline std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline ordered_json constant_to_json(const ConstantValue& c, unsigned digits = 50) {
    ordered_json j;
    j["value"] = real_to_string(c.value, digits);
    j["error_bound"] = c.error_bound;
    j["method"] = ConstantValue::method_name(c.method);
    j["inputs"] = c.inputs;
    j["exact"] = c.exact;
    if (c.exact) j["exact_value"] = rat_to_string(c.exact_value);
    if (c.factor_count) j["factor_count"] = c.factor_count;
    return j;
}

inline ordered_json fit_to_json(const FitResult& f) {
    ordered_json j;
    j["coefficients"] = f.coeffs;
    j["includes_constant"] = f.includes_constant;
    j["degree"] = f.degree;
    j["rms"] = f.rms;
    return j;
}

inline ordered_json report_to_json(const SummatoryReport& r, unsigned digits = 50) {
    ordered_json j;
    j["theorem"] = r.theorem;
    j["x_grid"] = r.x_grid;
    auto reals = [digits](const std::vector<Real>& v) {
        ordered_json a = ordered_json::array();
        for (const auto& x : v) a.push_back(real_to_string(x, digits));
        return a;
    };
    j["sums"] = reals(r.sums);
    j["predicted_main"] = reals(r.predicted_main);
    j["fitted_log_coeffs"] = r.fit.coeffs;
    j["fitted_log_coeffs_with_constant"] = r.fit_with_constant.coeffs;
    j["fitted_values"] = r.fitted_values;
    j["residuals"] = r.residuals;
    j["bound_ratios"] = r.bound_ratios;
    j["raw_residuals"] = r.raw_residuals;
    j["raw_bound_ratios"] = r.raw_bound_ratios;
    j["fit_rms"] = r.fit.rms;
    j["fit_rms_with_constant"] = r.fit_with_constant.rms;
    j["fit_degree"] = r.fit.degree;
    j["bound"] = r.bound_expr;
    j["constant"] = constant_to_json(r.constant, digits);
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : r.verdicts) {
        ordered_json vj;
        vj["name"] = v.name;
        vj["value"] = v.value;
        vj["threshold"] = v.threshold;
        vj["pass"] = v.pass;
        verdicts.push_back(vj);
    }
    j["verdicts"] = verdicts;
    j["all_pass"] = r.all_pass();
    j["oracle_checked"] = r.oracle_checked;
    j["seed"] = r.seed;
    return j;
}

// Envelope with config echo and provenance.  Round-trip identity is defined
// over config+results only; provenance carries the volatile timestamp.
inline ordered_json report_envelope(const ordered_json& config, ordered_json results) {
    ordered_json j;
    j["config"] = config;
    if (!results.is_array()) {
        ordered_json a = ordered_json::array();
        a.push_back(std::move(results));
        results = std::move(a);
    }
    j["results"] = std::move(results);
    j["provenance"] = {{"version", version_string}, {"timestamp", iso8601_now()}};
    return j;
}

inline std::string comparable_subset(const ordered_json& envelope) {
    ordered_json j;
    if (envelope.contains("config")) j["config"] = envelope["config"];
    if (envelope.contains("results")) j["results"] = envelope["results"];
    return j.dump();
}

inline std::string report_to_csv(const SummatoryReport& r, const ordered_json& config,
                                 unsigned digits = 50) {
    std::ostringstream out;
    out << "# config: " << config.dump() << "\n";
    out << "x,sum,main,fitted,residual,bound_ratio\r\n";
    for (std::size_t i = 0; i < r.x_grid.size(); ++i) {
        out << r.x_grid[i] << ',' << real_to_string(r.sums[i], digits) << ','
            << real_to_string(r.predicted_main[i], digits) << ',';
        out.precision(17);
        out << r.fitted_values[i] << ',' << r.residuals[i] << ',' << r.bound_ratios[i]
            << "\r\n";
    }
    return out.str();
}

}  // namespace jtq
