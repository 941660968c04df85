#ifndef GRAMOPS_RUNNER_HPP
#define GRAMOPS_RUNNER_HPP

#include <map>
#include <string>
#include <vector>

#include "gramops/casefile.hpp"

namespace gramops {

/// Pass thresholds for every check. Residuals named *_scale multiply a
/// norm-dependent factor noted next to them; *_abs are absolute.
struct Thresholds {
    double penrose_scale = 1e-9;      // * (1 + |T| + |T+|)
    double gram_route_scale = 1e-9;   // * (1 + |T+|^2)
    double gram_product_scale = 1e-9; // * (1 + |T+|^2)^2
    double projection_abs = 1e-10;
    double decomposition_abs = 1e-9;
    double gram_range_abs = 1e-9;
    double commutant_scale = 1e-8;       // * |S| * |T+|
    double selfadjoint_sa_zero = 1e-12;  // sa below this * |T| counts as selfadjoint
    double selfadjoint_lhs_pass = 1e-9;  // then lhs must stay below this * |T|
    double selfadjoint_lhs_zero = 1e-10; // lhs below this * |T| forces sa small:
    double selfadjoint_sa_pass = 1e-8;   //   sa <= this * |T|
    double bounded_abs = 1e-9;
    double tikhonov_gap_abs = 1e-8;
};

/// Outcome of one case. `status` is "pass", "fail" or "error"; when a check
/// ran, its scalar summary lands in report.identity_residuals and its verdict
/// in check_verdicts.
struct CaseResult {
    std::string id;
    std::string status;
    std::string error_message;
    double op_norm_t = 0.0;
    double op_norm_pinv = 0.0;
    PinvReport report;
    std::map<std::string, bool> check_verdicts;
};

struct RunReport {
    std::vector<CaseResult> results; // ordered by case id
    Thresholds thresholds;
    std::size_t num_cases = 0;
    std::size_t num_passes = 0;
    std::size_t num_failures = 0;
    std::size_t num_errors = 0;
    double total_runtime_ms = 0.0;
};

/// Run every case (optionally across `parallelism` worker threads). Results
/// are deterministic in (cases, thresholds) regardless of scheduling; a
/// failing or throwing case never disturbs its neighbours.
RunReport run_suite(const std::vector<CaseSpec>& cases, unsigned parallelism = 1,
                    const Thresholds& thresholds = Thresholds{});

/// JSON mirror of the report. Wall-clock fields are omitted so that reruns of
/// the same corpus serialize byte-identically.
std::string report_to_json(const RunReport& report);

/// Plain-text table, 3 significant digits, including runtimes.
std::string report_to_text(const RunReport& report);

/// Suite exit code: 0 all pass, 1 residual failures, 3 case errors.
int report_exit_code(const RunReport& report);

} // namespace gramops

#endif
