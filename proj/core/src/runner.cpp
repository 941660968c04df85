#include "gramops/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace gramops {

using json = nlohmann::ordered_json;

namespace {

double max_penrose(const PinvReport& r) {
    double m = 0.0;
    for (double v : r.penrose_residuals)
        m = std::max(m, v);
    return m;
}

void run_checks(const CaseSpec& spec, const AMatrix& t, const MpInverseResult& mi,
                const Thresholds& th, CaseResult& out) {
    const double norm_t = out.op_norm_t;
    const double norm_p = out.op_norm_pinv;
    auto& residuals = out.report.identity_residuals;

    for (Check check : spec.checks) {
        switch (check) {
        case Check::penrose: {
            const double bound = th.penrose_scale * (1.0 + norm_t + norm_p);
            out.check_verdicts["penrose"] = max_penrose(out.report) <= bound;
            break;
        }
        case Check::gram_left: {
            const double r = op_norm(op_sub(pinv_gram_left(t, spec.rel_tol), mi.pinv));
            residuals["gram_left"] = r;
            out.check_verdicts["gram_left"] = r <= th.gram_route_scale * (1.0 + norm_p * norm_p);
            break;
        }
        case Check::gram_right: {
            const double r = op_norm(op_sub(pinv_gram_right(t, spec.rel_tol), mi.pinv));
            residuals["gram_right"] = r;
            out.check_verdicts["gram_right"] = r <= th.gram_route_scale * (1.0 + norm_p * norm_p);
            break;
        }
        case Check::gram_product: {
            const double r = gram_pinv_product_check(t, spec.rel_tol);
            residuals["gram_product"] = r;
            const double f = 1.0 + norm_p * norm_p;
            out.check_verdicts["gram_product"] = r <= th.gram_product_scale * f * f;
            break;
        }
        case Check::projections: {
            const AMatrix p = op_compose(t, mi.pinv);
            const AMatrix q = op_compose(mi.pinv, t);
            double r = 0.0;
            r = std::max(r, op_norm(op_sub(op_adjoint(p), p)));
            r = std::max(r, op_norm(op_sub(op_compose(p, p), p)));
            r = std::max(r, op_norm(op_sub(op_compose(p, t), t)));
            r = std::max(r, op_norm(op_sub(op_adjoint(q), q)));
            r = std::max(r, op_norm(op_sub(op_compose(q, q), q)));
            r = std::max(r, op_norm(op_sub(op_compose(t, q), t)));
            residuals["range_projection"] = r;
            out.check_verdicts["projections"] = r <= th.projection_abs;
            break;
        }
        case Check::decomposition: {
            const auto [r1, r2] = decomposition_check(t, spec.rel_tol);
            const double r = std::max(r1, r2);
            residuals["kernel_decomposition"] = r;
            out.check_verdicts["decomposition"] = r <= th.decomposition_abs;
            break;
        }
        case Check::gram_range: {
            const double r = gram_range_check(t, spec.rel_tol);
            residuals["gram_range"] = r;
            out.check_verdicts["gram_range"] = r <= th.gram_range_abs;
            break;
        }
        case Check::commutant: {
            const CommutantBasis basis = joint_commutant_basis(t, spec.rel_tol);
            double worst = 0.0;
            for (const AMatrix& s : basis.elements) {
                const double raw = op_norm(op_sub(op_compose(s, mi.pinv), op_compose(mi.pinv, s)));
                const double denom = op_norm(s) * norm_p;
                worst = std::max(worst, denom > 0.0 ? raw / denom : raw);
            }
            residuals["commutant"] = worst;
            out.check_verdicts["commutant"] = worst <= th.commutant_scale;
            break;
        }
        case Check::selfadjoint: {
            const auto [lhs, sa] = selfadjoint_criterion(t, spec.rel_tol);
            residuals["selfadjoint_lhs"] = lhs;
            residuals["selfadjoint_sa"] = sa;
            bool ok = true;
            if (sa <= th.selfadjoint_sa_zero * norm_t)
                ok = lhs <= th.selfadjoint_lhs_pass * norm_t;
            if (ok && lhs <= th.selfadjoint_lhs_zero * norm_t)
                ok = sa <= th.selfadjoint_sa_pass * norm_t;
            out.check_verdicts["selfadjoint"] = ok;
            break;
        }
        case Check::bounded_transform: {
            const BoundedTransform bt = bounded_transform(t);
            double rres = 0.0;
            bool ok = op_norm(bt.f) <= 1.0 + 1e-12;
            for (std::size_t i = 0; i < t.shape().num_blocks(); ++i) {
                const ComplexMatrix qf = flatten_summand(bt.q, i);
                const HermEig e = herm_eig(qf);
                ok = ok && e.eigenvalues.front() >= -1e-12 &&
                     e.eigenvalues.back() <= 1.0 + 1e-12;
                const ComplexMatrix ff = flatten_summand(bt.f, i);
                ComplexMatrix rest = mat_sub(ComplexMatrix::identity(ff.cols()),
                                             mat_mul(adjoint(ff), ff));
                rres = std::max(rres, spectral_norm(mat_sub(qf, psd_sqrt(rest))));
            }
            residuals["bounded_transform"] = rres;
            out.check_verdicts["bounded_transform"] = ok && rres <= th.bounded_abs;
            break;
        }
        case Check::tikhonov: {
            const TikhonovResult tk =
                mp_inverse_tikhonov(t, 1.0, 0.1, spec.stop_tol, 20, spec.rel_tol);
            residuals["tikhonov_gap"] = tk.gap;
            out.check_verdicts["tikhonov"] = tk.gap <= th.tikhonov_gap_abs;
            break;
        }
        }
    }
}

CaseResult run_case(const CaseSpec& spec, const Thresholds& th) {
    CaseResult out;
    out.id = spec.id;
    const auto start = std::chrono::steady_clock::now();
    try {
        const AMatrix t = materialize(spec);
        const MpInverseResult mi = mp_inverse(t, spec.rel_tol);
        out.report = mi.report;
        out.op_norm_t = op_norm(t);
        out.op_norm_pinv = op_norm(mi.pinv);
        run_checks(spec, t, mi, th, out);
        bool pass = true;
        for (const auto& [name, ok] : out.check_verdicts)
            pass = pass && ok;
        out.status = pass ? "pass" : "fail";
    } catch (const std::exception& e) {
        out.status = "error";
        out.error_message = e.what();
    }
    out.report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return out;
}

} // namespace

RunReport run_suite(const std::vector<CaseSpec>& cases, unsigned parallelism,
                    const Thresholds& thresholds) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.thresholds = thresholds;
    report.num_cases = cases.size();
    report.results.resize(cases.size());

    if (parallelism <= 1 || cases.size() <= 1) {
        for (std::size_t i = 0; i < cases.size(); ++i)
            report.results[i] = run_case(cases[i], thresholds);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cases.size())
                    return;
                report.results[i] = run_case(cases[i], thresholds);
            }
        };
        std::vector<std::thread> pool;
        const unsigned width = std::min<unsigned>(parallelism, cases.size());
        pool.reserve(width);
        for (unsigned w = 0; w < width; ++w)
            pool.emplace_back(worker);
        for (std::thread& th : pool)
            th.join();
    }

    std::sort(report.results.begin(), report.results.end(),
              [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
    for (const CaseResult& r : report.results) {
        if (r.status == "pass")
            ++report.num_passes;
        else if (r.status == "fail")
            ++report.num_failures;
        else
            ++report.num_errors;
    }
    report.total_runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

std::string report_to_json(const RunReport& report) {
    json doc = json::object();
    doc["suite"] = json{{"cases", report.num_cases},
                        {"passes", report.num_passes},
                        {"failures", report.num_failures},
                        {"errors", report.num_errors}};
    const Thresholds& th = report.thresholds;
    doc["thresholds"] = json{{"penrose_scale", th.penrose_scale},
                             {"gram_route_scale", th.gram_route_scale},
                             {"gram_product_scale", th.gram_product_scale},
                             {"projection_abs", th.projection_abs},
                             {"decomposition_abs", th.decomposition_abs},
                             {"gram_range_abs", th.gram_range_abs},
                             {"commutant_scale", th.commutant_scale},
                             {"selfadjoint_sa_zero", th.selfadjoint_sa_zero},
                             {"selfadjoint_lhs_pass", th.selfadjoint_lhs_pass},
                             {"selfadjoint_lhs_zero", th.selfadjoint_lhs_zero},
                             {"selfadjoint_sa_pass", th.selfadjoint_sa_pass},
                             {"bounded_abs", th.bounded_abs},
                             {"tikhonov_gap_abs", th.tikhonov_gap_abs}};
    json results = json::array();
    for (const CaseResult& r : report.results) {
        json item = json::object();
        item["id"] = r.id;
        item["status"] = r.status;
        if (!r.error_message.empty()) {
            item["error"] = r.error_message;
        } else {
            item["tol_used"] = r.report.tol_used;
            item["op_norm"] = r.op_norm_t;
            item["pinv_norm"] = r.op_norm_pinv;
            item["per_summand_ranks"] = r.report.per_summand_ranks;
            item["rank_stable"] = r.report.rank_stable;
            item["penrose_residuals"] = r.report.penrose_residuals;
            item["identity_residuals"] = r.report.identity_residuals;
            json verdicts = json::object();
            for (const auto& [name, ok] : r.check_verdicts)
                verdicts[name] = ok;
            item["checks"] = std::move(verdicts);
        }
        results.push_back(std::move(item));
    }
    doc["results"] = std::move(results);
    return doc.dump(2) + "\n";
}

namespace {

std::string sig3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

} // namespace

std::string report_to_text(const RunReport& report) {
    std::ostringstream out;
    out << "id                 status  penrose_max  worst_res  worst_check   ranks     ms\n";
    for (const CaseResult& r : report.results) {
        char line[256];
        if (r.status == "error") {
            std::snprintf(line, sizeof(line), "%-18s %-7s %s\n", r.id.c_str(), r.status.c_str(),
                          r.error_message.c_str());
            out << line;
            continue;
        }
        std::string worst_name = "-";
        double worst_val = 0.0;
        for (const auto& [name, val] : r.report.identity_residuals)
            if (val >= worst_val) {
                worst_val = val;
                worst_name = name;
            }
        std::string ranks;
        for (std::size_t i = 0; i < r.report.per_summand_ranks.size(); ++i)
            ranks += (i ? "," : "") + std::to_string(r.report.per_summand_ranks[i]);
        std::snprintf(line, sizeof(line), "%-18s %-7s %-12s %-10s %-13s %-9s %s\n", r.id.c_str(),
                      r.status.c_str(), sig3(max_penrose(r.report)).c_str(), sig3(worst_val).c_str(),
                      worst_name.c_str(), ranks.c_str(), sig3(r.report.runtime_ms).c_str());
        out << line;
    }
    out << "suite: " << report.num_cases << " cases, " << report.num_passes << " passed, "
        << report.num_failures << " failed, " << report.num_errors << " errored, "
        << sig3(report.total_runtime_ms) << " ms total\n";
    return out.str();
}

int report_exit_code(const RunReport& report) {
    if (report.num_errors > 0)
        return 3;
    if (report.num_failures > 0)
        return 1;
    return 0;
}

} // namespace gramops
