// gramops command line tool: generate operator corpora, run the identity
// suite, and reproduce the ill-posed integration study.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gramops/gramops.hpp"

namespace {

using gramops::Check;
using json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFailures = 1;
constexpr int kExitInputError = 2;
constexpr int kExitKernelError = 3;

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what,
                                         bool allow_zero = false) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            const long v = std::stol(item);
            if (v < 0 || (v == 0 && !allow_zero))
                throw std::invalid_argument("out of range");
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw gramops::ValidationError(std::string(what) + ": bad entry '" + item + "'");
        }
    }
    if (out.empty())
        throw gramops::ValidationError(std::string(what) + ": empty list");
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw gramops::Error("cannot write '" + path + "'");
    out << content;
}

int cmd_verify(const std::string& path, double tol_override, const std::string& report_path,
               unsigned parallel) {
    std::vector<gramops::CaseSpec> cases = gramops::parse_case_file(path);
    if (tol_override > 0.0)
        for (gramops::CaseSpec& c : cases)
            c.rel_tol = tol_override;
    const gramops::RunReport report = gramops::run_suite(cases, parallel);
    std::cout << gramops::report_to_text(report);
    if (!report_path.empty())
        write_text_file(report_path, gramops::report_to_json(report));
    return gramops::report_exit_code(report);
}

int cmd_gen(const std::string& shape_text, const std::string& dims_text,
            const std::string& rank_text, std::size_t count, std::uint64_t seed,
            const std::string& out_path) {
    gramops::GenConfig config;
    config.shape = gramops::AlgebraShape(parse_size_list(shape_text, "--shape"));
    const auto x = dims_text.find('x');
    if (x == std::string::npos)
        throw gramops::ValidationError("--dims: expected OUTxIN, e.g. 4x3");
    config.out_len = parse_size_list(dims_text.substr(0, x), "--dims").front();
    config.in_len = parse_size_list(dims_text.substr(x + 1), "--dims").front();
    if (rank_text != "full")
        config.ranks = parse_size_list(rank_text, "--rank", /*allow_zero=*/true);
    config.count = count;
    config.seed = seed;
    gramops::write_case_file(out_path, gramops::gen_cases(config));
    std::cout << "wrote " << count << " cases to " << out_path << "\n";
    return kExitPass;
}

json study_to_json(const gramops::VolterraStudy& s) {
    return json{{"grid_sizes", s.grid_sizes},
                {"solution_norms", s.solution_norms},
                {"lss_residuals", s.lss_residuals},
                {"condition_numbers", s.condition_numbers},
                {"gram_identity_gaps", s.gram_identity_gaps}};
}

void print_study(const char* label, const gramops::VolterraStudy& s) {
    std::printf("%s\n", label);
    std::printf("  %6s  %12s  %12s  %12s  %12s\n", "n", "norm_h", "residual_h", "cond(VV*)",
                "gram_gap");
    for (std::size_t i = 0; i < s.grid_sizes.size(); ++i)
        std::printf("  %6zu  %12.3g  %12.3g  %12.3g  %12.3g\n", s.grid_sizes[i],
                    s.solution_norms[i], s.lss_residuals[i], s.condition_numbers[i],
                    s.gram_identity_gaps[i]);
}

int cmd_volterra(const std::string& grids_text, const std::string& out_path) {
    const std::vector<std::size_t> grids = parse_size_list(grids_text, "--grids");
    const gramops::VolterraStudy study = gramops::no_solution_study(grids);
    const gramops::VolterraStudy control = gramops::control_study(grids);

    bool diverges = true;
    for (std::size_t i = 1; i < study.solution_norms.size(); ++i)
        diverges = diverges && study.solution_norms[i] > study.solution_norms[i - 1];
    double cmin = control.solution_norms.front(), cmax = cmin;
    for (double v : control.solution_norms) {
        cmin = std::min(cmin, v);
        cmax = std::max(cmax, v);
    }
    const bool control_bounded = cmax <= 2.0 * cmin;
    bool cond_grows = true;
    for (std::size_t i = 1; i < study.condition_numbers.size(); ++i)
        cond_grows = cond_grows && study.condition_numbers[i] >= 3.0 * study.condition_numbers[i - 1];

    print_study("identity right side f(x) = x:", study);
    print_study("in-range control f = VV* g0:", control);
    std::printf("verdicts: norm_divergence=%s control_bounded=%s condition_growth=%s\n",
                diverges ? "pass" : "fail", control_bounded ? "pass" : "fail",
                cond_grows ? "pass" : "fail");

    if (!out_path.empty()) {
        json doc = json{{"study", study_to_json(study)},
                        {"control", study_to_json(control)},
                        {"verdicts",
                         json{{"norm_divergence", diverges},
                              {"control_bounded", control_bounded},
                              {"condition_growth", cond_grows}}}};
        write_text_file(out_path, doc.dump(2) + "\n");
    }
    return (diverges && control_bounded && cond_grows) ? kExitPass : kExitFailures;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moore-Penrose identity suite for operators over block matrix algebras"};
    app.require_subcommand(1);

    std::string verify_path, report_path;
    double tol_override = 0.0;
    unsigned parallel = 1;
    CLI::App* verify = app.add_subcommand("verify", "run the identity checks of a case file");
    verify->add_option("file", verify_path, "case file (JSON)")->required();
    verify->add_option("--tol", tol_override, "override the rank tolerance of every case");
    verify->add_option("--report", report_path, "write the JSON report here");
    verify->add_option("--parallel", parallel, "worker threads")->default_val(1);

    std::string shape_text, dims_text, out_path;
    std::string rank_text = "full";
    std::size_t count = 0;
    std::uint64_t seed = 0;
    CLI::App* gen = app.add_subcommand("gen", "generate a reproducible case corpus");
    gen->add_option("--shape", shape_text, "block dimensions, e.g. 2,3")->required();
    gen->add_option("--dims", dims_text, "operator size OUTxIN, e.g. 4x3")->required();
    gen->add_option("--rank", rank_text, "'full' or per-summand flattened ranks r1,r2,...");
    gen->add_option("--count", count, "number of cases")->required();
    gen->add_option("--seed", seed, "corpus seed")->required();
    gen->add_option("--out", out_path, "output case file")->required();

    std::string grids_text = "16,32,64,128";
    std::string volterra_out;
    CLI::App* volterra =
        app.add_subcommand("volterra", "ill-posed integration study on a grid ladder");
    volterra->add_option("--grids", grids_text, "ascending grid sizes (default 16,32,64,128)");
    volterra->add_option("--out", volterra_out, "write the study JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitInputError;
    }

    try {
        if (verify->parsed())
            return cmd_verify(verify_path, tol_override, report_path, parallel);
        if (gen->parsed())
            return cmd_gen(shape_text, dims_text, rank_text, count, seed, out_path);
        if (volterra->parsed())
            return cmd_volterra(grids_text, volterra_out);
    } catch (const gramops::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const gramops::ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const gramops::InvalidRank& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "kernel error: " << e.what() << "\n";
        return kExitKernelError;
    }
    return kExitInputError;
}
