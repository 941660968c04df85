#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gramops/casefile.hpp"
#include "gramops/runner.hpp"

using namespace gramops;

namespace {

const char* kMinimalFile = R"({
  "cases": [
    {
      "id": "scalar",
      "shape": [1],
      "out_len": 1,
      "in_len": 1,
      "source": {"entries": [[[[[[2.0, 1.0]]]]]]},
      "tolerances": {"rel_tol": 1e-10, "stop_tol": 1e-10},
      "checks": ["penrose"]
    }
  ]
})";

std::vector<CaseSpec> seeded_corpus() {
    GenConfig config;
    config.shape = AlgebraShape({1, 2});
    config.out_len = 3;
    config.in_len = 2;
    config.count = 4;
    config.seed = 99;
    return gen_cases(config);
}

} // namespace

TEST_CASE("minimal inline case parses") {
    const std::vector<CaseSpec> cases = parse_case_text(kMinimalFile);
    REQUIRE(cases.size() == 1);
    CHECK(cases[0].id == "scalar");
    CHECK(cases[0].shape.num_blocks() == 1);
    REQUIRE(cases[0].inline_entries.has_value());
    CHECK((*cases[0].inline_entries)[0].block(0)(0, 0) == cx(2.0, 1.0));
    CHECK(cases[0].checks == std::vector<Check>{Check::penrose});

    const AMatrix t = materialize(cases[0]);
    CHECK(t.entry(0, 0).block(0)(0, 0) == cx(2.0, 1.0));
}

TEST_CASE("serialization round-trips byte for byte") {
    std::vector<CaseSpec> cases = seeded_corpus();
    // Mix in an inline case so both source kinds round-trip.
    cases.push_back(parse_case_text(kMinimalFile)[0]);
    const std::string once = serialize_cases(cases);
    const std::string twice = serialize_cases(parse_case_text(once));
    CHECK(once == twice);
}

TEST_CASE("parse rejections") {
    CHECK_THROWS_AS(parse_case_text("{"), ParseError);
    CHECK_THROWS_AS(parse_case_text(R"({"bogus": []})"), ParseError);
    CHECK_THROWS_AS(parse_case_text(R"({"cases": [{"id": "x"}]})"), ParseError);

    // Unknown field inside a case.
    std::string text = kMinimalFile;
    text.replace(text.find("\"checks\""), 8, "\"extra\": 1, \"checks\"");
    CHECK_THROWS_AS(parse_case_text(text), ParseError);

    // Unknown check name.
    std::string badcheck = kMinimalFile;
    badcheck.replace(badcheck.find("penrose"), 7, "penrise");
    CHECK_THROWS_AS(parse_case_text(badcheck), ParseError);
}

TEST_CASE("validation rejections") {
    // Duplicate ids.
    std::vector<CaseSpec> dup = seeded_corpus();
    dup[1].id = dup[0].id;
    CHECK_THROWS_AS(parse_case_text(serialize_cases(dup)), ValidationError);

    // Rank above the per-summand bound.
    std::vector<CaseSpec> bad = seeded_corpus();
    (*bad[0].ranks)[0] = 5;
    CHECK_THROWS_AS(parse_case_text(serialize_cases(bad)), ValidationError);

    // Non-finite inline entry (rejected at parse or validation, either way an Error).
    std::string nonfinite = kMinimalFile;
    nonfinite.replace(nonfinite.find("[2.0, 1.0]"), 10, "[1e400, 0.0]");
    CHECK_THROWS_AS(parse_case_text(nonfinite), Error);

    // Non-positive tolerance.
    std::string badtol = kMinimalFile;
    badtol.replace(badtol.find("\"rel_tol\": 1e-10"), 16, "\"rel_tol\": 0.0");
    CHECK_THROWS_AS(parse_case_text(badtol), ValidationError);
}

TEST_CASE("empty check set passes with an empty residual map") {
    std::vector<CaseSpec> cases = parse_case_text(kMinimalFile);
    cases[0].checks.clear();
    const RunReport report = run_suite(cases);
    REQUIRE(report.results.size() == 1);
    CHECK(report.results[0].status == "pass");
    CHECK(report.results[0].report.identity_residuals.empty());
}

TEST_CASE("identity operator case passes every check with zero residuals") {
    CaseSpec spec;
    spec.id = "unit";
    spec.shape = AlgebraShape({2});
    spec.out_len = 2;
    spec.in_len = 2;
    std::vector<AlgElem> entries(4, AlgElem(spec.shape));
    entries[0] = AlgElem::identity(spec.shape);
    entries[3] = AlgElem::identity(spec.shape);
    spec.inline_entries = entries;
    spec.rel_tol = 1e-10;
    spec.stop_tol = 1e-10;
    for (const char* name : {"penrose", "gram_left", "gram_right", "gram_product", "projections",
                             "decomposition", "gram_range", "commutant", "selfadjoint",
                             "bounded_transform", "tikhonov"})
        spec.checks.push_back(*check_from_name(name));

    const RunReport report = run_suite({spec});
    REQUIRE(report.results.size() == 1);
    const CaseResult& r = report.results[0];
    CHECK(r.status == "pass");
    for (double v : r.report.penrose_residuals)
        CHECK(v <= 1e-12);
    for (const auto& [name, value] : r.report.identity_residuals)
        if (name != "tikhonov_gap")
            CHECK(value <= 1e-9);
}

TEST_CASE("suite reports are deterministic and order-independent") {
    const std::vector<CaseSpec> cases = seeded_corpus();
    const RunReport serial = run_suite(cases, 1);
    const RunReport parallel = run_suite(cases, 4);
    CHECK(report_to_json(serial) == report_to_json(parallel));

    std::vector<CaseSpec> shuffled = {cases[2], cases[0], cases[3], cases[1]};
    CHECK(report_to_json(run_suite(shuffled, 2)) == report_to_json(serial));
}

TEST_CASE("a failing case never disturbs its neighbours") {
    std::vector<CaseSpec> cases;
    // Failing case: the retained spectrum straddles the rank cutoff, so the
    // truncated pseudoinverse violates the first defining axiom.
    CaseSpec bad;
    bad.id = "a-bad";
    bad.shape = AlgebraShape({1});
    bad.out_len = 2;
    bad.in_len = 2;
    std::vector<AlgElem> entries(4, AlgElem(bad.shape));
    entries[0].block(0)(0, 0) = 1.0;
    entries[3].block(0)(0, 0) = 1e-6;
    bad.inline_entries = entries;
    bad.rel_tol = 1e-5;
    bad.checks = {Check::penrose};
    cases.push_back(bad);

    // Erroring case: spectrum too close to zero for the regularized route.
    CaseSpec err = bad;
    err.id = "b-err";
    (*err.inline_entries)[3].block(0)(0, 0) = 1e-4;
    err.rel_tol = 1e-10;
    err.checks = {Check::tikhonov};
    cases.push_back(err);

    CaseSpec good = bad;
    good.id = "c-good";
    (*good.inline_entries)[3].block(0)(0, 0) = 1.0;
    good.rel_tol = 1e-10;
    good.checks = {Check::penrose, Check::gram_left};
    cases.push_back(good);

    const RunReport report = run_suite(cases, 3);
    REQUIRE(report.results.size() == 3);
    CHECK(report.results[0].status == "fail");
    CHECK(report.results[1].status == "error");
    CHECK(report.results[2].status == "pass");
    CHECK(report.num_failures == 1);
    CHECK(report.num_errors == 1);
    CHECK(report.num_passes == 1);
    CHECK(report_exit_code(report) == 3);
}

TEST_CASE("gen_cases produces a valid reproducible corpus") {
    GenConfig config;
    config.shape = AlgebraShape({2});
    config.out_len = 2;
    config.in_len = 3;
    config.count = 0;
    config.seed = 5;
    CHECK(parse_case_text(serialize_cases(gen_cases(config))).empty());

    config.count = 3;
    const std::vector<CaseSpec> full = gen_cases(config);
    for (const CaseSpec& spec : full) {
        const MpInverseResult mi = mp_inverse(materialize(spec), spec.rel_tol);
        CHECK(mi.report.rank_stable);
        CHECK(mi.report.per_summand_ranks == std::vector<std::size_t>{4});
    }

    config.ranks = {3};
    for (const CaseSpec& spec : gen_cases(config)) {
        const SvdFactors f = svd(flatten_summand(materialize(spec), 0));
        CHECK(rank_from_singulars(f.singulars, spec.rel_tol) == 3);
    }

    config.ranks = {7};
    CHECK_THROWS_AS(gen_cases(config), InvalidRank);
}
