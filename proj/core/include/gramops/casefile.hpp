#ifndef GRAMOPS_CASEFILE_HPP
#define GRAMOPS_CASEFILE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gramops/operators.hpp"

namespace gramops {

/// Identity checks a case can request.
enum class Check {
    penrose,
    gram_left,
    gram_right,
    gram_product,
    projections,
    decomposition,
    gram_range,
    commutant,
    selfadjoint,
    bounded_transform,
    tikhonov,
};

const char* check_name(Check c);
std::optional<Check> check_from_name(const std::string& name);

/// One test-case description: which operator to build and what to verify.
/// The operator comes either from inline entries or from (seed, ranks).
struct CaseSpec {
    std::string id;
    AlgebraShape shape;
    std::size_t out_len = 0;
    std::size_t in_len = 0;

    std::optional<std::vector<AlgElem>> inline_entries; // row-major out_len x in_len
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<std::size_t>> ranks; // per-summand flattened ranks

    double rel_tol = 0.0;
    double stop_tol = 1e-10;
    std::vector<Check> checks;
};

/// Strict decode of a case file. Unknown fields and malformed structure raise
/// ParseError with a field path; semantic breaches (duplicate ids, rank bounds,
/// non-finite entries, bad tolerances) raise ValidationError.
std::vector<CaseSpec> parse_case_file(const std::string& path);
std::vector<CaseSpec> parse_case_text(const std::string& text);

std::string serialize_cases(const std::vector<CaseSpec>& cases);
void write_case_file(const std::string& path, const std::vector<CaseSpec>& cases);

/// Build the operator a case describes.
AMatrix materialize(const CaseSpec& spec);

struct GenConfig {
    AlgebraShape shape;
    std::size_t out_len = 0;
    std::size_t in_len = 0;
    std::vector<std::size_t> ranks; // empty means full per-summand rank
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

/// Reproducible corpus: case i is seeded with mix_seed(seed, i) and records its
/// generation parameters so a later run rebuilds the identical operator.
std::vector<CaseSpec> gen_cases(const GenConfig& config);

} // namespace gramops

#endif
