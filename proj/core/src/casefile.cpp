#include "gramops/casefile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gramops/random.hpp"

namespace gramops {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kCheckNames[] = {
    "penrose",     "gram_left",   "gram_right",        "gram_product",
    "projections", "decomposition", "gram_range",      "commutant",
    "selfadjoint", "bounded_transform", "tikhonov",
};

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

[[noreturn]] void validate_fail(const std::string& where, const std::string& what) {
    throw ValidationError(where + ": " + what);
}

void reject_unknown_fields(const json& obj, const std::set<std::string>& known,
                           const std::string& where) {
    for (const auto& item : obj.items())
        if (!known.count(item.key()))
            parse_fail(where, "unknown field '" + item.key() + "'");
}

const json& member(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        parse_fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::size_t as_count(const json& v, const std::string& where) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
        parse_fail(where, "expected a positive integer");
    return v.get<std::size_t>();
}

double as_positive_real(const json& v, const std::string& where) {
    if (!v.is_number())
        parse_fail(where, "expected a number");
    const double d = v.get<double>();
    if (!(d > 0.0) || !std::isfinite(d))
        validate_fail(where, "value must be a positive finite real");
    return d;
}

cx parse_complex(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        parse_fail(where, "complex number must be a [re, im] pair");
    const cx z(v[0].get<double>(), v[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        validate_fail(where, "complex entry is not finite");
    return z;
}

json complex_to_json(const cx& z) { return json::array({z.real(), z.imag()}); }

ComplexMatrix parse_block(const json& v, std::size_t dim, const std::string& where) {
    if (!v.is_array() || v.size() != dim)
        parse_fail(where, "block must have " + std::to_string(dim) + " rows");
    ComplexMatrix blk(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const json& row = v[r];
        if (!row.is_array() || row.size() != dim)
            parse_fail(where + ".row" + std::to_string(r),
                       "row must have " + std::to_string(dim) + " entries");
        for (std::size_t c = 0; c < dim; ++c)
            blk(r, c) = parse_complex(row[c], where + "[" + std::to_string(r) + "][" +
                                                  std::to_string(c) + "]");
    }
    return blk;
}

AlgElem parse_alg_elem(const json& v, const AlgebraShape& shape, const std::string& where) {
    if (!v.is_array() || v.size() != shape.num_blocks())
        parse_fail(where, "algebra element must list one block per summand");
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(shape.num_blocks());
    for (std::size_t i = 0; i < shape.num_blocks(); ++i)
        blocks.push_back(
            parse_block(v[i], shape.block_dim(i), where + ".block" + std::to_string(i)));
    return AlgElem(shape, std::move(blocks));
}

json alg_elem_to_json(const AlgElem& a) {
    json blocks = json::array();
    for (std::size_t i = 0; i < a.num_blocks(); ++i) {
        const ComplexMatrix& blk = a.block(i);
        json rows = json::array();
        for (std::size_t r = 0; r < blk.rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < blk.cols(); ++c)
                row.push_back(complex_to_json(blk(r, c)));
            rows.push_back(std::move(row));
        }
        blocks.push_back(std::move(rows));
    }
    return blocks;
}

AlgebraShape parse_shape(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty())
        parse_fail(where, "shape must be a nonempty array of block dimensions");
    std::vector<std::size_t> dims;
    for (const json& d : v)
        dims.push_back(as_count(d, where));
    return AlgebraShape(std::move(dims));
}

CaseSpec parse_case(const json& v, const std::string& where) {
    if (!v.is_object())
        parse_fail(where, "case must be an object");
    reject_unknown_fields(
        v, {"id", "shape", "out_len", "in_len", "source", "tolerances", "checks"}, where);

    CaseSpec spec;
    const json& id = member(v, "id", where);
    if (!id.is_string() || id.get<std::string>().empty())
        parse_fail(where + ".id", "id must be a nonempty string");
    spec.id = id.get<std::string>();
    spec.shape = parse_shape(member(v, "shape", where), where + ".shape");
    spec.out_len = as_count(member(v, "out_len", where), where + ".out_len");
    spec.in_len = as_count(member(v, "in_len", where), where + ".in_len");

    const json& source = member(v, "source", where);
    if (!source.is_object())
        parse_fail(where + ".source", "source must be an object");
    if (source.contains("entries")) {
        reject_unknown_fields(source, {"entries"}, where + ".source");
        const json& entries = source["entries"];
        if (!entries.is_array() || entries.size() != spec.out_len)
            parse_fail(where + ".source.entries",
                       "expected " + std::to_string(spec.out_len) + " rows");
        std::vector<AlgElem> parsed;
        for (std::size_t i = 0; i < spec.out_len; ++i) {
            const json& row = entries[i];
            if (!row.is_array() || row.size() != spec.in_len)
                parse_fail(where + ".source.entries", "row " + std::to_string(i) + " must have " +
                                                          std::to_string(spec.in_len) + " entries");
            for (std::size_t j = 0; j < spec.in_len; ++j)
                parsed.push_back(parse_alg_elem(row[j], spec.shape,
                                                where + ".source.entries[" + std::to_string(i) +
                                                    "][" + std::to_string(j) + "]"));
        }
        spec.inline_entries = std::move(parsed);
    } else if (source.contains("seed")) {
        reject_unknown_fields(source, {"seed", "ranks"}, where + ".source");
        const json& seed = source["seed"];
        if (!seed.is_number_unsigned())
            parse_fail(where + ".source.seed", "seed must be an unsigned integer");
        spec.seed = seed.get<std::uint64_t>();
        const json& ranks = member(source, "ranks", where + ".source");
        if (!ranks.is_array() || ranks.size() != spec.shape.num_blocks())
            parse_fail(where + ".source.ranks", "expected one rank per summand");
        std::vector<std::size_t> parsed;
        for (const json& r : ranks) {
            if (!r.is_number_unsigned()) // rank 0 (a zero summand) is legitimate
                parse_fail(where + ".source.ranks", "ranks must be unsigned integers");
            parsed.push_back(r.get<std::size_t>());
        }
        spec.ranks = std::move(parsed);
    } else {
        parse_fail(where + ".source", "source needs either 'entries' or 'seed' + 'ranks'");
    }

    const json& tol = member(v, "tolerances", where);
    if (!tol.is_object())
        parse_fail(where + ".tolerances", "tolerances must be an object");
    reject_unknown_fields(tol, {"rel_tol", "stop_tol"}, where + ".tolerances");
    spec.rel_tol = as_positive_real(member(tol, "rel_tol", where + ".tolerances"),
                                    where + ".tolerances.rel_tol");
    spec.stop_tol = as_positive_real(member(tol, "stop_tol", where + ".tolerances"),
                                     where + ".tolerances.stop_tol");

    const json& checks = member(v, "checks", where);
    if (!checks.is_array())
        parse_fail(where + ".checks", "checks must be an array of check names");
    for (const json& c : checks) {
        if (!c.is_string())
            parse_fail(where + ".checks", "check names must be strings");
        const auto parsed = check_from_name(c.get<std::string>());
        if (!parsed)
            parse_fail(where + ".checks", "unknown check '" + c.get<std::string>() + "'");
        if (std::find(spec.checks.begin(), spec.checks.end(), *parsed) != spec.checks.end())
            validate_fail(where + ".checks", "duplicate check '" + c.get<std::string>() + "'");
        spec.checks.push_back(*parsed);
    }
    return spec;
}

void validate_case(const CaseSpec& spec, const std::string& where) {
    const std::size_t min_len = std::min(spec.in_len, spec.out_len);
    if (spec.ranks) {
        for (std::size_t i = 0; i < spec.ranks->size(); ++i)
            if ((*spec.ranks)[i] > min_len * spec.shape.block_dim(i))
                validate_fail(where, "rank " + std::to_string((*spec.ranks)[i]) +
                                         " exceeds min(in, out) * n_" + std::to_string(i));
    }
    const bool square = spec.in_len == spec.out_len;
    for (Check c : spec.checks)
        if (!square && (c == Check::commutant || c == Check::selfadjoint))
            validate_fail(where, std::string("check '") + check_name(c) +
                                     "' requires a square operator");
}

json case_to_json(const CaseSpec& spec) {
    json v = json::object();
    v["id"] = spec.id;
    v["shape"] = spec.shape.blocks();
    v["out_len"] = spec.out_len;
    v["in_len"] = spec.in_len;
    json source = json::object();
    if (spec.inline_entries) {
        json rows = json::array();
        for (std::size_t i = 0; i < spec.out_len; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < spec.in_len; ++j)
                row.push_back(alg_elem_to_json((*spec.inline_entries)[i * spec.in_len + j]));
            rows.push_back(std::move(row));
        }
        source["entries"] = std::move(rows);
    } else {
        source["seed"] = *spec.seed;
        source["ranks"] = *spec.ranks;
    }
    v["source"] = std::move(source);
    v["tolerances"] = json{{"rel_tol", spec.rel_tol}, {"stop_tol", spec.stop_tol}};
    json checks = json::array();
    for (Check c : spec.checks)
        checks.push_back(check_name(c));
    v["checks"] = std::move(checks);
    return v;
}

} // namespace

const char* check_name(Check c) { return kCheckNames[static_cast<std::size_t>(c)]; }

std::optional<Check> check_from_name(const std::string& name) {
    for (std::size_t i = 0; i < std::size(kCheckNames); ++i)
        if (name == kCheckNames[i])
            return static_cast<Check>(i);
    return std::nullopt;
}

std::vector<CaseSpec> parse_case_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("case file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        parse_fail("top level", "expected an object with a 'cases' array");
    reject_unknown_fields(doc, {"cases"}, "top level");
    const json& cases = member(doc, "cases", "top level");
    if (!cases.is_array())
        parse_fail("cases", "expected an array");

    std::vector<CaseSpec> out;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string where = "cases[" + std::to_string(i) + "]";
        CaseSpec spec = parse_case(cases[i], where);
        validate_case(spec, where);
        if (!ids.insert(spec.id).second)
            validate_fail(where, "duplicate id '" + spec.id + "'");
        out.push_back(std::move(spec));
    }
    return out;
}

std::vector<CaseSpec> parse_case_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open case file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_case_text(buf.str());
}

std::string serialize_cases(const std::vector<CaseSpec>& cases) {
    json doc = json::object();
    json arr = json::array();
    for (const CaseSpec& spec : cases)
        arr.push_back(case_to_json(spec));
    doc["cases"] = std::move(arr);
    return doc.dump(2) + "\n";
}

void write_case_file(const std::string& path, const std::vector<CaseSpec>& cases) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write case file '" + path + "'");
    out << serialize_cases(cases);
}

AMatrix materialize(const CaseSpec& spec) {
    if (spec.inline_entries) {
        AMatrix t(spec.shape, spec.out_len, spec.in_len);
        for (std::size_t i = 0; i < spec.out_len; ++i)
            for (std::size_t j = 0; j < spec.in_len; ++j)
                t.entry(i, j) = (*spec.inline_entries)[i * spec.in_len + j];
        return t;
    }
    Rng rng(*spec.seed);
    return random_amatrix_ranked(spec.shape, spec.out_len, spec.in_len, *spec.ranks, rng);
}

std::vector<CaseSpec> gen_cases(const GenConfig& config) {
    if (config.out_len == 0 || config.in_len == 0)
        throw ValidationError("gen_cases: dimensions must be >= 1");
    const std::size_t min_len = std::min(config.in_len, config.out_len);
    std::vector<std::size_t> ranks = config.ranks;
    if (ranks.empty()) {
        for (std::size_t i = 0; i < config.shape.num_blocks(); ++i)
            ranks.push_back(min_len * config.shape.block_dim(i));
    }
    if (ranks.size() != config.shape.num_blocks())
        throw InvalidRank("gen_cases: one rank per summand required");
    bool full = true;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] > min_len * config.shape.block_dim(i))
            throw InvalidRank("gen_cases: rank exceeds min(in, out) * n_i");
        if (ranks[i] != min_len * config.shape.block_dim(i))
            full = false;
    }

    double rel_tol = 0.0;
    std::size_t max_flat = 0;
    for (std::size_t i = 0; i < config.shape.num_blocks(); ++i) {
        const std::size_t n = config.shape.block_dim(i);
        rel_tol = std::max(rel_tol, default_rank_tol(config.out_len * n, config.in_len * n));
        max_flat = std::max(max_flat, std::max(config.out_len, config.in_len) * n);
    }

    std::vector<Check> checks = {Check::penrose,       Check::gram_left,
                                 Check::gram_right,    Check::gram_product,
                                 Check::projections,   Check::decomposition,
                                 Check::gram_range,    Check::bounded_transform};
    if (config.in_len == config.out_len) {
        checks.push_back(Check::selfadjoint);
        if (max_flat <= 8)
            checks.push_back(Check::commutant);
    }
    if (full)
        checks.push_back(Check::tikhonov);

    std::vector<CaseSpec> cases;
    cases.reserve(config.count);
    const int width = config.count > 0 ? static_cast<int>(std::to_string(config.count - 1).size())
                                       : 1;
    for (std::size_t i = 0; i < config.count; ++i) {
        CaseSpec spec;
        std::string num = std::to_string(i);
        spec.id = "case-" + std::string(width - static_cast<int>(num.size()), '0') + num;
        spec.shape = config.shape;
        spec.out_len = config.out_len;
        spec.in_len = config.in_len;
        spec.seed = mix_seed(config.seed, i);
        spec.ranks = ranks;
        spec.rel_tol = rel_tol;
        spec.stop_tol = 1e-10;
        spec.checks = checks;
        cases.push_back(std::move(spec));
    }
    return cases;
}

} // namespace gramops
