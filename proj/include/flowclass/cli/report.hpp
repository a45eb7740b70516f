#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace flowclass::cli {

struct Cell {
    double re = 0.0;
    double im = 0.0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

struct BlockRow {
    std::string lambda;
    std::size_t m = 1;
    std::size_t count = 1;
    friend bool operator==(const BlockRow&, const BlockRow&) = default;
};

struct SignatureDto {
    std::size_t n = 0;
    std::size_t dim_plus = 0;
    std::size_t dim_minus = 0;
    std::vector<BlockRow> center;
    friend bool operator==(const SignatureDto&, const SignatureDto&) = default;
};

/// Float-mode evidence for one class member: member / reference ~ num / den.
struct EvidenceRow {
    std::string member;
    std::int64_t num = 0;
    std::int64_t den = 1;
    double rel_error = 0.0;
    friend bool operator==(const EvidenceRow&, const EvidenceRow&) = default;
};

struct ClassDto {
    std::string beta;
    std::vector<std::int64_t> p;
    std::vector<std::string> members;
    std::vector<EvidenceRow> evidence;
    friend bool operator==(const ClassDto&, const ClassDto&) = default;
};

struct BoundedDto {
    std::size_t dim_b = 0;
    std::size_t dim_d = 0;
    std::vector<ClassDto> classes;
    std::vector<std::string> unclassed;
    friend bool operator==(const BoundedDto&, const BoundedDto&) = default;
};

struct ChiDto {
    std::string beta;
    std::vector<std::string> singular_values;
    std::vector<std::size_t> preimage_dims;
    friend bool operator==(const ChiDto&, const ChiDto&) = default;
};

struct MultRow {
    std::string lambda;
    std::size_t mult = 0;
    friend bool operator==(const MultRow&, const MultRow&) = default;
};

struct FLevelDto {
    std::size_t k = 0;
    std::size_t dim = 0;
    std::vector<MultRow> multiplicities;
    friend bool operator==(const FLevelDto&, const FLevelDto&) = default;
};

struct Diagnostics {
    /// "exact" or "float".
    std::string mode;
    /// Float-mode decisions (clustering, zero real part, rational ratios) are tolerance based.
    bool heuristic = false;
    std::optional<double> tol;
    /// Smallest |Re lambda| distance from the zero threshold.
    std::optional<double> margin;
    std::vector<std::string> notes;
    friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

struct InvariantsDto {
    std::string input;
    std::vector<BlockRow> descriptor;
    SignatureDto signature;
    BoundedDto bounded;
    std::vector<ChiDto> chi;
    std::vector<FLevelDto> f_sequence;
    Diagnostics diagnostics;
    friend bool operator==(const InvariantsDto&, const InvariantsDto&) = default;
};

struct ClassifyDto {
    /// "CONJUGATE" or "NOT CONJUGATE".
    std::string verdict;
    bool conjugate = false;
    bool equivalent = false;
    std::string certificate;
    std::vector<std::string> inputs;
    std::vector<SignatureDto> signatures;
    std::vector<Diagnostics> diagnostics;
    friend bool operator==(const ClassifyDto&, const ClassifyDto&) = default;
};

struct OrbitRow {
    double t = 0.0;
    std::vector<double> x;
    friend bool operator==(const OrbitRow&, const OrbitRow&) = default;
};

struct SimulateDto {
    std::string input;
    std::vector<double> x0;
    std::vector<OrbitRow> orbit;
    /// "period", "fixed_point" or "none_found".
    std::string period_kind;
    std::optional<double> period;
    std::optional<double> period_residual;
    double horizon = 0.0;
    std::string bounded_sampling;
    std::optional<std::string> bounded_exact;
    /// Empty when the sampled orbit overflowed.
    std::optional<double> max_norm;
    std::vector<std::string> notes;
    friend bool operator==(const SimulateDto&, const SimulateDto&) = default;
};

struct WitnessRow {
    std::size_t n = 0;
    double t = 0.0;
    std::vector<Cell> x;
    std::vector<Cell> y;
    friend bool operator==(const WitnessRow&, const WitnessRow&) = default;
};

struct WitnessDto {
    std::string op;
    std::size_t m = 0;
    std::size_t r = 0;
    double beta = 0.0;
    Cell delta;
    std::size_t n_max = 0;
    std::vector<Cell> limit_x;
    std::vector<Cell> limit_y;
    std::vector<WitnessRow> rows;
    double max_scaled_residual = 0.0;
    std::optional<double> decay_exponent;
    double final_x_error = 0.0;
    double final_y_error = 0.0;
    friend bool operator==(const WitnessDto&, const WitnessDto&) = default;
};

struct Report {
    std::string command;
    std::optional<ClassifyDto> classify;
    std::vector<InvariantsDto> invariants;
    std::optional<SimulateDto> simulate;
    std::optional<WitnessDto> witness;
    friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::ordered_json to_json_value(const Report& r);
/// Throws ParseError on a document that is not a report.
Report report_from_json(const nlohmann::ordered_json& j);

std::string emit_json(const Report& r);
/// Indented key: value text; arrays of flat records become aligned tables.
std::string emit_text(const Report& r);
Report parse_report(const std::string& text);

}  // namespace flowclass::cli
