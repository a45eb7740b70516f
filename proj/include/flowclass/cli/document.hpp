#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "flowclass/numkit/matrix.hpp"
#include "flowclass/spectral/descriptor.hpp"

namespace flowclass::cli {

enum class DocMode { matrix, spectrum };

struct DocOptions {
    std::optional<double> tol;
    std::optional<int> qmax;
    std::optional<double> horizon;
};

/// A validated input: a square matrix (exact or floating) or a Jordan-data spectrum.
struct InputDocument {
    std::string name;
    DocMode mode = DocMode::matrix;
    numkit::ScalarMode scalar = numkit::ScalarMode::exact;
    std::variant<numkit::MatrixQ, numkit::MatrixD, spectral::SpectrumDescriptor> payload;
    DocOptions options;

    [[nodiscard]] std::size_t dimension() const;
};

/// Parses a JSON document:
///
///     {"matrix": [[0, 1], [-1, 0]]}
///     {"n": 2, "blocks": [{"im": "2", "m": 1, "count": 1}, {"im": "-2"}]}
///
/// Optional keys: "mode" ("matrix" | "spectrum", otherwise inferred from the keys present),
/// "scalar" ("rational" | "float", otherwise inferred from the literals), "real" (spectrum,
/// default true), "options" ({"tol", "qmax", "horizon"}). Entries are JSON numbers or strings;
/// integers and "a/b" are rational, decimal and scientific literals are float, and mixing the
/// two kinds is rejected at the first offending token. Spectrum "re"/"im" also accept
/// "sqrt(d)", "c*sqrt(d)" and "(a/b)*sqrt(d)" in rational mode. Throws ParseError with the
/// line or field of the problem.
InputDocument parse_input(std::istream& in, const std::string& name);
InputDocument parse_file(const std::string& path);

}  // namespace flowclass::cli
