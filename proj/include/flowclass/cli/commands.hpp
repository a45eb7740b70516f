#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowclass/cli/document.hpp"
#include "flowclass/cli/report.hpp"
#include "flowclass/flowsim/witness.hpp"
#include "flowclass/invariants/classes.hpp"
#include "flowclass/numkit/linalg.hpp"

namespace flowclass::cli {

/// Command-line overrides; unset values fall back to the document options, then to the module defaults.
struct RunOptions {
    std::optional<double> tol;
    double rank_tol = numkit::kDefaultRankTol;
    std::optional<int> qmax;
    double ratio_tol = invariants::kDefaultRatioTol;
    /// Fail instead of falling back to floating mode.
    bool exact = false;
    std::optional<std::size_t> kmax;
};

struct Analysis {
    spectral::SpectrumDescriptor desc;
    Diagnostics diagnostics;
};

/// Spectrum of a document: exact when the matrix is rational and its spectrum
/// is representable, floating otherwise (noted in the diagnostics).
Analysis analyze(const InputDocument& doc, const RunOptions& opts);

InvariantsDto invariants_report(const InputDocument& doc, const RunOptions& opts);

/// Shared by both `classify` and `equiv`.
ClassifyDto classify_report(const InputDocument& a, const InputDocument& b, const RunOptions& opts);

struct SimulateOptions {
    std::optional<double> horizon;
    std::optional<double> grid_step;
    /// Rows of the orbit table over [0, horizon].
    std::size_t samples = 11;
};

SimulateDto simulate_report(const InputDocument& doc, const std::vector<numkit::Scalar>& x0,
                            const SimulateOptions& opts);

struct WitnessRequest {
    flowsim::ReductionOp op = flowsim::ReductionOp::X;
    std::size_t m = 3;
    double beta = 1.0;
    std::vector<double> head;
    std::size_t n_max = 1000;
    double delta = 1.0;
};

/// Table rows at n = 1, 2, 5, 10, 20, 50, ... and n_max.
WitnessDto witness_report(const WitnessRequest& req);

/// Comma-separated scalar literals.
std::vector<numkit::Scalar> parse_csv(const std::string& text, const std::string& what);

}  // namespace flowclass::cli
