#include "flowclass/cli/commands.hpp"

#include <cmath>

#include "flowclass/flowsim/orbit.hpp"
#include "flowclass/invariants/chi.hpp"
#include "flowclass/invariants/signature.hpp"
#include "flowclass/invariants/zcalc.hpp"
#include "flowclass/spectral/spectral.hpp"

namespace flowclass::cli {

using numkit::MatrixD;
using numkit::MatrixQ;
using spectral::SpectrumDescriptor;

namespace {

std::vector<BlockRow> block_rows(const std::vector<spectral::JordanBlocks>& blocks) {
    std::vector<BlockRow> rows;
    for (const auto& b : blocks) rows.push_back({b.lambda.str(), b.size, b.count});
    return rows;
}

SignatureDto signature_dto(const invariants::ConjugacySignature& s) {
    return {s.n, s.dim_plus, s.dim_minus, block_rows(s.center)};
}

Cell cell(const numkit::ComplexD& z) { return {z.re, z.im}; }

std::vector<Cell> cells(const std::vector<numkit::ComplexD>& v) {
    std::vector<Cell> out;
    for (const auto& z : v) out.push_back(cell(z));
    return out;
}

std::optional<double> finite(double v) {
    if (std::isfinite(v)) return v;
    return std::nullopt;
}

MatrixD float_matrix(const InputDocument& doc) {
    if (const auto* q = std::get_if<MatrixQ>(&doc.payload)) return numkit::to_double(*q);
    if (const auto* d = std::get_if<MatrixD>(&doc.payload)) return *d;
    throw UsageError(doc.name + ": this command needs a matrix document, not a spectrum");
}

}  // namespace

Analysis analyze(const InputDocument& doc, const RunOptions& opts) {
    Diagnostics diag;
    const std::optional<double> tol = opts.tol ? opts.tol : doc.options.tol;
    auto from_float = [&](const MatrixD& a) {
        spectral::SpectralOptions so;
        so.tol = tol;
        so.rank_tol = opts.rank_tol;
        diag.mode = "float";
        diag.heuristic = true;
        diag.tol = so.resolved_tol(a);
        return spectral::spectrum_descriptor(a, so);
    };

    std::optional<SpectrumDescriptor> desc;
    if (const auto* s = std::get_if<SpectrumDescriptor>(&doc.payload)) {
        if (opts.exact && !s->is_exact()) throw UsageError(doc.name + ": --exact needs rational spectrum literals");
        desc = *s;
        diag.mode = s->is_exact() ? "exact" : "float";
        diag.heuristic = !s->is_exact();
        if (!s->is_exact()) diag.tol = s->tolerance();
    } else if (const auto* q = std::get_if<MatrixQ>(&doc.payload)) {
        try {
            desc = spectral::spectrum_descriptor(*q);
            diag.mode = "exact";
        } catch (const FallbackNeeded& e) {
            if (opts.exact) throw;
            desc = from_float(numkit::to_double(*q));
            diag.notes.push_back(std::string("exact spectrum unavailable (") + e.what() + "); used floating mode");
        }
    } else {
        if (opts.exact) throw UsageError(doc.name + ": --exact needs rational matrix entries");
        desc = from_float(std::get<MatrixD>(doc.payload));
    }
    if (!desc->is_exact()) {
        diag.margin = spectral::split_dims(*desc, desc->tolerance()).margin;
        const double t = desc->tolerance();
        for (const auto& b : desc->blocks()) {
            const double re = std::fabs(b.lambda.approx().re);
            if (re > 1e-2 * t && re <= 1e2 * t) {
                diag.notes.push_back("Re(" + b.lambda.str() + ") is within a factor 100 of the zero threshold " +
                                     numkit::to_string(t));
                break;
            }
        }
    }
    return {std::move(*desc), std::move(diag)};
}

InvariantsDto invariants_report(const InputDocument& doc, const RunOptions& opts) {
    Analysis an = analyze(doc, opts);
    InvariantsDto out;
    out.input = doc.name;
    out.descriptor = block_rows(an.desc.blocks());
    out.signature = signature_dto(invariants::conjugacy_signature(an.desc));

    const int qmax = opts.qmax ? *opts.qmax : doc.options.qmax.value_or(invariants::kDefaultQmax);
    const auto bs = invariants::bounded_structure(an.desc, qmax, opts.ratio_tol);
    out.bounded.dim_b = bs.dimB;
    out.bounded.dim_d = bs.dimD;
    for (const auto& f : bs.unclassed) out.bounded.unclassed.push_back(f.str());
    for (const auto& cls : bs.classes) {
        ClassDto c{cls.beta.str(), cls.p, {}, {}};
        for (std::size_t i = 0; i < cls.members.size(); ++i) {
            c.members.push_back(cls.members[i].str());
            if (i < cls.evidence.size())
                c.evidence.push_back({cls.members[i].str(), cls.evidence[i].num, cls.evidence[i].den, cls.evidence[i].rel_error});
        }
        out.bounded.classes.push_back(std::move(c));

        const auto prof = invariants::chi_profile(cls, bs.dimD);
        ChiDto chi{cls.beta.str(), {}, prof.preimage_dims};
        for (const auto& q : prof.singular_values) chi.singular_values.push_back(q.str());
        out.chi.push_back(std::move(chi));
    }
    // A lone frequency beta is its own class with p = (1): singular value beta.
    for (const auto& f : bs.unclassed) {
        invariants::RationalClass cls;
        cls.beta = f;
        cls.p = {1};
        cls.members = {f};
        const auto prof = invariants::chi_profile(cls, bs.dimD);
        ChiDto chi{f.str(), {}, prof.preimage_dims};
        for (const auto& q : prof.singular_values) chi.singular_values.push_back(q.str());
        out.chi.push_back(std::move(chi));
    }

    const auto split = spectral::split_dims(an.desc, an.desc.tolerance());
    std::size_t kmax = 0;
    for (const auto& b : split.center_blocks) kmax = std::max(kmax, b.size);
    if (opts.kmax) kmax = std::max(kmax, *opts.kmax);
    for (const auto& level : invariants::f_dimensions(split.center_blocks, kmax, an.desc.tolerance())) {
        FLevelDto l{level.k, level.dim, {}};
        for (const auto& [lambda, mult] : level.multiplicities) l.multiplicities.push_back({lambda.str(), mult});
        out.f_sequence.push_back(std::move(l));
    }
    for (const auto& cls : bs.classes)
        if (!cls.is_exact())
            for (std::size_t i = 0; i < cls.evidence.size(); ++i)
                if (cls.evidence[i].rel_error > 1e-3 * opts.ratio_tol)
                    an.diagnostics.notes.push_back("ratio " + cls.members[i].str() + " ~ " +
                                                   std::to_string(cls.evidence[i].num) + "/" +
                                                   std::to_string(cls.evidence[i].den) + " agrees only to " +
                                                   numkit::to_string(cls.evidence[i].rel_error));
    out.diagnostics = std::move(an.diagnostics);
    return out;
}

ClassifyDto classify_report(const InputDocument& a, const InputDocument& b, const RunOptions& opts) {
    Analysis x = analyze(a, opts);
    Analysis y = analyze(b, opts);
    const auto sa = invariants::conjugacy_signature(x.desc);
    const auto sb = invariants::conjugacy_signature(y.desc);
    const auto d = invariants::decide_conjugate(sa, sb);
    ClassifyDto out;
    out.conjugate = d.conjugate;
    out.equivalent = d.conjugate;
    out.verdict = d.conjugate ? "CONJUGATE" : "NOT CONJUGATE";
    out.certificate = d.certificate;
    out.inputs = {a.name, b.name};
    out.signatures = {signature_dto(sa), signature_dto(sb)};
    out.diagnostics = {std::move(x.diagnostics), std::move(y.diagnostics)};
    return out;
}

SimulateDto simulate_report(const InputDocument& doc, const std::vector<numkit::Scalar>& x0,
                            const SimulateOptions& opts) {
    const MatrixD a = float_matrix(doc);
    if (x0.size() != a.size())
        throw UsageError("--x0 has " + std::to_string(x0.size()) + " entries but the matrix is " +
                         std::to_string(a.size()) + "x" + std::to_string(a.size()));
    if (opts.samples < 2) throw UsageError("--samples must be at least 2");
    SimulateDto out;
    out.input = doc.name;
    for (const auto& s : x0) out.x0.push_back(s.approx());
    out.horizon = opts.horizon ? *opts.horizon : doc.options.horizon.value_or(flowsim::kDefaultHorizon);
    if (!(out.horizon > 0.0) || !std::isfinite(out.horizon)) throw UsageError("--horizon must be positive");

    for (std::size_t k = 0; k < opts.samples; ++k) {
        const double t = out.horizon * static_cast<double>(k) / static_cast<double>(opts.samples - 1);
        out.orbit.push_back({t, flowsim::orbit_point(a, out.x0, t)});
    }

    flowsim::PeriodOptions po;
    po.horizon = out.horizon;
    po.grid_step = opts.grid_step;
    const auto period = flowsim::min_period(a, out.x0, po);
    switch (period.kind) {
        case flowsim::PeriodKind::period:
            out.period_kind = "period";
            out.period = period.period;
            out.period_residual = period.residual;
            break;
        case flowsim::PeriodKind::fixed_point:
            out.period_kind = "fixed_point";
            break;
        default:
            out.period_kind = "none_found";
    }

    flowsim::ProbeOptions pr;
    pr.horizon = out.horizon;
    const auto probe = flowsim::bounded_probe(a, out.x0, pr);
    out.bounded_sampling = flowsim::to_string(probe.verdict);
    out.max_norm = finite(probe.max_norm);

    const auto* q = std::get_if<MatrixQ>(&doc.payload);
    const bool exact_x0 = std::all_of(x0.begin(), x0.end(), [](const auto& s) { return s.mode() == numkit::ScalarMode::exact; });
    if (q && exact_x0) {
        std::vector<numkit::Rational> xq;
        for (const auto& s : x0) xq.push_back(std::get<numkit::Rational>(s.value));
        try {
            out.bounded_exact = flowsim::to_string(flowsim::bounded_exact(*q, xq));
        } catch (const FallbackNeeded& e) {
            out.notes.push_back(std::string("no exact boundedness verdict: ") + e.what());
        }
        if (out.bounded_exact && probe.verdict != flowsim::Boundedness::undetermined &&
            *out.bounded_exact != out.bounded_sampling)
            out.notes.push_back("sampling verdict disagrees with the exact verdict; increase --horizon");
    } else {
        out.notes.push_back("no exact boundedness verdict for floating input");
    }
    return out;
}

WitnessDto witness_report(const WitnessRequest& req) {
    flowsim::WitnessOptions wo;
    wo.n_max = req.n_max;
    wo.delta = req.delta;
    const auto w = flowsim::witness(req.op, req.m, req.beta, req.head, wo);
    WitnessDto out;
    out.op = req.op == flowsim::ReductionOp::X ? "X" : "Y";
    out.m = w.m;
    out.r = w.r();
    out.beta = w.beta;
    out.delta = cell(w.delta);
    out.n_max = req.n_max;
    out.limit_x = cells(w.limit_x);
    out.limit_y = cells(w.limit_y);
    out.max_scaled_residual = w.max_scaled_residual;
    out.decay_exponent = finite(w.decay_exponent);
    out.final_x_error = w.final_x_error;
    out.final_y_error = w.final_y_error;
    std::vector<std::size_t> picks;
    for (std::size_t scale = 1; scale <= req.n_max; scale *= 10)
        for (std::size_t f : {1u, 2u, 5u})
            if (f * scale <= req.n_max) picks.push_back(f * scale);
    if (picks.empty() || picks.back() != req.n_max) picks.push_back(req.n_max);
    for (std::size_t n : picks) {
        const auto& e = w.entries[n - 1];
        out.rows.push_back({n, e.t, cells(e.x), cells(e.y)});
    }
    return out;
}

std::vector<numkit::Scalar> parse_csv(const std::string& text, const std::string& what) {
    std::vector<numkit::Scalar> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        const std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            out.push_back(numkit::parse_scalar(tok));
        } catch (const ParseError& e) {
            throw ParseError(what + ": " + e.what());
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace flowclass::cli
