#include "flowclass/cli/app.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "flowclass/cli/commands.hpp"

namespace flowclass::cli {

namespace {

std::vector<double> float_values(const std::vector<numkit::Scalar>& v) {
    std::vector<double> out;
    for (const auto& s : v) out.push_back(s.approx());
    return out;
}

void print_notes(const Report& r, std::ostream& err) {
    auto dump = [&](const std::string& who, const std::vector<std::string>& notes) {
        for (const auto& n : notes) err << "note: " << who << ": " << n << '\n';
    };
    if (r.classify)
        for (std::size_t i = 0; i < r.classify->diagnostics.size(); ++i)
            dump(r.classify->inputs[i], r.classify->diagnostics[i].notes);
    for (const auto& inv : r.invariants) dump(inv.input, inv.diagnostics.notes);
    if (r.simulate) dump(r.simulate->input, r.simulate->notes);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classification of linear flows up to topological conjugacy", "flowclass"};
    app.require_subcommand(1);

    RunOptions ro;
    std::string format = "text";
    app.add_option("--tol", ro.tol, "eigenvalue clustering radius and zero-real-part threshold")
        ->check(CLI::PositiveNumber);
    app.add_option("--rank-tol", ro.rank_tol, "relative pivot threshold for Jordan counts")->check(CLI::PositiveNumber);
    app.add_option("--ratio-tol", ro.ratio_tol, "relative error for accepting a rational frequency ratio")
        ->check(CLI::PositiveNumber);
    app.add_option("--qmax", ro.qmax, "largest convergent denominator for frequency ratios")->check(CLI::PositiveNumber);
    app.add_option("--kmax", ro.kmax, "last level of the F-sequence table");
    app.add_flag("--exact", ro.exact, "fail instead of falling back to floating mode");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> pair;
    auto* classify = app.add_subcommand("classify", "decide topological conjugacy of two flows")->fallthrough();
    classify->add_option("inputs", pair, "two input documents")->required()->expected(2);
    auto* equiv = app.add_subcommand("equiv", "decide topological equivalence (same criterion as classify)")->fallthrough();
    equiv->add_option("inputs", pair, "two input documents")->required()->expected(2);

    std::string single;
    auto* inv = app.add_subcommand("invariants", "report all invariants of one flow")->fallthrough();
    inv->add_option("input", single, "input document")->required();

    std::string x0_text;
    SimulateOptions so;
    auto* sim = app.add_subcommand("simulate", "sample an orbit, its period and boundedness")->fallthrough();
    sim->add_option("input", single, "input document (matrix)")->required();
    sim->add_option("--x0", x0_text, "initial state, comma separated")->required();
    sim->add_option("--horizon", so.horizon, "time horizon")->check(CLI::PositiveNumber);
    sim->add_option("--grid-step", so.grid_step, "period search grid step")->check(CLI::PositiveNumber);
    sim->add_option("--samples", so.samples, "rows of the orbit table");

    WitnessRequest wr;
    std::optional<std::size_t> r_opt, m_opt;
    std::string op = "X";
    std::string head_text;
    auto* wit = app.add_subcommand("witness", "build an approximating sequence for a block reduction")->fallthrough();
    wit->add_option("--r", r_opt, "m = 2r + 1 (X) or m = 2r (Y)");
    wit->add_option("--m", m_opt, "block size");
    wit->add_option("--op", op, "reduction operator")->check(CLI::IsMember({"X", "Y"}));
    wit->add_option("--beta", wr.beta, "block frequency")->required();
    wit->add_option("--x", head_text, "head of the limit x, comma separated")->required();
    wit->add_option("--nmax", wr.n_max, "last sequence index");
    wit->add_option("--delta", wr.delta, "offset of the y head");

    if (!args.empty() && !args.front().starts_with("-")) {
        static const std::vector<std::string> known{"classify", "equiv", "invariants", "simulate", "witness"};
        if (std::find(known.begin(), known.end(), args.front()) == known.end()) {
            err << "error: unknown command '" << args.front() << "' (expected classify, equiv, invariants, simulate or witness)\n";
            return kExitUsage;
        }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        Report report;
        if (*classify || *equiv) {
            report.command = *classify ? "classify" : "equiv";
            report.classify = classify_report(parse_file(pair[0]), parse_file(pair[1]), ro);
        } else if (*inv) {
            report.command = "invariants";
            report.invariants.push_back(invariants_report(parse_file(single), ro));
        } else if (*sim) {
            report.command = "simulate";
            report.simulate = simulate_report(parse_file(single), parse_csv(x0_text, "--x0"), so);
        } else {
            report.command = "witness";
            wr.op = op == "X" ? flowsim::ReductionOp::X : flowsim::ReductionOp::Y;
            if (r_opt && m_opt) throw UsageError("give either --r or --m");
            if (m_opt)
                wr.m = *m_opt;
            else if (r_opt)
                wr.m = wr.op == flowsim::ReductionOp::X ? 2 * *r_opt + 1 : 2 * *r_opt;
            else
                throw UsageError("witness needs --r or --m");
            if (r_opt && *r_opt == 0) throw UsageError("--r must be at least 1");
            wr.head = float_values(parse_csv(head_text, "--x"));
            report.witness = witness_report(wr);
        }
        out << (format == "json" ? emit_json(report) : emit_text(report));
        print_notes(report, err);
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace flowclass::cli
