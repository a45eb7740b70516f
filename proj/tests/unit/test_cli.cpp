#include <doctest.h>

#include <sstream>

#include "flowclass/cli/app.hpp"
#include "flowclass/cli/commands.hpp"
#include "flowclass/cli/document.hpp"
#include "flowclass/cli/report.hpp"

using namespace flowclass;
using namespace flowclass::cli;

namespace {

InputDocument parse(const std::string& text) {
    std::istringstream in(text);
    return parse_input(in, "doc");
}

std::string parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("literal inference") {
    auto d = parse(R"j({"matrix": [[0, "1/2"], [-1, 0]]})j");
    CHECK(d.mode == DocMode::matrix);
    CHECK(d.scalar == numkit::ScalarMode::exact);
    CHECK(std::get<numkit::MatrixQ>(d.payload)(0, 1) == numkit::make_rational(1, 2));

    d = parse(R"j({"matrix": [[0, 1.5], [-1, 0]]})j");
    CHECK(d.scalar == numkit::ScalarMode::floating);
    CHECK(std::get<numkit::MatrixD>(d.payload)(0, 1) == 1.5);

    // Integers fit either kind.
    d = parse(R"j({"matrix": [[2, 1e-3], [0, 1]]})j");
    CHECK(d.scalar == numkit::ScalarMode::floating);

    d = parse(R"j({"n": 2, "blocks": [{"im": "sqrt(2)"}, {"im": "-sqrt(2)"}]})j");
    CHECK(d.mode == DocMode::spectrum);
    CHECK(d.dimension() == 2);
    CHECK(std::get<spectral::SpectrumDescriptor>(d.payload).is_exact());

    d = parse(R"j({"matrix": [[1]], "options": {"tol": 1e-6, "qmax": 10}})j");
    CHECK(d.options.tol == 1e-6);
    CHECK(d.options.qmax == 10);
}

TEST_CASE("document errors name the field") {
    CHECK(parse_error(R"j({"matrix": [["1/2", 0.5], [0, 1]]})j").find("matrix[0][1]") != std::string::npos);
    CHECK(parse_error(R"j({"matrix": [[1, 2], [3]]})j") != "");
    CHECK(parse_error(R"j({"matrix": [[1]], "colour": 1})j").find("colour") != std::string::npos);
    CHECK(parse_error(R"j({"matrix": [[1, 2], )j").find("doc") == 0);
    CHECK(parse_error(R"j({"n": 3, "blocks": [{"re": 1}]})j") != "");
    CHECK(parse_error(R"j({"matrix": [[1]], "scalar": "rational", "mode": "spectrum"})j") != "");
}

TEST_CASE("classify and equiv share a verdict") {
    const auto a = parse(R"j({"matrix": [[0, 1], [-1, 0]]})j");
    const auto b = parse(R"j({"matrix": [[0, 2], [-2, 0]]})j");
    const auto c = parse(R"j({"matrix": [[1, 4], [-1, 1]]})j");
    const auto diff = classify_report(a, b, {});
    CHECK(diff.verdict == "NOT CONJUGATE");
    CHECK_FALSE(diff.conjugate);
    CHECK(diff.conjugate == diff.equivalent);
    CHECK(diff.certificate == "center eigenvalue i vs 2i");
    CHECK(classify_report(a, a, {}).conjugate);
    CHECK_FALSE(classify_report(a, c, {}).conjugate);
}

TEST_CASE("report round trip") {
    Report r;
    r.command = "invariants";
    r.invariants.push_back(invariants_report(parse(R"j({"matrix": [[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]]})j"), {}));
    CHECK(parse_report(emit_json(r)) == r);
    const std::string text = emit_text(r);
    CHECK(text.find("beta  p1  p2") != std::string::npos);
    CHECK(text.find("simulate") == std::string::npos);

    WitnessRequest wr;
    wr.head = {1.0, 1.0};
    wr.n_max = 30;
    Report w;
    w.command = "witness";
    w.witness = witness_report(wr);
    CHECK(parse_report(emit_json(w)) == w);

    CHECK_THROWS_AS(parse_report("{\"command\": 3}"), ParseError);
    CHECK_THROWS_AS(parse_report("[1, 2"), ParseError);
}

TEST_CASE("exit codes") {
    std::ostringstream out, err;
    CHECK(run({"witness", "--r", "1", "--beta", "1", "--x", "1,1", "--nmax", "5"}, out, err) == kExitOk);
    CHECK(run({"witness", "--r", "1", "--m", "3", "--beta", "1", "--x", "1,1"}, out, err) == kExitUsage);
    CHECK(run({}, out, err) == kExitUsage);
    CHECK(run({"frobnicate"}, out, err) == kExitUsage);
    CHECK(run({"--help"}, out, err) == kExitOk);
}
