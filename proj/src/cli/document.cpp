#include "flowclass/cli/document.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "flowclass/errors.hpp"

namespace flowclass::cli {

using nlohmann::json;
using numkit::MatrixD;
using numkit::MatrixQ;
using numkit::Rational;
using numkit::Scalar;
using numkit::ScalarMode;
using numkit::Surd;

namespace {

// A literal with the field it came from.
struct Token {
    std::string text;
    std::string field;
};

std::string token_text(const json& v, const std::string& field) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer() || v.is_number_unsigned() || v.is_number_float()) return v.dump();
    throw ParseError(field + ": expected a number or a string, got " + std::string(v.type_name()));
}

bool is_surd_text(const std::string& s) { return s.find("sqrt(") != std::string::npos; }

// Rational-only, float-only, or either (plain integers and surds count as rational).
enum class Kind { either, rational, floating };

Kind kind_of(const std::string& text, const std::string& field) {
    if (is_surd_text(text)) return Kind::rational;
    const Scalar s = [&] {
        try {
            return numkit::parse_scalar(text);
        } catch (const ParseError& e) {
            throw ParseError(field + ": " + e.what());
        }
    }();
    if (s.is_integer_literal()) return Kind::either;
    return s.mode() == ScalarMode::exact ? Kind::rational : Kind::floating;
}

ScalarMode resolve_mode(const std::vector<Token>& tokens, const std::optional<std::string>& declared) {
    Kind mode = Kind::either;
    if (declared) {
        if (*declared == "rational")
            mode = Kind::rational;
        else if (*declared == "float")
            mode = Kind::floating;
        else
            throw ParseError("scalar: expected \"rational\" or \"float\", got \"" + *declared + "\"");
    }
    for (const auto& t : tokens) {
        const Kind k = kind_of(t.text, t.field);
        if (k == Kind::either) continue;
        if (mode == Kind::either) {
            mode = k;
        } else if (k != mode) {
            throw ParseError(t.field + ": literal '" + t.text + "' is " + (k == Kind::rational ? "rational" : "float") +
                             " but the document is " + (mode == Kind::rational ? "rational" : "float") +
                             (declared ? "" : " (set by an earlier literal)"));
        }
    }
    return mode == Kind::floating ? ScalarMode::floating : ScalarMode::exact;
}

Surd parse_surd(const std::string& raw, const std::string& field) {
    std::string s;
    for (char c : raw)
        if (c != ' ') s += c;
    const auto at = s.find("sqrt(");
    if (at == std::string::npos) return Surd(numkit::parse_rational(s));
    if (s.back() != ')') throw ParseError(field + ": bad surd literal '" + raw + "'");
    Rational coeff(1);
    std::string head = s.substr(0, at);
    if (head == "-") {
        coeff = -1;
    } else if (head == "+" || head.empty()) {
    } else {
        if (head.back() != '*') throw ParseError(field + ": bad surd literal '" + raw + "'");
        head.pop_back();
        bool neg = false;
        if (!head.empty() && head.front() == '-' && head.size() > 1 && head[1] == '(') {
            neg = true;
            head.erase(0, 1);
        }
        if (head.size() >= 2 && head.front() == '(' && head.back() == ')') head = head.substr(1, head.size() - 2);
        try {
            coeff = numkit::parse_rational(head);
        } catch (const ParseError&) {
            throw ParseError(field + ": bad surd coefficient in '" + raw + "'");
        }
        if (neg) coeff = -coeff;
    }
    const std::string inner = s.substr(at + 5, s.size() - at - 6);
    Rational d;
    try {
        d = numkit::parse_rational(inner);
    } catch (const ParseError&) {
        throw ParseError(field + ": bad radicand in '" + raw + "'");
    }
    if (d < 0) throw ParseError(field + ": negative radicand in '" + raw + "'");
    Surd root = Surd::sqrt_of(d);
    root.coeff *= coeff;
    if (root.coeff.is_zero()) root.radicand = 1;
    return root;
}

double parse_float(const std::string& text, const std::string& field) {
    try {
        return numkit::parse_scalar(text).approx();
    } catch (const ParseError& e) {
        throw ParseError(field + ": " + e.what());
    }
}

std::size_t parse_count(const json& v, const std::string& field) {
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw ParseError(field + ": expected a positive integer, got " + v.dump());
    const auto k = v.get<long long>();
    if (k < 1) throw ParseError(field + ": expected a positive integer, got " + v.dump());
    return static_cast<std::size_t>(k);
}

std::optional<std::string> string_field(const json& doc, const char* key) {
    if (!doc.contains(key)) return std::nullopt;
    if (!doc[key].is_string()) throw ParseError(std::string(key) + ": expected a string");
    return doc[key].get<std::string>();
}

DocOptions parse_options(const json& doc) {
    DocOptions o;
    if (!doc.contains("options")) return o;
    const json& opt = doc["options"];
    if (!opt.is_object()) throw ParseError("options: expected an object");
    for (const auto& [key, v] : opt.items()) {
        const std::string field = "options." + key;
        if (key == "tol" || key == "horizon") {
            if (!v.is_number()) throw ParseError(field + ": expected a number");
            const double x = v.get<double>();
            if (!(x > 0.0)) throw ParseError(field + ": must be positive");
            (key == "tol" ? o.tol : o.horizon) = x;
        } else if (key == "qmax") {
            o.qmax = static_cast<int>(parse_count(v, field));
        } else {
            throw ParseError(field + ": unknown option");
        }
    }
    return o;
}

void parse_matrix(const json& doc, const std::optional<std::string>& scalar, InputDocument& out) {
    const json& rows = doc["matrix"];
    if (!rows.is_array() || rows.empty()) throw ParseError("matrix: expected a non-empty array of rows");
    const std::size_t n = rows.size();
    std::vector<Token> tokens;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string rf = "matrix[" + std::to_string(i) + "]";
        if (!rows[i].is_array()) throw ParseError(rf + ": expected an array");
        if (rows[i].size() != n)
            throw ParseError(rf + ": row has " + std::to_string(rows[i].size()) + " entries but the matrix has " +
                             std::to_string(n) + " rows");
        for (std::size_t j = 0; j < n; ++j) {
            const std::string f = rf + "[" + std::to_string(j) + "]";
            tokens.push_back({token_text(rows[i][j], f), f});
            if (is_surd_text(tokens.back().text)) throw ParseError(f + ": matrix entries must be rational or float");
        }
    }
    out.scalar = resolve_mode(tokens, scalar);
    if (out.scalar == ScalarMode::exact) {
        MatrixQ m(n);
        for (std::size_t k = 0; k < tokens.size(); ++k)
            m(k / n, k % n) = numkit::parse_rational(tokens[k].text);
        out.payload = std::move(m);
    } else {
        MatrixD m(n);
        for (std::size_t k = 0; k < tokens.size(); ++k) m(k / n, k % n) = parse_float(tokens[k].text, tokens[k].field);
        out.payload = std::move(m);
    }
}

void parse_spectrum(const json& doc, const std::optional<std::string>& scalar, InputDocument& out) {
    if (!doc.contains("n")) throw ParseError("n: spectrum documents need the dimension n");
    const std::size_t n = parse_count(doc["n"], "n");
    const json& blocks = doc["blocks"];
    if (!blocks.is_array() || blocks.empty()) throw ParseError("blocks: expected a non-empty array");
    bool real = true;
    if (doc.contains("real")) {
        if (!doc["real"].is_boolean()) throw ParseError("real: expected true or false");
        real = doc["real"].get<bool>();
    }

    struct Raw {
        Token re, im;
        std::size_t m, count;
    };
    std::vector<Raw> raws;
    std::vector<Token> tokens;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const std::string bf = "blocks[" + std::to_string(k) + "]";
        const json& b = blocks[k];
        if (!b.is_object()) throw ParseError(bf + ": expected an object");
        for (const auto& [key, v] : b.items())
            if (key != "re" && key != "im" && key != "m" && key != "count") throw ParseError(bf + "." + key + ": unknown field");
        Raw r{{"0", bf + ".re"}, {"0", bf + ".im"}, 1, 1};
        if (b.contains("re")) r.re.text = token_text(b["re"], r.re.field);
        if (b.contains("im")) r.im.text = token_text(b["im"], r.im.field);
        if (b.contains("m")) r.m = parse_count(b["m"], bf + ".m");
        if (b.contains("count")) r.count = parse_count(b["count"], bf + ".count");
        tokens.push_back(r.re);
        tokens.push_back(r.im);
        raws.push_back(std::move(r));
    }
    out.scalar = resolve_mode(tokens, scalar);

    std::vector<spectral::JordanBlocks> list;
    for (const auto& r : raws) {
        spectral::Eigenvalue lambda;
        if (out.scalar == ScalarMode::exact) {
            const Surd re = parse_surd(r.re.text, r.re.field);
            const Surd im = parse_surd(r.im.text, r.im.field);
            if (!im.is_zero()) {
                if (!re.is_rational()) throw ParseError(r.re.field + ": real part must be rational when im is nonzero");
                lambda = spectral::ExactEigenvalue{re.coeff, im, true};
            } else if (re.is_rational()) {
                lambda = spectral::ExactEigenvalue::rational(re.coeff);
            } else {
                lambda = spectral::ExactEigenvalue{Rational(0), re, false};
            }
        } else {
            lambda = numkit::ComplexD(parse_float(r.re.text, r.re.field), parse_float(r.im.text, r.im.field));
        }
        list.push_back({lambda, r.m, r.count});
    }
    const double tol = out.options.tol.value_or(spectral::kDescriptorTol);
    try {
        out.payload = spectral::SpectrumDescriptor(n, std::move(list), real, tol);
    } catch (const UsageError& e) {
        throw ParseError(std::string("blocks: ") + e.what());
    }
}

}  // namespace

std::size_t InputDocument::dimension() const {
    return std::visit(
        [](const auto& p) {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, spectral::SpectrumDescriptor>)
                return p.dimension();
            else
                return p.size();
        },
        payload);
}

InputDocument parse_input(std::istream& in, const std::string& name) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        if (auto at = msg.find("parse error"); at != std::string::npos) msg = msg.substr(at);
        throw ParseError(name + ": " + msg);
    }
    try {
        if (!doc.is_object()) throw ParseError("document must be a JSON object");
        for (const auto& [key, v] : doc.items())
            if (key != "mode" && key != "scalar" && key != "matrix" && key != "n" && key != "blocks" &&
                key != "real" && key != "options")
                throw ParseError(key + ": unknown field");
        InputDocument out;
        out.name = name;
        out.options = parse_options(doc);
        const auto scalar = string_field(doc, "scalar");
        auto mode = string_field(doc, "mode");
        if (!mode) {
            if (doc.contains("matrix") == doc.contains("blocks"))
                throw ParseError("mode: a document has either a \"matrix\" or a \"blocks\" field");
            mode = doc.contains("matrix") ? "matrix" : "spectrum";
        }
        if (*mode == "matrix") {
            if (!doc.contains("matrix")) throw ParseError("matrix: missing");
            out.mode = DocMode::matrix;
            parse_matrix(doc, scalar, out);
        } else if (*mode == "spectrum") {
            if (!doc.contains("blocks")) throw ParseError("blocks: missing");
            out.mode = DocMode::spectrum;
            parse_spectrum(doc, scalar, out);
        } else {
            throw ParseError("mode: expected \"matrix\" or \"spectrum\", got \"" + *mode + "\"");
        }
        return out;
    } catch (const ParseError& e) {
        throw ParseError(name + ": " + e.what());
    }
}

InputDocument parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return parse_input(in, path);
}

}  // namespace flowclass::cli
