#include "flowclass/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "flowclass/errors.hpp"

namespace nlohmann {

template <typename T>
struct adl_serializer<std::optional<T>> {
    static void to_json(ordered_json& j, const std::optional<T>& v) {
        if (v)
            j = *v;
        else
            j = nullptr;
    }
    static void from_json(const ordered_json& j, std::optional<T>& v) {
        if (j.is_null())
            v.reset();
        else
            v = j.get<T>();
    }
};

}  // namespace nlohmann

namespace flowclass::cli {

using nlohmann::ordered_json;

// Field-order-preserving variant of NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE.
#define FLOWCLASS_DTO(Type, ...)                                                                  \
    void to_json(ordered_json& nlohmann_json_j, const Type& nlohmann_json_t) {                    \
        NLOHMANN_JSON_EXPAND(NLOHMANN_JSON_PASTE(NLOHMANN_JSON_TO, __VA_ARGS__))                  \
    }                                                                                             \
    void from_json(const ordered_json& nlohmann_json_j, Type& nlohmann_json_t) {                  \
        NLOHMANN_JSON_EXPAND(NLOHMANN_JSON_PASTE(NLOHMANN_JSON_FROM, __VA_ARGS__))                \
    }

FLOWCLASS_DTO(Cell, re, im)
FLOWCLASS_DTO(BlockRow, lambda, m, count)
FLOWCLASS_DTO(SignatureDto, n, dim_plus, dim_minus, center)
FLOWCLASS_DTO(EvidenceRow, member, num, den, rel_error)
FLOWCLASS_DTO(ClassDto, beta, p, members, evidence)
FLOWCLASS_DTO(BoundedDto, dim_b, dim_d, classes, unclassed)
FLOWCLASS_DTO(ChiDto, beta, singular_values, preimage_dims)
FLOWCLASS_DTO(MultRow, lambda, mult)
FLOWCLASS_DTO(FLevelDto, k, dim, multiplicities)
FLOWCLASS_DTO(Diagnostics, mode, heuristic, tol, margin, notes)
FLOWCLASS_DTO(InvariantsDto, input, descriptor, signature, bounded, chi, f_sequence, diagnostics)
FLOWCLASS_DTO(ClassifyDto, verdict, conjugate, equivalent, certificate, inputs, signatures, diagnostics)
FLOWCLASS_DTO(OrbitRow, t, x)
FLOWCLASS_DTO(SimulateDto, input, x0, orbit, period_kind, period, period_residual, horizon, bounded_sampling,
              bounded_exact, max_norm, notes)
FLOWCLASS_DTO(WitnessRow, n, t, x, y)
FLOWCLASS_DTO(WitnessDto, op, m, r, beta, delta, n_max, limit_x, limit_y, rows, max_scaled_residual,
              decay_exponent, final_x_error, final_y_error)
FLOWCLASS_DTO(Report, command, classify, invariants, simulate, witness)

#undef FLOWCLASS_DTO

namespace {

std::string number_text(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

bool is_cell(const ordered_json& v) {
    return v.is_object() && v.size() == 2 && v.contains("re") && v.contains("im") && v["re"].is_number() &&
           v["im"].is_number();
}

std::string scalar_text(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>().empty() ? "-" : v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_null()) return "-";
    if (v.is_number_float()) return number_text(v.get<double>());
    if (is_cell(v)) {
        const double re = v["re"].get<double>(), im = v["im"].get<double>();
        // Round-off imaginary parts are left to the JSON form.
        if (std::fabs(im) <= 1e-12 * std::max(1.0, std::fabs(re))) return number_text(re);
        return number_text(re) + (im < 0 ? "-" : "+") + number_text(std::fabs(im)) + "i";
    }
    return v.dump();
}

bool is_scalar(const ordered_json& v) { return v.is_primitive() || is_cell(v); }

bool is_scalar_array(const ordered_json& v) {
    return v.is_array() && std::all_of(v.begin(), v.end(), [](const ordered_json& e) { return is_scalar(e); });
}

// An array of records whose fields are scalars or scalar arrays of one common length per field.
bool is_table(const ordered_json& v) {
    if (!v.is_array() || v.empty()) return false;
    for (const auto& row : v) {
        if (!row.is_object() || is_cell(row)) return false;
        if (row.size() != v.front().size()) return false;
        for (const auto& [key, cell] : row.items()) {
            if (!v.front().contains(key)) return false;
            if (!is_scalar(cell) && !is_scalar_array(cell)) return false;
            if (cell.is_array() != v.front()[key].is_array()) return false;
            if (cell.is_array() && cell.size() != v.front()[key].size()) return false;
        }
    }
    return true;
}

void emit_table(const ordered_json& rows, int indent, std::ostringstream& out) {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> body(rows.size());
    for (const auto& [key, cell] : rows.front().items()) {
        if (cell.is_array()) {
            for (std::size_t k = 0; k < cell.size(); ++k) header.push_back(key + std::to_string(k + 1));
        } else {
            header.push_back(key);
        }
    }
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [key, cell] : rows[r].items()) {
            if (cell.is_array())
                for (const auto& e : cell) body[r].push_back(scalar_text(e));
            else
                body[r].push_back(scalar_text(cell));
        }
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : body) width[c] = std::max(width[c], row[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s(static_cast<std::size_t>(indent), ' ');
        for (std::size_t c = 0; c < cells.size(); ++c) {
            s += cells[c];
            if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 2, ' ');
        }
        out << s << '\n';
    };
    line(header);
    for (const auto& row : body) line(row);
}

void emit_node(const ordered_json& obj, int indent, std::ostringstream& out);

void emit_field(const std::string& key, const ordered_json& v, int indent, std::ostringstream& out) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_null() || (v.is_array() && v.empty())) return;
    if (is_scalar(v)) {
        out << pad << key << ": " << scalar_text(v) << '\n';
    } else if (is_scalar_array(v)) {
        out << pad << key << ": [";
        for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << scalar_text(v[k]);
        out << "]\n";
    } else if (is_table(v)) {
        out << pad << key << ":\n";
        emit_table(v, indent + 2, out);
    } else if (v.is_array()) {
        out << pad << key << ":\n";
        for (const auto& e : v) {
            out << pad << "  -\n";
            emit_node(e, indent + 4, out);
        }
    } else {
        out << pad << key << ":\n";
        emit_node(v, indent + 2, out);
    }
}

void emit_node(const ordered_json& obj, int indent, std::ostringstream& out) {
    for (const auto& [key, v] : obj.items()) emit_field(key, v, indent, out);
}

}  // namespace

ordered_json to_json_value(const Report& r) {
    ordered_json j = r;
    return j;
}

Report report_from_json(const ordered_json& j) {
    try {
        return j.get<Report>();
    } catch (const nlohmann::json::exception& e) {
        std::string msg = e.what();
        if (auto at = msg.find("] "); at != std::string::npos) msg = msg.substr(at + 2);
        throw ParseError("not a report: " + msg);
    }
}

std::string emit_json(const Report& r) { return to_json_value(r).dump(2) + "\n"; }

std::string emit_text(const Report& r) {
    std::ostringstream out;
    emit_node(to_json_value(r), 0, out);
    return out.str();
}

Report parse_report(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::string msg = e.what();
        if (auto at = msg.find("parse error"); at != std::string::npos) msg = msg.substr(at);
        throw ParseError("report: " + msg);
    }
    return report_from_json(j);
}

}  // namespace flowclass::cli
