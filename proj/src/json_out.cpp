#include "betaflow/json_out.hpp"

#include <cmath>
#include <cstdio>

#include "betaflow/csv.hpp"

namespace betaflow {

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

void dump_value(std::string& out, const ordered_json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) *
                              static_cast<std::size_t>(depth + 1),
                          ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) *
                                    static_cast<std::size_t>(depth),
                                ' ');
    switch (j.type()) {
        case ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                append_escaped(out, it.key());
                out += ": ";
                dump_value(out, it.value(), indent, depth + 1);
            }
            out += '\n';
            out += close_pad;
            out += '}';
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                dump_value(out, item, indent, depth + 1);
            }
            out += '\n';
            out += close_pad;
            out += ']';
            return;
        }
        case ordered_json::value_t::string:
            append_escaped(out, j.get<std::string>());
            return;
        case ordered_json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            return;
        case ordered_json::value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            return;
        case ordered_json::value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            return;
        case ordered_json::value_t::number_float: {
            const double v = j.get<double>();
            if (std::isnan(v)) {
                out += "\"nan\"";
            } else if (std::isinf(v)) {
                out += v > 0 ? "\"inf\"" : "\"-inf\"";
            } else {
                out += format_g17(v);
            }
            return;
        }
        default:
            out += "null";
    }
}

}  // namespace

std::string dump_json17(const ordered_json& j, int indent) {
    std::string out;
    dump_value(out, j, indent, 0);
    out += '\n';
    return out;
}

ordered_json report_to_json(const TestReport& report) {
    ordered_json j;
    j["name"] = report.name;
    j["statistic"] = report.statistic;
    if (report.p_value) j["p_value"] = *report.p_value;
    j["threshold"] = report.threshold;
    j["n"] = report.n;
    j["seed"] = report.seed;
    j["pass"] = report.pass;
    return j;
}

ordered_json report_array_to_json(const std::string& label,
                                  const std::vector<TestReport>& reports) {
    ordered_json j;
    j["schema"] = 1;
    j["scenario"] = label;
    ordered_json arr = ordered_json::array();
    int passed = 0;
    for (const auto& rep : reports) {
        arr.push_back(report_to_json(rep));
        if (rep.pass) ++passed;
    }
    j["reports"] = std::move(arr);
    j["passed"] = passed;
    j["total"] = static_cast<int>(reports.size());
    j["pass"] = passed == static_cast<int>(reports.size());
    return j;
}

}  // namespace betaflow
