#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace blend::cli {

std::string format_double(double v, int digits) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

namespace {

void emit(const nlohmann::json& j, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (j.type()) {
    case nlohmann::json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += inner + nlohmann::json(it.key()).dump() + ": ";
            emit(it.value(), out, depth + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    case nlohmann::json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) {
                out += ",\n";
            }
            out += inner;
            emit(j[i], out, depth + 1);
        }
        out += "\n" + pad + "]";
        return;
    }
    case nlohmann::json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? format_double(v, 17) : "null";
        return;
    }
    default:
        out += j.dump();
        return;
    }
}

nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c;
        if (c == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

std::string csv_field(const nlohmann::json& j) {
    if (j.is_number_float()) {
        return format_double(j.get<double>(), 17);
    }
    if (j.is_string()) {
        return csv_escape(j.get<std::string>());
    }
    return csv_escape(j.dump());
}

} // namespace

std::string canonical_json(const nlohmann::json& doc) {
    std::string out;
    emit(doc, out, 0);
    out += "\n";
    return out;
}

nlohmann::json to_json_document(const OutputRecord& record) {
    nlohmann::json doc;
    doc["command"] = record.command;
    doc["config"] = record.config;
    doc["exit_code"] = record.exit_code;
    doc["notes"] = record.notes;
    doc["sections"] = nlohmann::json::array();
    for (const auto& s : record.sections) {
        nlohmann::json js;
        js["title"] = s.title;
        js["fields"] = s.fields;
        js["notes"] = s.notes;
        js["trace"] = nlohmann::json::array();
        for (const auto& row : s.trace) {
            nlohmann::json jr;
            jr["N"] = row.order;
            jr["delta"] = row.delta;
            if (row.published) {
                jr["published"] = optional_number(row.published);
            }
            if (row.match) {
                jr["match"] = *row.match;
            }
            js["trace"].push_back(jr);
        }
        doc["sections"].push_back(js);
    }
    return doc;
}

std::string to_json(const OutputRecord& record) {
    return canonical_json(to_json_document(record));
}

std::string to_csv(const OutputRecord& record) {
    std::ostringstream out;
    bool any_trace = false;
    for (const auto& s : record.sections) {
        any_trace = any_trace || !s.trace.empty();
    }
    if (any_trace) {
        out << "section,N,delta,published,match\n";
        for (const auto& s : record.sections) {
            for (const auto& row : s.trace) {
                out << csv_escape(s.title) << ',' << row.order << ',' << format_double(row.delta, 17) << ','
                    << (row.published ? format_double(*row.published, 17) : "") << ','
                    << (row.match ? (*row.match ? "true" : "false") : "") << '\n';
            }
        }
    } else {
        out << "section,key,value\n";
        for (const auto& s : record.sections) {
            for (auto it = s.fields.begin(); it != s.fields.end(); ++it) {
                out << csv_escape(s.title) << ',' << it.key() << ',' << csv_field(it.value()) << '\n';
            }
        }
    }
    return out.str();
}

std::string to_table(const OutputRecord& record) {
    std::ostringstream out;
    out << "# " << record.command << '\n';
    for (const auto& s : record.sections) {
        out << '\n' << "== " << s.title << '\n';
        if (!s.trace.empty()) {
            const bool with_published = s.trace.front().published.has_value();
            out << "N    Delta(N,h)";
            if (with_published) {
                out << "           published            match";
            }
            out << '\n';
            for (const auto& row : s.trace) {
                char line[160];
                std::snprintf(line, sizeof line, "%-4d %-20s", row.order, format_double(row.delta, 15).c_str());
                out << line;
                if (with_published) {
                    std::snprintf(line, sizeof line, " %-20s %s",
                                  row.published ? format_double(*row.published, 16).c_str() : "-",
                                  row.match ? (*row.match ? "yes" : "NO") : "-");
                    out << line;
                }
                out << '\n';
            }
        }
        for (auto it = s.fields.begin(); it != s.fields.end(); ++it) {
            char line[200];
            const auto& v = it.value();
            std::string text = v.is_number_float() ? format_double(v.get<double>(), 15)
                               : v.is_string()     ? v.get<std::string>()
                                                   : v.dump();
            std::snprintf(line, sizeof line, "%-24s %s", it.key().c_str(), text.c_str());
            out << line << '\n';
        }
        for (const auto& n : s.notes) {
            out << "note: " << n << '\n';
        }
    }
    for (const auto& n : record.notes) {
        out << "note: " << n << '\n';
    }
    return out.str();
}

std::string render(const OutputRecord& record, Format format) {
    switch (format) {
    case Format::csv: return to_csv(record);
    case Format::json: return to_json(record);
    case Format::table:
    default: return to_table(record);
    }
}

} // namespace blend::cli
