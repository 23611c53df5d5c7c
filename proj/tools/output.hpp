#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace blend::cli {

struct TraceRow {
    int order = 0;
    double delta = 0.0;
    std::optional<double> published;  // printed reference value, when the section has one
    std::optional<bool> match;
};

struct Section {
    std::string title;
    std::vector<TraceRow> trace;
    nlohmann::json fields = nlohmann::json::object();
    std::vector<std::string> notes;
};

struct OutputRecord {
    std::string command;  // echo of the invocation
    nlohmann::json config = nlohmann::json::object();
    std::vector<Section> sections;
    std::vector<std::string> notes;
    int exit_code = 0;
};

enum class Format { table, csv, json };

// Canonical JSON: sorted keys, floats at 17 significant digits, two-space
// indent, trailing newline. Re-emitting a parsed document is byte-identical.
std::string to_json(const OutputRecord& record);
std::string canonical_json(const nlohmann::json& doc);
nlohmann::json to_json_document(const OutputRecord& record);

// One row per trace entry (section,N,delta,published,match); records without a
// trace fall back to section,key,value rows.
std::string to_csv(const OutputRecord& record);

// Human-readable, 15 significant digits.
std::string to_table(const OutputRecord& record);

std::string render(const OutputRecord& record, Format format);

std::string format_double(double v, int digits);

} // namespace blend::cli
