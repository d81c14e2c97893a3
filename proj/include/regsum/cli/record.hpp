#pragma once

// The result document every CLI command produces, with JSON, CSV and text
// renderings. JSON parses back to an identical record.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "regsum/error.hpp"

namespace regsum::cli {

using Cell = std::variant<std::string, std::int64_t, bool>;

/// One summation method's outcome. `status` is "ok" or an error code name.
struct MethodResult {
    std::string method;
    std::string status = "ok";
    std::optional<double> value;
    std::optional<double> error_estimate;
    std::optional<std::string> exact;
    std::optional<std::string> message;

    bool operator==(const MethodResult&) const = default;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    bool operator==(const Table&) const = default;
};

struct OutputRecord {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::optional<std::string> exact;
    std::vector<MethodResult> results;
    std::vector<std::pair<std::string, Cell>> facts;
    std::optional<Table> table;

    bool operator==(const OutputRecord&) const = default;

    const Cell* fact(std::string_view key) const {
        for (const auto& [k, v] : facts)
            if (k == key) return &v;
        return nullptr;
    }
};

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string cell_text(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return std::get<bool>(c) ? "true" : "false";
}

namespace detail {

using json = nlohmann::ordered_json;

inline json cell_json(const Cell& c) {
    return std::visit([](const auto& v) { return json(v); }, c);
}

inline Cell json_cell(const json& j) {
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_string()) return j.get<std::string>();
    throw error(errc::invalid_argument, "unsupported cell value " + j.dump());
}

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_field(fields[i]);
    }
    os << "\r\n";
}

} // namespace detail

inline std::string render_json(const OutputRecord& r) {
    using detail::json;
    json doc;
    doc["command"] = r.command;
    json inputs = json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    doc["inputs"] = std::move(inputs);
    doc["exact"] = detail::opt(r.exact);
    json results = json::array();
    for (const auto& m : r.results) {
        json e;
        e["method"] = m.method;
        e["status"] = m.status;
        e["value"] = detail::opt(m.value);
        e["error_estimate"] = detail::opt(m.error_estimate);
        e["exact"] = detail::opt(m.exact);
        e["message"] = detail::opt(m.message);
        results.push_back(std::move(e));
    }
    doc["results"] = std::move(results);
    json facts = json::object();
    for (const auto& [k, v] : r.facts) facts[k] = detail::cell_json(v);
    doc["facts"] = std::move(facts);
    if (r.table) {
        json rows = json::array();
        for (const auto& row : r.table->rows) {
            json jr = json::array();
            for (const auto& c : row) jr.push_back(detail::cell_json(c));
            rows.push_back(std::move(jr));
        }
        doc["table"] = {{"columns", r.table->columns}, {"rows", std::move(rows)}};
    }
    return doc.dump(2) + "\n";
}

inline OutputRecord parse_json(std::string_view text) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw error(errc::invalid_argument, std::string("malformed JSON: ") + e.what());
    }
    try {
        OutputRecord r;
        r.command = doc.at("command").get<std::string>();
        for (const auto& [k, v] : doc.at("inputs").items()) r.inputs.emplace_back(k, v.get<std::string>());
        r.exact = detail::get_opt<std::string>(doc, "exact");
        for (const auto& e : doc.at("results")) {
            MethodResult m;
            m.method = e.at("method").get<std::string>();
            m.status = e.at("status").get<std::string>();
            m.value = detail::get_opt<double>(e, "value");
            m.error_estimate = detail::get_opt<double>(e, "error_estimate");
            m.exact = detail::get_opt<std::string>(e, "exact");
            m.message = detail::get_opt<std::string>(e, "message");
            r.results.push_back(std::move(m));
        }
        for (const auto& [k, v] : doc.at("facts").items()) r.facts.emplace_back(k, detail::json_cell(v));
        if (doc.contains("table")) {
            Table t;
            t.columns = doc["table"].at("columns").get<std::vector<std::string>>();
            for (const auto& jr : doc["table"].at("rows")) {
                std::vector<Cell> row;
                for (const auto& c : jr) row.push_back(detail::json_cell(c));
                t.rows.push_back(std::move(row));
            }
            r.table = std::move(t);
        }
        return r;
    } catch (const json::exception& e) {
        throw error(errc::invalid_argument, std::string("not an output record: ") + e.what());
    }
}

/// RFC-4180 CSV. A record with a table renders as that table; any other
/// record as rows of section,key,value,method,status,error_estimate,exact,message.
inline std::string render_csv(const OutputRecord& r) {
    std::ostringstream os;
    if (r.table) {
        detail::csv_row(os, r.table->columns);
        for (const auto& row : r.table->rows) {
            std::vector<std::string> fields;
            for (const auto& c : row) fields.push_back(cell_text(c));
            detail::csv_row(os, fields);
        }
        return os.str();
    }
    auto row = [&](std::string section, std::string key, std::string value, std::string method = {},
                   std::string status = {}, std::string err = {}, std::string exact = {}, std::string message = {}) {
        detail::csv_row(os, {std::move(section), std::move(key), std::move(value), std::move(method), std::move(status),
                             std::move(err), std::move(exact), std::move(message)});
    };
    row("section", "key", "value", "method", "status", "error_estimate", "exact", "message");
    row("command", "", r.command);
    for (const auto& [k, v] : r.inputs) row("input", k, v);
    if (r.exact) row("exact", "", *r.exact);
    for (const auto& [k, v] : r.facts) row("fact", k, cell_text(v));
    for (std::size_t i = 0; i < r.results.size(); ++i) {
        const auto& m = r.results[i];
        row("result", std::to_string(i), m.value ? format_double(*m.value) : "", m.method, m.status,
            m.error_estimate ? format_double(*m.error_estimate) : "", m.exact.value_or(""), m.message.value_or(""));
    }
    return os.str();
}

inline std::string render_text(const OutputRecord& r) {
    std::ostringstream os;
    os << r.command;
    for (const auto& [k, v] : r.inputs) os << "  " << k << "=" << v;
    os << "\n";
    if (r.exact) os << "exact: " << *r.exact << "\n";
    for (const auto& [k, v] : r.facts) os << k << ": " << cell_text(v) << "\n";
    for (const auto& m : r.results) {
        os << m.method << ": " << m.status;
        if (m.value) os << "  value=" << format_double(*m.value);
        if (m.error_estimate) os << "  +/- " << format_double(*m.error_estimate);
        if (m.exact) os << "  exact=" << *m.exact;
        if (m.message) os << "  (" << *m.message << ")";
        os << "\n";
    }
    if (r.table) {
        std::vector<std::size_t> width;
        for (const auto& c : r.table->columns) width.push_back(c.size());
        for (const auto& row : r.table->rows)
            for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], cell_text(row[i]).size());
        auto line = [&](const std::vector<std::string>& cells) {
            std::string s;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) s += "  ";
                s += cells[i] + std::string(width[i] - cells[i].size(), ' ');
            }
            while (!s.empty() && s.back() == ' ') s.pop_back();
            os << s << "\n";
        };
        line(r.table->columns);
        for (const auto& row : r.table->rows) {
            std::vector<std::string> cells;
            for (const auto& c : row) cells.push_back(cell_text(c));
            line(cells);
        }
    }
    return os.str();
}

} // namespace regsum::cli
