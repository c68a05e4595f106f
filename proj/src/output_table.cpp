// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrisk/output_table.hpp>

#include <dsrisk/error.hpp>

#include <json.hpp>

#include <charconv>
#include <cmath>

namespace dsrisk {

namespace {

bool needs_quotes(std::string_view s)
{
    return s.find_first_of(",\"\n\r") != std::string_view::npos;
}

std::string quote(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void append_line(std::string& out, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += needs_quotes(fields[i]) ? quote(fields[i]) : fields[i];
    }
    out += '\n';
}

std::vector<std::vector<std::string>> split_csv(std::string_view csv)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool pending = false;
    for (std::size_t i = 0; i < csv.size(); ++i) {
        const char c = csv[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < csv.size() && csv[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        pending = true;
        if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            record.push_back(std::move(field));
            field.clear();
            records.push_back(std::move(record));
            record.clear();
            pending = false;
        } else {
            field += c;
        }
    }
    if (in_quotes) throw MalformedInputError("unterminated quoted CSV field");
    if (pending) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

void check_cell(const std::string& text, ColumnKind kind)
{
    if (kind == ColumnKind::text) return;
    if (kind == ColumnKind::integer) {
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw MalformedInputError("'" + text + "' is not an integer");
        }
        return;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw MalformedInputError("'" + text + "' is not a number");
    }
}

} // namespace

std::string format_real(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 6);
    return std::string(buf, ptr);
}

OutputTable::OutputTable(std::vector<Column> columns) : m_columns(std::move(columns)) {}

void OutputTable::add_row(std::vector<Cell> cells)
{
    if (cells.size() != m_columns.size()) {
        throw DomainError("row has " + std::to_string(cells.size()) + " cells, table has "
                          + std::to_string(m_columns.size()) + " columns");
    }
    std::vector<std::string> rendered;
    rendered.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const ColumnKind kind = m_columns[i].kind;
        if (const auto* iv = std::get_if<std::int64_t>(&cells[i]); iv && kind == ColumnKind::integer) {
            rendered.push_back(std::to_string(*iv));
        } else if (const auto* dv = std::get_if<double>(&cells[i]); dv && kind == ColumnKind::real) {
            rendered.push_back(format_real(*dv));
        } else if (const auto* sv = std::get_if<std::string>(&cells[i]); sv && kind == ColumnKind::text) {
            rendered.push_back(*sv);
        } else {
            throw DomainError("cell kind does not match column '" + m_columns[i].name + "'");
        }
    }
    m_rows.push_back(std::move(rendered));
}

std::string OutputTable::to_csv() const
{
    std::string out;
    std::vector<std::string> header;
    for (const auto& c : m_columns) header.push_back(c.name);
    append_line(out, header);
    for (const auto& row : m_rows) append_line(out, row);
    return out;
}

std::string OutputTable::to_json() const
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : m_rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& name = m_columns[i].name;
            switch (m_columns[i].kind) {
            case ColumnKind::integer: obj[name] = std::stoll(row[i]); break;
            case ColumnKind::real: {
                double v = 0.0;
                std::from_chars(row[i].data(), row[i].data() + row[i].size(), v);
                if (std::isfinite(v)) obj[name] = v; else obj[name] = nullptr;
                break;
            }
            case ColumnKind::text: obj[name] = row[i]; break;
            }
        }
        rows.push_back(std::move(obj));
    }
    return rows.dump() + "\n";
}

OutputTable OutputTable::parse_csv(std::string_view csv, std::vector<Column> columns)
{
    auto records = split_csv(csv);
    if (records.empty()) throw MalformedInputError("CSV has no header row");
    const auto& header = records.front();
    if (header.size() != columns.size()) throw MalformedInputError("CSV header width does not match");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != columns[i].name) throw MalformedInputError("unexpected CSV column '" + header[i] + "'");
    }
    OutputTable table(std::move(columns));
    for (std::size_t r = 1; r < records.size(); ++r) {
        auto& record = records[r];
        if (record.size() != table.m_columns.size()) {
            throw MalformedInputError("CSV row " + std::to_string(r) + " has the wrong number of fields");
        }
        for (std::size_t i = 0; i < record.size(); ++i) check_cell(record[i], table.m_columns[i].kind);
        table.m_rows.push_back(std::move(record));
    }
    return table;
}

} // namespace dsrisk
