// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_OUTPUT_TABLE_HPP
#define DSRISK_OUTPUT_TABLE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dsrisk {

enum class ColumnKind { integer, real, text };

struct Column
{
    std::string name;
    ColumnKind kind = ColumnKind::text;

    friend bool operator==(const Column&, const Column&) = default;
};

using Cell = std::variant<std::int64_t, double, std::string>;

/// Real numbers with 6 significant digits, independent of the C locale.
std::string format_real(double value);

/// Typed table with cells rendered on insertion. CSV uses a header row,
/// comma separators and LF line endings; text cells containing commas,
/// quotes or newlines are quoted.
class OutputTable
{
public:
    explicit OutputTable(std::vector<Column> columns);

    /// Throws DomainError when the cell count or a cell kind does not match.
    void add_row(std::vector<Cell> cells);

    const std::vector<Column>& columns() const noexcept { return m_columns; }
    const std::vector<std::vector<std::string>>& rows() const noexcept { return m_rows; }

    std::string to_csv() const;
    /// Array of objects, one per row; numeric columns become JSON numbers.
    std::string to_json() const;

    /// Parses CSV produced by to_csv. The header must match `columns`.
    static OutputTable parse_csv(std::string_view csv, std::vector<Column> columns);

    friend bool operator==(const OutputTable&, const OutputTable&) = default;

private:
    std::vector<Column> m_columns;
    std::vector<std::vector<std::string>> m_rows;
};

} // namespace dsrisk

#endif // DSRISK_OUTPUT_TABLE_HPP
