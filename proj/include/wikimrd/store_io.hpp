#pragma once

// Canonical serialization of a Store.
//
// Export renumbers every table by natural key (titles, codes, names, then
// numeric fields) so the bytes depend only on store content, never on the
// order rows were inserted in. Two formats:
//
//   tsv-bundle  one `<table>.tsv` per table: header row, LF endings, tab
//               separated, `\t` `\n` `\r` `\\` escaped, `\N` for NULL
//   sql-dump    CREATE TABLE + INSERT statements in canonical row order

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wikimrd/mrd_store.hpp"

namespace wikimrd {

enum class ExportFormat { tsv_bundle, sql_dump };

ExportFormat parse_export_format(std::string_view text);

/// Malformed import input, with the location of the first problem.
class ImportError : public std::runtime_error {
public:
    ImportError(std::string source, std::size_t line, std::size_t column, const std::string& what);

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string source_;
    std::size_t line_;
    std::size_t column_;
};

/// (file name, contents) pairs in table order.
using TsvBundle = std::vector<std::pair<std::string, std::string>>;

/// Table names in dependency order.
const std::vector<std::string>& table_names();

/// Tables renumbered and sorted by natural key.
Tables canonicalize(const Tables& tables);

TsvBundle export_tsv_bundle(const Store& store);
std::string export_sql_dump(const Store& store);

/// Imports reject dangling references and id gaps unless `validate` is
/// false (verify wants to see such stores rather than refuse them).
Store import_tsv_bundle(const TsvBundle& bundle, bool validate = true);
Store import_sql_dump(std::string_view dump, bool validate = true);

void write_tsv_bundle(const TsvBundle& bundle, const std::filesystem::path& dir);
TsvBundle read_tsv_bundle(const std::filesystem::path& dir);

/// Store persisted as a tsv-bundle directory.
void save_store(const Store& store, const std::filesystem::path& dir);
Store load_store(const std::filesystem::path& dir, bool validate = true);

}  // namespace wikimrd
