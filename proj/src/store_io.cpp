#include "wikimrd/store_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <numeric>
#include <optional>
#include <sstream>

namespace wikimrd {

namespace {

using Cell = std::optional<std::string>;
using Cells = std::vector<Cell>;

struct ColumnSpec {
    std::string name;
    bool integer;
    bool nullable;
    std::string references;  // referenced table, if a foreign key
};

struct TableCodec {
    std::string name;
    std::vector<ColumnSpec> columns;
    std::vector<std::string> unique_keys;  // column lists, e.g. "page_id, inflection_id"
    std::function<std::vector<Cells>(const Tables&)> rows;
    std::function<void(Tables&, const std::vector<Cell>&)> append;
};

Cell num(std::int64_t v) { return std::to_string(v); }
Cell opt_num(const std::optional<RowId>& v) { return v ? num(*v) : std::nullopt; }

std::int64_t to_int(const Cell& c) {
    std::int64_t v = 0;
    std::from_chars(c->data(), c->data() + c->size(), v);
    return v;
}
std::optional<RowId> to_opt_int(const Cell& c) {
    if (!c) return std::nullopt;
    return to_int(c);
}

const std::vector<TableCodec>& codecs() {
    static const std::vector<TableCodec> kCodecs = [] {
        std::vector<TableCodec> v;
        v.push_back({"page",
                     {{"id", true, false, ""}, {"page_title", false, false, ""}},
                     {"page_title"},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.page) out.push_back({num(r.id), r.page_title});
                         return out;
                     },
                     [](Tables& t, const Cells& c) { t.page.push_back({to_int(c[0]), *c[1]}); }});
        v.push_back({"lang",
                     {{"id", true, false, ""}, {"code", false, false, ""}, {"name", false, false, ""},
                      {"n_translation", true, false, ""}},
                     {"code", "name"},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.lang) out.push_back({num(r.id), r.code, r.name, num(r.n_translation)});
                         return out;
                     },
                     [](Tables& t, const Cells& c) { t.lang.push_back({to_int(c[0]), *c[1], *c[2], to_int(c[3])}); }});
        v.push_back({"part_of_speech",
                     {{"id", true, false, ""}, {"name", false, false, ""}},
                     {"name"},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.part_of_speech) out.push_back({num(r.id), r.name});
                         return out;
                     },
                     [](Tables& t, const Cells& c) { t.part_of_speech.push_back({to_int(c[0]), *c[1]}); }});
        v.push_back({"lang_pos",
                     {{"id", true, false, ""},
                      {"page_id", true, false, "page"},
                      {"lang_id", true, false, "lang"},
                      {"pos_id", true, false, "part_of_speech"},
                      {"etymology_n", true, false, ""}},
                     {"page_id, lang_id, pos_id, etymology_n"},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.lang_pos)
                             out.push_back({num(r.id), num(r.page_id), num(r.lang_id), num(r.pos_id), num(r.etymology_n)});
                         return out;
                     },
                     [](Tables& t, const Cells& c) {
                         t.lang_pos.push_back({to_int(c[0]), to_int(c[1]), to_int(c[2]), to_int(c[3]), to_int(c[4])});
                     }});
        v.push_back({"wiki_text",
                     {{"id", true, false, ""}, {"text", false, false, ""}},
                     {"text"},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.wiki_text) out.push_back({num(r.id), r.text});
                         return out;
                     },
                     [](Tables& t, const Cells& c) { t.wiki_text.push_back({to_int(c[0]), *c[1]}); }});
        v.push_back({"meaning",
                     {{"id", true, false, ""},
                      {"lang_pos_id", true, false, "lang_pos"},
                      {"meaning_n", true, false, ""},
                      {"wiki_text_id", true, false, "wiki_text"},
                      {"plain_text", false, false, ""}},
                     {"lang_pos_id, meaning_n"},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.meaning)
                             out.push_back({num(r.id), num(r.lang_pos_id), num(r.meaning_n), num(r.wiki_text_id),
                                            r.plain_text});
                         return out;
                     },
                     [](Tables& t, const Cells& c) {
                         t.meaning.push_back({to_int(c[0]), to_int(c[1]), to_int(c[2]), to_int(c[3]), *c[4]});
                     }});
        v.push_back({"inflection",
                     {{"id", true, false, ""}, {"inflected_form", false, false, ""}},
                     {"inflected_form"},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.inflection) out.push_back({num(r.id), r.inflected_form});
                         return out;
                     },
                     [](Tables& t, const Cells& c) { t.inflection.push_back({to_int(c[0]), *c[1]}); }});
        v.push_back({"page_inflection",
                     {{"id", true, false, ""},
                      {"page_id", true, false, "page"},
                      {"inflection_id", true, false, "inflection"}},
                     {"page_id, inflection_id"},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.page_inflection)
                             out.push_back({num(r.id), num(r.page_id), num(r.inflection_id)});
                         return out;
                     },
                     [](Tables& t, const Cells& c) {
                         t.page_inflection.push_back({to_int(c[0]), to_int(c[1]), to_int(c[2])});
                     }});
        v.push_back({"wiki_text_words",
                     {{"id", true, false, ""},
                      {"wiki_text_id", true, false, "wiki_text"},
                      {"page_inflection_id", true, false, "page_inflection"},
                      {"position", true, false, ""}},
                     {"wiki_text_id, position"},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.wiki_text_words)
                             out.push_back({num(r.id), num(r.wiki_text_id), num(r.page_inflection_id), num(r.position)});
                         return out;
                     },
                     [](Tables& t, const Cells& c) {
                         t.wiki_text_words.push_back({to_int(c[0]), to_int(c[1]), to_int(c[2]), to_int(c[3])});
                     }});
        v.push_back({"relation_type",
                     {{"id", true, false, ""}, {"name", false, false, ""}},
                     {"name"},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.relation_type) out.push_back({num(r.id), r.name});
                         return out;
                     },
                     [](Tables& t, const Cells& c) { t.relation_type.push_back({to_int(c[0]), *c[1]}); }});
        v.push_back({"relation",
                     {{"id", true, false, ""},
                      {"lang_pos_id", true, false, "lang_pos"},
                      {"meaning_id", true, true, "meaning"},
                      {"wiki_text_id", true, false, "wiki_text"},
                      {"relation_type_id", true, false, "relation_type"},
                      {"meaning_summary", false, true, ""}},
                     {},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.relation)
                             out.push_back({num(r.id), num(r.lang_pos_id), opt_num(r.meaning_id), num(r.wiki_text_id),
                                            num(r.relation_type_id), r.meaning_summary});
                         return out;
                     },
                     [](Tables& t, const Cells& c) {
                         t.relation.push_back(
                             {to_int(c[0]), to_int(c[1]), to_opt_int(c[2]), to_int(c[3]), to_int(c[4]), c[5]});
                     }});
        v.push_back({"translation",
                     {{"id", true, false, ""},
                      {"lang_pos_id", true, false, "lang_pos"},
                      {"meaning_id", true, true, "meaning"},
                      {"gloss", false, true, ""}},
                     {"meaning_id"},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.translation)
                             out.push_back({num(r.id), num(r.lang_pos_id), opt_num(r.meaning_id), r.gloss});
                         return out;
                     },
                     [](Tables& t, const Cells& c) {
                         t.translation.push_back({to_int(c[0]), to_int(c[1]), to_opt_int(c[2]), c[3]});
                     }});
        v.push_back({"translation_entry",
                     {{"id", true, false, ""},
                      {"translation_id", true, false, "translation"},
                      {"lang_id", true, false, "lang"},
                      {"wiki_text_id", true, false, "wiki_text"}},
                     {},
                     [](const Tables& t) {
                         std::vector<Cells> out;
                         for (const auto& r : t.translation_entry)
                             out.push_back({num(r.id), num(r.translation_id), num(r.lang_id), num(r.wiki_text_id)});
                         return out;
                     },
                     [](Tables& t, const Cells& c) {
                         t.translation_entry.push_back({to_int(c[0]), to_int(c[1]), to_int(c[2]), to_int(c[3])});
                     }});
        return v;
    }();
    return kCodecs;
}

const TableCodec* codec_for(std::string_view name) {
    for (const auto& c : codecs())
        if (c.name == name) return &c;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Canonical ordering

// Permutation sorting row indices by `key`; ties keep the original order.
template <typename Row, typename KeyFn>
std::vector<std::size_t> order(const std::vector<Row>& rows, KeyFn key) {
    std::vector<std::size_t> idx(rows.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key(rows[a]) < key(rows[b]); });
    return idx;
}

// old id -> new id; unresolvable references map to 0.
struct IdMap {
    std::vector<RowId> to_new;

    RowId operator()(RowId old) const {
        return old >= 1 && old < static_cast<RowId>(to_new.size()) ? to_new[static_cast<std::size_t>(old)] : 0;
    }
    std::optional<RowId> operator()(const std::optional<RowId>& old) const {
        if (!old) return std::nullopt;
        return (*this)(*old);
    }
};

template <typename Row>
IdMap apply(std::vector<Row>& out, const std::vector<Row>& rows, const std::vector<std::size_t>& perm) {
    IdMap map;
    RowId max_old = 0;
    for (const auto& r : rows) max_old = std::max(max_old, r.id);
    map.to_new.assign(static_cast<std::size_t>(max_old) + 1, 0);
    out.clear();
    out.reserve(rows.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        Row r = rows[perm[i]];
        const RowId new_id = static_cast<RowId>(i) + 1;
        if (r.id >= 1) map.to_new[static_cast<std::size_t>(r.id)] = new_id;
        r.id = new_id;
        out.push_back(std::move(r));
    }
    return map;
}

// ---------------------------------------------------------------------------
// TSV

std::string escape_tsv(const Cell& cell) {
    if (!cell) return "\\N";
    std::string out;
    out.reserve(cell->size());
    for (char c : *cell) {
        switch (c) {
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\\': out += "\\\\"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string render_tsv(const TableCodec& codec, const Tables& tables) {
    std::string out;
    for (std::size_t i = 0; i < codec.columns.size(); ++i) {
        if (i) out.push_back('\t');
        out += codec.columns[i].name;
    }
    out.push_back('\n');
    for (const Cells& cells : codec.rows(tables)) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out.push_back('\t');
            out += escape_tsv(cells[i]);
        }
        out.push_back('\n');
    }
    return out;
}

bool valid_integer(std::string_view s) {
    if (s.empty()) return false;
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && ptr == s.data() + s.size();
}

void check_cells(const TableCodec& codec, const Cells& cells, const std::string& source, std::size_t line,
                 const std::vector<std::size_t>& columns) {
    for (std::size_t i = 0; i < codec.columns.size(); ++i) {
        const ColumnSpec& spec = codec.columns[i];
        if (!cells[i]) {
            if (!spec.nullable) throw ImportError(source, line, columns[i], "NULL in non-nullable column " + spec.name);
            continue;
        }
        if (spec.integer && !valid_integer(*cells[i]))
            throw ImportError(source, line, columns[i], "column " + spec.name + " expects an integer");
    }
}

void parse_tsv(const TableCodec& codec, std::string_view text, const std::string& source, Tables& tables) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        ++line_no;
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) throw ImportError(source, line_no, text.size() - pos + 1, "missing final newline");
        const std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;

        Cells cells;
        std::vector<std::size_t> columns;
        std::size_t field_start = 0;
        while (true) {
            const std::size_t tab = line.find('\t', field_start);
            const std::string_view raw =
                line.substr(field_start, tab == std::string_view::npos ? std::string_view::npos : tab - field_start);
            columns.push_back(field_start + 1);
            if (raw == "\\N") {
                cells.emplace_back(std::nullopt);
            } else {
                std::string value;
                for (std::size_t i = 0; i < raw.size(); ++i) {
                    if (raw[i] != '\\') {
                        value.push_back(raw[i]);
                        continue;
                    }
                    if (i + 1 >= raw.size()) throw ImportError(source, line_no, field_start + i + 1, "dangling backslash");
                    switch (raw[++i]) {
                        case 't': value.push_back('\t'); break;
                        case 'n': value.push_back('\n'); break;
                        case 'r': value.push_back('\r'); break;
                        case '\\': value.push_back('\\'); break;
                        default: throw ImportError(source, line_no, field_start + i, "unknown escape");
                    }
                }
                cells.emplace_back(std::move(value));
            }
            if (tab == std::string_view::npos) break;
            field_start = tab + 1;
        }

        if (!header_seen) {
            header_seen = true;
            if (cells.size() != codec.columns.size())
                throw ImportError(source, line_no, 1, "header has " + std::to_string(cells.size()) + " columns, expected " +
                                                          std::to_string(codec.columns.size()));
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (!cells[i] || *cells[i] != codec.columns[i].name)
                    throw ImportError(source, line_no, columns[i], "expected column " + codec.columns[i].name);
            continue;
        }
        if (cells.size() != codec.columns.size())
            throw ImportError(source, line_no, 1, "row has " + std::to_string(cells.size()) + " fields, expected " +
                                                      std::to_string(codec.columns.size()));
        check_cells(codec, cells, source, line_no, columns);
        codec.append(tables, cells);
    }
    if (!header_seen) throw ImportError(source, 1, 1, "missing header row");
}

// Rejects tables that would leave the store with dangling references or
// duplicate keys; the first problem is reported at its row.
Store finish_import(Tables tables, bool validate, const std::function<std::pair<std::string, std::size_t>(const std::string&, RowId)>&
                                       locate) {
    auto fail_at = [&](const std::string& table, RowId id, const std::string& what) -> ImportError {
        const auto [source, line] = locate(table, id);
        return ImportError(source, line, 1, what);
    };
    Store store = [&] {
        try {
            return Store::from_tables(std::move(tables));
        } catch (const std::exception& e) {
            throw ImportError("<tables>", 0, 0, e.what());
        }
    }();
    if (!validate) return store;
    for (const Finding& f : verify_integrity(store).findings) {
        if (f.category == "foreign-key" || f.category == "id-sequence")
            throw fail_at(f.table, f.row_id, f.category + ": " + f.detail);
    }
    return store;
}

// ---------------------------------------------------------------------------
// SQL

std::string sql_quote(const Cell& cell, bool integer) {
    if (!cell) return "NULL";
    if (integer) return *cell;
    std::string out = "'";
    for (char c : *cell) {
        if (c == '\'') out.push_back('\'');
        out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

std::string create_statement(const TableCodec& codec) {
    std::string out = "CREATE TABLE " + codec.name + " (";
    for (std::size_t i = 0; i < codec.columns.size(); ++i) {
        const ColumnSpec& c = codec.columns[i];
        if (i) out += ", ";
        out += c.name;
        out += c.integer ? " INTEGER" : " TEXT";
        if (i == 0) {
            out += " PRIMARY KEY";
            continue;
        }
        if (!c.nullable) out += " NOT NULL";
        if (!c.references.empty()) out += " REFERENCES " + c.references + " (id)";
    }
    for (const auto& key : codec.unique_keys) out += ", UNIQUE (" + key + ")";
    out += ");\n";
    return out;
}

class SqlLexer {
public:
    enum class Kind { word, number, string, null, punct, end };
    struct Token {
        Kind kind;
        std::string text;
        std::size_t line;
        std::size_t column;
    };

    explicit SqlLexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space();
        Token t{Kind::end, {}, line_, column_};
        if (pos_ >= text_.size()) return t;
        const char c = text_[pos_];
        if (c == '\'') {
            advance();
            t.kind = Kind::string;
            while (true) {
                if (pos_ >= text_.size()) throw ImportError("sql-dump", t.line, t.column, "unterminated string");
                const char d = text_[pos_];
                advance();
                if (d == '\'') {
                    if (pos_ < text_.size() && text_[pos_] == '\'') {
                        advance();
                        t.text.push_back('\'');
                        continue;
                    }
                    break;
                }
                t.text.push_back(d);
            }
            return t;
        }
        if (c == '-' || (c >= '0' && c <= '9')) {
            t.kind = Kind::number;
            t.text.push_back(c);
            advance();
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
                t.text.push_back(text_[pos_]);
                advance();
            }
            if (!valid_integer(t.text)) throw ImportError("sql-dump", t.line, t.column, "malformed integer");
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Kind::word;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                t.text.push_back(text_[pos_]);
                advance();
            }
            if (t.text == "NULL") t.kind = Kind::null;
            return t;
        }
        if (c == '(' || c == ')' || c == ',' || c == ';') {
            t.kind = Kind::punct;
            t.text.push_back(c);
            advance();
            return t;
        }
        throw ImportError("sql-dump", line_, column_, std::string("unexpected character '") + c + "'");
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }
    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                advance();
            } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

}  // namespace

ImportError::ImportError(std::string source, std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

ExportFormat parse_export_format(std::string_view text) {
    if (text == "tsv-bundle") return ExportFormat::tsv_bundle;
    if (text == "sql-dump") return ExportFormat::sql_dump;
    throw std::invalid_argument("unknown export format '" + std::string(text) + "' (expected tsv-bundle or sql-dump)");
}

const std::vector<std::string>& table_names() {
    static const std::vector<std::string> kNames = [] {
        std::vector<std::string> names;
        for (const auto& c : codecs()) names.push_back(c.name);
        return names;
    }();
    return kNames;
}

Tables canonicalize(const Tables& t) {
    Tables c;
    const IdMap page = apply(c.page, t.page, order(t.page, [](const PageRow& r) { return std::tie(r.page_title); }));
    const IdMap lang = apply(c.lang, t.lang, order(t.lang, [](const LangRow& r) { return std::tie(r.code); }));
    const IdMap pos = apply(c.part_of_speech, t.part_of_speech,
                            order(t.part_of_speech, [](const PartOfSpeechRow& r) { return std::tie(r.name); }));
    const IdMap text = apply(c.wiki_text, t.wiki_text, order(t.wiki_text, [](const WikiTextRow& r) { return std::tie(r.text); }));
    const IdMap infl = apply(c.inflection, t.inflection,
                             order(t.inflection, [](const InflectionRow& r) { return std::tie(r.inflected_form); }));
    const IdMap rtype = apply(c.relation_type, t.relation_type,
                              order(t.relation_type, [](const RelationTypeRow& r) { return std::tie(r.name); }));

    const IdMap lang_pos = apply(c.lang_pos, t.lang_pos, order(t.lang_pos, [&](const LangPosRow& r) {
                                     return std::make_tuple(page(r.page_id), lang(r.lang_id), pos(r.pos_id), r.etymology_n);
                                 }));
    for (auto& r : c.lang_pos) {
        r.page_id = page(r.page_id);
        r.lang_id = lang(r.lang_id);
        r.pos_id = pos(r.pos_id);
    }

    const IdMap meaning = apply(c.meaning, t.meaning, order(t.meaning, [&](const MeaningRow& r) {
                                    return std::make_tuple(lang_pos(r.lang_pos_id), r.meaning_n, text(r.wiki_text_id),
                                                           std::cref(r.plain_text));
                                }));
    for (auto& r : c.meaning) {
        r.lang_pos_id = lang_pos(r.lang_pos_id);
        r.wiki_text_id = text(r.wiki_text_id);
    }

    const IdMap page_infl = apply(c.page_inflection, t.page_inflection, order(t.page_inflection, [&](const PageInflectionRow& r) {
                                      return std::make_pair(page(r.page_id), infl(r.inflection_id));
                                  }));
    for (auto& r : c.page_inflection) {
        r.page_id = page(r.page_id);
        r.inflection_id = infl(r.inflection_id);
    }

    apply(c.wiki_text_words, t.wiki_text_words, order(t.wiki_text_words, [&](const WikiTextWordsRow& r) {
              return std::make_tuple(text(r.wiki_text_id), r.position, page_infl(r.page_inflection_id));
          }));
    for (auto& r : c.wiki_text_words) {
        r.wiki_text_id = text(r.wiki_text_id);
        r.page_inflection_id = page_infl(r.page_inflection_id);
    }

    apply(c.relation, t.relation, order(t.relation, [&](const RelationRow& r) {
              return std::make_tuple(lang_pos(r.lang_pos_id), rtype(r.relation_type_id), meaning(r.meaning_id),
                                     std::cref(r.meaning_summary), text(r.wiki_text_id));
          }));
    for (auto& r : c.relation) {
        r.lang_pos_id = lang_pos(r.lang_pos_id);
        r.meaning_id = meaning(r.meaning_id);
        r.wiki_text_id = text(r.wiki_text_id);
        r.relation_type_id = rtype(r.relation_type_id);
    }

    const IdMap translation = apply(c.translation, t.translation, order(t.translation, [&](const TranslationRow& r) {
                                        return std::make_tuple(lang_pos(r.lang_pos_id), meaning(r.meaning_id),
                                                               std::cref(r.gloss));
                                    }));
    for (auto& r : c.translation) {
        r.lang_pos_id = lang_pos(r.lang_pos_id);
        r.meaning_id = meaning(r.meaning_id);
    }

    apply(c.translation_entry, t.translation_entry, order(t.translation_entry, [&](const TranslationEntryRow& r) {
              return std::make_tuple(translation(r.translation_id), lang(r.lang_id), text(r.wiki_text_id));
          }));
    for (auto& r : c.translation_entry) {
        r.translation_id = translation(r.translation_id);
        r.lang_id = lang(r.lang_id);
        r.wiki_text_id = text(r.wiki_text_id);
    }
    return c;
}

TsvBundle export_tsv_bundle(const Store& store) {
    const Tables canonical = canonicalize(store.tables());
    TsvBundle bundle;
    for (const auto& codec : codecs()) bundle.emplace_back(codec.name + ".tsv", render_tsv(codec, canonical));
    return bundle;
}

std::string export_sql_dump(const Store& store) {
    const Tables canonical = canonicalize(store.tables());
    std::string out = "-- wikimrd sql-dump\nBEGIN TRANSACTION;\n";
    for (const auto& codec : codecs()) out += create_statement(codec);
    for (const auto& codec : codecs()) {
        for (const Cells& cells : codec.rows(canonical)) {
            out += "INSERT INTO " + codec.name + " VALUES (";
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out.push_back(',');
                out += sql_quote(cells[i], codec.columns[i].integer);
            }
            out += ");\n";
        }
    }
    out += "COMMIT;\n";
    return out;
}

Store import_tsv_bundle(const TsvBundle& bundle, bool validate) {
    Tables tables;
    for (const auto& codec : codecs()) {
        const std::string file = codec.name + ".tsv";
        auto it = std::find_if(bundle.begin(), bundle.end(), [&](const auto& f) { return f.first == file; });
        if (it == bundle.end()) throw ImportError(file, 0, 0, "missing table file");
        parse_tsv(codec, it->second, file, tables);
    }
    return finish_import(std::move(tables), validate, [](const std::string& table, RowId id) {
        return std::make_pair(table + ".tsv", static_cast<std::size_t>(id) + 1);
    });
}

Store import_sql_dump(std::string_view dump, bool validate) {
    Tables tables;
    SqlLexer lexer(dump);
    std::map<std::pair<std::string, RowId>, std::size_t> row_lines;

    auto expect = [&](SqlLexer::Kind kind, std::string_view text) {
        SqlLexer::Token t = lexer.next();
        if (t.kind != kind || (!text.empty() && t.text != text))
            throw ImportError("sql-dump", t.line, t.column,
                              "expected '" + std::string(text) + "', found '" + t.text + "'");
        return t;
    };

    enum class Phase { before, open, committed } phase = Phase::before;
    std::set<std::string> created;
    while (true) {
        SqlLexer::Token t = lexer.next();
        if (t.kind == SqlLexer::Kind::end) {
            if (phase != Phase::committed) throw ImportError("sql-dump", t.line, t.column, "missing COMMIT");
            for (const auto& name : table_names())
                if (!created.count(name))
                    throw ImportError("sql-dump", t.line, t.column, "missing CREATE TABLE " + name);
            break;
        }
        if (t.kind != SqlLexer::Kind::word) throw ImportError("sql-dump", t.line, t.column, "expected a statement");
        if (t.text == "BEGIN") {
            if (phase != Phase::before) throw ImportError("sql-dump", t.line, t.column, "nested BEGIN");
            expect(SqlLexer::Kind::word, "TRANSACTION");
            expect(SqlLexer::Kind::punct, ";");
            phase = Phase::open;
            continue;
        }
        if (phase != Phase::open) throw ImportError("sql-dump", t.line, t.column, "statement outside the transaction");
        if (t.text == "COMMIT") {
            expect(SqlLexer::Kind::punct, ";");
            phase = Phase::committed;
        } else if (t.text == "CREATE") {
            expect(SqlLexer::Kind::word, "TABLE");
            SqlLexer::Token name = expect(SqlLexer::Kind::word, "");
            if (!codec_for(name.text)) throw ImportError("sql-dump", name.line, name.column, "unknown table " + name.text);
            if (!created.insert(name.text).second)
                throw ImportError("sql-dump", name.line, name.column, "table created twice: " + name.text);
            expect(SqlLexer::Kind::punct, "(");
            int depth = 1;
            while (depth > 0) {
                SqlLexer::Token d = lexer.next();
                if (d.kind == SqlLexer::Kind::end) throw ImportError("sql-dump", d.line, d.column, "unterminated CREATE TABLE");
                if (d.kind == SqlLexer::Kind::punct && d.text == "(") ++depth;
                if (d.kind == SqlLexer::Kind::punct && d.text == ")") --depth;
            }
            expect(SqlLexer::Kind::punct, ";");
        } else if (t.text == "INSERT") {
            expect(SqlLexer::Kind::word, "INTO");
            SqlLexer::Token name = expect(SqlLexer::Kind::word, "");
            const TableCodec* codec = codec_for(name.text);
            if (!codec) throw ImportError("sql-dump", name.line, name.column, "unknown table " + name.text);
            if (!created.count(name.text))
                throw ImportError("sql-dump", name.line, name.column, "insert before CREATE TABLE " + name.text);
            expect(SqlLexer::Kind::word, "VALUES");
            expect(SqlLexer::Kind::punct, "(");
            Cells cells;
            std::vector<std::size_t> columns;
            while (true) {
                SqlLexer::Token v = lexer.next();
                columns.push_back(v.column);
                if (v.kind == SqlLexer::Kind::null) {
                    cells.emplace_back(std::nullopt);
                } else if (v.kind == SqlLexer::Kind::number || v.kind == SqlLexer::Kind::string) {
                    if (cells.size() < codec->columns.size() &&
                        codec->columns[cells.size()].integer != (v.kind == SqlLexer::Kind::number))
                        throw ImportError("sql-dump", v.line, v.column, "type mismatch in column " +
                                                                            codec->columns[cells.size()].name);
                    cells.emplace_back(v.text);
                } else {
                    throw ImportError("sql-dump", v.line, v.column, "expected a value");
                }
                SqlLexer::Token sep = lexer.next();
                if (sep.kind == SqlLexer::Kind::punct && sep.text == ")") break;
                if (sep.kind != SqlLexer::Kind::punct || sep.text != ",")
                    throw ImportError("sql-dump", sep.line, sep.column, "expected ',' or ')'");
            }
            if (cells.size() != codec->columns.size())
                throw ImportError("sql-dump", t.line, t.column, "wrong number of values for " + codec->name);
            check_cells(*codec, cells, "sql-dump", t.line, columns);
            row_lines[{codec->name, to_int(cells[0])}] = t.line;
            codec->append(tables, cells);
            expect(SqlLexer::Kind::punct, ";");
        } else {
            throw ImportError("sql-dump", t.line, t.column, "unsupported statement " + t.text);
        }
    }
    return finish_import(std::move(tables), validate, [&](const std::string& table, RowId id) {
        auto it = row_lines.find({table, id});
        return std::make_pair(std::string("sql-dump"), it == row_lines.end() ? std::size_t{0} : it->second);
    });
}

void write_tsv_bundle(const TsvBundle& bundle, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, contents] : bundle) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        out << contents;
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    }
}

TsvBundle read_tsv_bundle(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw std::runtime_error("store directory not found: " + dir.string());
    TsvBundle bundle;
    for (const auto& name : table_names()) {
        const auto file = dir / (name + ".tsv");
        std::ifstream in(file, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read " + file.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        bundle.emplace_back(name + ".tsv", buf.str());
    }
    return bundle;
}

void save_store(const Store& store, const std::filesystem::path& dir) { write_tsv_bundle(export_tsv_bundle(store), dir); }

Store load_store(const std::filesystem::path& dir, bool validate) {
    return import_tsv_bundle(read_tsv_bundle(dir), validate);
}

}  // namespace wikimrd
