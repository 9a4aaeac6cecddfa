#include <doctest.h>
#include <sqlite3.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "wikimrd/dump_ingest.hpp"
#include "wikimrd/pipeline.hpp"
#include "wikimrd/store_io.hpp"

using namespace wikimrd;
using namespace wikimrd::testing;

namespace {

Store corpus_store(std::vector<RawPage> pages) {
    Store store;
    Diagnostics d;
    PageList source(std::move(pages));
    run_pipeline(source, en_profile(), store, d);
    return store;
}

std::vector<RawPage> corpus_pages() {
    FixtureDirectoryReader reader(fixtures() / "mixed");
    std::vector<RawPage> pages;
    while (auto p = reader.next()) pages.push_back(std::move(*p));
    return pages;
}

std::string joined(const TsvBundle& bundle) {
    std::string out;
    for (const auto& [name, body] : bundle) out += "## " + name + "\n" + body;
    return out;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const std::size_t nl = s.find('\n', pos);
        out.push_back(s.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

int sqlite_count(sqlite3* db, const std::string& table) {
    sqlite3_stmt* st = nullptr;
    REQUIRE(sqlite3_prepare_v2(db, ("SELECT COUNT(*) FROM " + table).c_str(), -1, &st, nullptr) == SQLITE_OK);
    REQUIRE(sqlite3_step(st) == SQLITE_ROW);
    const int n = sqlite3_column_int(st, 0);
    sqlite3_finalize(st);
    return n;
}

}  // namespace

TEST_CASE("tsv bundle round trip is byte identical") {
    const Store store = corpus_store(corpus_pages());
    REQUIRE(store.tables().meaning.size() > 3);
    const TsvBundle first = export_tsv_bundle(store);
    REQUIRE(first.size() == table_names().size());
    const Store back = import_tsv_bundle(first);
    CHECK(joined(export_tsv_bundle(back)) == joined(first));
    CHECK(verify_integrity(back).ok());

    const auto dir = scratch_dir("bundle");
    save_store(store, dir);
    CHECK(joined(export_tsv_bundle(load_store(dir))) == joined(first));
    std::filesystem::remove_all(dir);
}

TEST_CASE("sql dump round trip is byte identical") {
    const Store store = corpus_store(corpus_pages());
    const std::string dump = export_sql_dump(store);
    CHECK(export_sql_dump(import_sql_dump(dump)) == dump);
    CHECK(joined(export_tsv_bundle(import_sql_dump(dump))) == joined(export_tsv_bundle(store)));
}

TEST_CASE("export does not depend on insertion order") {
    auto pages = corpus_pages();
    const std::string expected = joined(export_tsv_bundle(corpus_store(pages)));
    std::mt19937 rng(7);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(pages.begin(), pages.end(), rng);
        CHECK(joined(export_tsv_bundle(corpus_store(pages))) == expected);
    }
}

TEST_CASE("canonical tables are sorted by natural key") {
    const Store store = corpus_store(corpus_pages());
    const Tables t = canonicalize(store.tables());
    CHECK(std::is_sorted(t.page.begin(), t.page.end(),
                         [](const auto& a, const auto& b) { return a.page_title < b.page_title; }));
    CHECK(std::is_sorted(t.lang.begin(), t.lang.end(), [](const auto& a, const auto& b) { return a.code < b.code; }));
    for (std::size_t i = 0; i < t.page.size(); ++i) CHECK(t.page[i].id == static_cast<RowId>(i + 1));
    CHECK(verify_integrity(Store::from_tables(t)).ok());
}

TEST_CASE("tsv escaping survives tabs, newlines and backslashes") {
    Store store;
    const LanguageInfo en{"en", "English", 1};
    const std::vector<Definition> defs = {{0, "a\tb\\c [[x\\y]]", "a\tb\\c x\\y", {}}};
    store.store_entry(LangPosKey{"odd\\title", en, "noun", 0}, defs, {}, {});
    const auto bundle = export_tsv_bundle(store);
    const auto& wiki_text = *std::find_if(bundle.begin(), bundle.end(),
                                          [](const auto& f) { return f.first == "wiki_text.tsv"; });
    CHECK(wiki_text.second.find("a\\tb\\\\c") != std::string::npos);
    const Store back = import_tsv_bundle(bundle);
    CHECK(back.tables().meaning[0].plain_text == "a\tb\\c x\\y");
    CHECK(joined(export_tsv_bundle(back)) == joined(bundle));
}

TEST_CASE("malformed tsv input reports its location") {
    const Store store = corpus_store(corpus_pages());
    TsvBundle bundle = export_tsv_bundle(store);
    auto page = std::find_if(bundle.begin(), bundle.end(), [](const auto& f) { return f.first == "page.tsv"; });
    REQUIRE(page != bundle.end());

    SUBCASE("wrong column count") {
        page->second += "99\n";
        try {
            import_tsv_bundle(bundle);
            FAIL("accepted a short row");
        } catch (const ImportError& e) {
            CHECK(e.source() == "page.tsv");
            CHECK(e.line() == lines_of(page->second).size());
        }
    }
    SUBCASE("non-integer id") {
        const auto lines = lines_of(page->second);
        page->second = lines[0] + "\nx1\tfoo\n";
        try {
            import_tsv_bundle(bundle);
            FAIL("accepted a bad id");
        } catch (const ImportError& e) {
            CHECK(e.source() == "page.tsv");
            CHECK(e.line() == 2);
            CHECK(e.column() == 1);
        }
    }
    SUBCASE("wrong header") {
        page->second = "id\ttitle\n" + page->second.substr(page->second.find('\n') + 1);
        try {
            import_tsv_bundle(bundle);
            FAIL("accepted a bad header");
        } catch (const ImportError& e) {
            CHECK(e.line() == 1);
        }
    }
    SUBCASE("dangling reference") {
        auto meaning =
            std::find_if(bundle.begin(), bundle.end(), [](const auto& f) { return f.first == "meaning.tsv"; });
        auto lines = lines_of(meaning->second);
        REQUIRE(lines.size() > 2);
        // lang_pos_id is the second column
        const auto tab = lines[1].find('\t');
        const auto tab2 = lines[1].find('\t', tab + 1);
        lines[1] = lines[1].substr(0, tab + 1) + "9999" + lines[1].substr(tab2);
        meaning->second.clear();
        for (const auto& l : lines) meaning->second += l + "\n";
        CHECK_THROWS_AS(import_tsv_bundle(bundle), ImportError);
        const auto report = verify_integrity(import_tsv_bundle(bundle, false));
        std::string found;
        for (const auto& f : report.findings) found += f.category + " " + f.table + " " + f.detail + "\n";
        INFO(found);
        // The retargeted meaning is also referenced by a translation of its old lang_pos.
        CHECK(report.count("foreign-key") == report.findings.size());
        CHECK(std::any_of(report.findings.begin(), report.findings.end(),
                          [](const Finding& f) { return f.table == "meaning"; }));
    }
    SUBCASE("missing file") {
        bundle.erase(page);
        CHECK_THROWS_AS(import_tsv_bundle(bundle), ImportError);
    }
}

TEST_CASE("malformed sql input reports its location") {
    const Store store = corpus_store(corpus_pages());
    const std::string dump = export_sql_dump(store);
    const std::size_t insert = dump.find("INSERT INTO page VALUES");
    REQUIRE(insert != std::string::npos);
    std::string broken = dump;
    broken.replace(insert, 6, "INSERX");
    const std::size_t line = static_cast<std::size_t>(std::count(dump.begin(), dump.begin() + insert, '\n')) + 1;
    try {
        import_sql_dump(broken);
        FAIL("accepted a bad statement");
    } catch (const ImportError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == 1);
    }
    CHECK_THROWS_AS(import_sql_dump("-- wikimrd sql-dump\nBEGIN TRANSACTION;\n"), ImportError);
    CHECK_THROWS_AS(import_sql_dump("garbage"), ImportError);
}

TEST_CASE("the sql dump loads into sqlite") {
    const Store store = corpus_store(corpus_pages());
    const std::string dump = export_sql_dump(store);
    sqlite3* db = nullptr;
    REQUIRE(sqlite3_open(":memory:", &db) == SQLITE_OK);
    sqlite3_exec(db, "PRAGMA foreign_keys = ON", nullptr, nullptr, nullptr);
    char* err = nullptr;
    const int rc = sqlite3_exec(db, dump.c_str(), nullptr, nullptr, &err);
    if (rc != SQLITE_OK) FAIL_CHECK(err);
    sqlite3_free(err);
    const auto& t = store.tables();
    CHECK(sqlite_count(db, "page") == static_cast<int>(t.page.size()));
    CHECK(sqlite_count(db, "meaning") == static_cast<int>(t.meaning.size()));
    CHECK(sqlite_count(db, "translation_entry") == static_cast<int>(t.translation_entry.size()));
    CHECK(sqlite_count(db, "relation_type") == 9);

    sqlite3_stmt* st = nullptr;
    REQUIRE(sqlite3_prepare_v2(db, "PRAGMA foreign_key_check", -1, &st, nullptr) == SQLITE_OK);
    CHECK(sqlite3_step(st) == SQLITE_DONE);
    sqlite3_finalize(st);
    sqlite3_close(db);
}

TEST_CASE("export formats by name") {
    CHECK(parse_export_format("tsv-bundle") == ExportFormat::tsv_bundle);
    CHECK(parse_export_format("sql-dump") == ExportFormat::sql_dump);
    CHECK_THROWS(parse_export_format("csv"));
}
