// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.

#include <sys/wait.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "reference_templates.hpp"
#include "support.hpp"
#include "wikimrd/dump_ingest.hpp"
#include "wikimrd/mrd_store.hpp"
#include "wikimrd/pipeline.hpp"
#include "wikimrd/store_io.hpp"
#include "wikimrd/wikitext.hpp"

using namespace wikimrd;
using namespace wikimrd::testing;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kDealSeconds = 1.0;
constexpr int kCounterEntries = 200;
constexpr int kCounterSeeds = 20;
constexpr std::size_t kExhaustiveLength = 12;
constexpr int kFuzzStrings = 100000;
constexpr std::size_t kFuzzLength = 200;
constexpr int kDeterminismRuns = 5;
constexpr int kMalformedPages = 50;
constexpr int kDumpPages = 10000;
constexpr std::size_t kBufferSlack = 2 * XmlDumpReader::kChunkSize + 4096;
constexpr double kDumpSeconds = 30.0;

const std::string kWorkedMarkup =
    "{{transitive}} To [[distribute]] among a number of [[recipient|recipients]], to give out as one's portion or "
    "share.";
const std::string kWorkedResult =
    "(transitive) To distribute among a number of recipients, to give out as one's portion or share.";
const std::string kSummary = "distribute among a number of recipients";

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail = what;
            pass = false;
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    std::ostringstream o;
    o.precision(3);
    o << std::fixed << s << "s";
    return o.str();
}

// ---------------------------------------------------------------------------
// CLI and TSV helpers

int run_cli(const std::string& args, std::string* out = nullptr) {
    const std::string cmd = "'" + cli_path().string() + "' " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::string text;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
    const int raw = ::pclose(pipe);
    if (out) *out = std::move(text);
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::map<std::string, long> summary_values(const std::string& out) {
    std::map<std::string, long> values;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
        const auto colon = line.find(": ");
        if (colon == std::string::npos) continue;
        const auto start = line.find_first_not_of(' ');
        values[line.substr(start, colon - start)] = std::stol(line.substr(colon + 2));
    }
    return values;
}

long value_or_zero(const std::map<std::string, long>& m, const std::string& key) {
    auto it = m.find(key);
    return it == m.end() ? 0 : it->second;
}

using TsvTable = std::vector<std::map<std::string, std::string>>;

// Plain split on tabs and newlines; integer columns never need unescaping.
TsvTable parse_tsv(const std::string& body) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const auto tab = line.find('\t', pos);
            cells.push_back(line.substr(pos, tab - pos));
            if (tab == std::string::npos) break;
            pos = tab + 1;
        }
        rows.push_back(std::move(cells));
    }
    TsvTable table;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        std::map<std::string, std::string> row;
        for (std::size_t c = 0; c < rows[0].size() && c < rows[r].size(); ++c) row[rows[0][c]] = rows[r][c];
        table.push_back(std::move(row));
    }
    return table;
}

const std::string& bundle_file(const TsvBundle& bundle, const std::string& name) {
    for (const auto& [file, body] : bundle)
        if (file == name) return body;
    throw std::runtime_error("missing " + name);
}

std::string joined(const TsvBundle& bundle) {
    std::string out;
    for (const auto& [name, body] : bundle) out += "## " + name + "\n" + body;
    return out;
}

ParseSummary ingest(std::vector<RawPage> pages, Store& store, unsigned workers = 1) {
    Diagnostics d;
    PageList source(std::move(pages));
    return run_pipeline(source, en_profile(), store, d, PipelineOptions{workers, 0});
}

// ---------------------------------------------------------------------------
// 1. deal fixture end to end

Outcome deal_fixture() {
    Outcome o;
    const auto t0 = Clock::now();
    Store store;
    ingest({RawPage{"deal", 0, deal_page(), false}}, store);
    const double elapsed = seconds_since(t0);
    const Tables& t = store.tables();

    o.require(t.lang_pos.size() == 1, "expected one lang_pos row");
    if (!o.pass) return o;
    const LangPosRow& lp = t.lang_pos[0];
    o.require(lp.etymology_n == 1, "etymology_n != 1");
    o.require(t.part_of_speech[static_cast<std::size_t>(lp.pos_id - 1)].name == "verb", "pos != verb");
    o.require(t.meaning.size() == 2, "expected two meanings");

    const MeaningRow* m0 = nullptr;
    for (const auto& m : t.meaning)
        if (m.lang_pos_id == lp.id && m.meaning_n == 0) m0 = &m;
    o.require(m0 != nullptr, "no meaning 0");
    if (!o.pass) return o;
    o.require(t.wiki_text[static_cast<std::size_t>(m0->wiki_text_id - 1)].text == kWorkedMarkup,
              "meaning 0 text differs");

    std::size_t synonyms = 0;
    std::size_t other_relations = 0;
    for (const auto& r : t.relation) {
        const auto& type = t.relation_type[static_cast<std::size_t>(r.relation_type_id - 1)].name;
        if (type == "synonym" && r.meaning_id == m0->id && r.meaning_summary == kSummary)
            ++synonyms;
        else
            ++other_relations;
    }
    o.require(synonyms == 5 && other_relations == 0,
              "synonyms on meaning 0: " + std::to_string(synonyms) + ", others " + std::to_string(other_relations));

    std::size_t bound_sv = 0;
    for (const auto& e : t.translation_entry) {
        const auto& tr = t.translation[static_cast<std::size_t>(e.translation_id - 1)];
        const auto& lang = t.lang[static_cast<std::size_t>(e.lang_id - 1)];
        const auto& term = t.wiki_text[static_cast<std::size_t>(e.wiki_text_id - 1)].text;
        if (tr.meaning_id == m0->id && lang.code == "sv" && lang.name == "Swedish" && term == "dela") ++bound_sv;
    }
    o.require(t.translation_entry.size() == 1 && bound_sv == 1, "translation entry mismatch");
    o.require(elapsed < kDealSeconds, "took " + fmt_seconds(elapsed));
    if (o.pass) o.detail = "etymology_n=1, 2 meanings, 5 synonyms, sv dela on meaning 0, " + fmt_seconds(elapsed);
    return o;
}

// ---------------------------------------------------------------------------
// 2. strip_markup

Outcome strip_worked_example() {
    Outcome o;
    const std::string got = strip_markup(kWorkedMarkup, en_profile().label_templates);
    o.require(got == kWorkedResult, "got \"" + got + "\"");
    if (o.pass) o.detail = "character-exact";
    return o;
}

// ---------------------------------------------------------------------------
// 3. link indexing

Outcome link_indexing() {
    Outcome o;
    Store store;
    const RowId text = store.intern_wiki_text(kWorkedMarkup);
    const Tables& t = store.tables();
    const auto page = store.find_page("recipient");
    o.require(page.has_value(), "no stub page recipient");
    o.require(!store.find_page("recipients"), "label became a page");
    RowId infl = 0;
    for (const auto& r : t.inflection)
        if (r.inflected_form == "recipients") infl = r.id;
    o.require(infl != 0, "no inflection recipients");
    if (!o.pass) return o;
    RowId pair = 0;
    for (const auto& r : t.page_inflection)
        if (r.page_id == *page && r.inflection_id == infl) pair = r.id;
    o.require(pair != 0, "no page_inflection pair");
    std::size_t at_one = 0;
    for (const auto& w : t.wiki_text_words)
        if (w.wiki_text_id == text && w.page_inflection_id == pair && w.position == 1) ++at_one;
    o.require(at_one == 1, "no wiki_text_words row at position 1");
    o.require(store.lookup_word_card("recipient").has_value() && store.lookup_word_card("recipient")->is_stub(),
              "recipient is not a stub");
    if (o.pass) o.detail = "stub, inflection, pair, position 1";
    return o;
}

// ---------------------------------------------------------------------------
// 4. translation counters

std::vector<RawPage> counter_corpus(unsigned seed, std::map<std::string, long>* emitted) {
    std::mt19937 rng(seed);
    const auto& langs = en_profile().languages.entries();
    std::vector<RawPage> pages;
    for (int i = 0; i < kCounterEntries; ++i) {
        std::string text = "==English==\n===Noun===\n# a [[thing]] number " + std::to_string(i) +
                           "\n# another [[sense]]\n\n====Translations====\n";
        const int blocks = static_cast<int>(rng() % 4);
        for (int b = 0; b < blocks; ++b) {
            text += "{{trans-top|gloss " + std::to_string(b) + "}}\n";
            std::set<std::string> used;
            const int lines = static_cast<int>(rng() % 6);
            for (int l = 0; l < lines; ++l) {
                const LanguageInfo& lang = langs[rng() % langs.size()];
                if (lang.code == "en" || !used.insert(lang.code).second) continue;
                const int terms = 1 + static_cast<int>(rng() % 2);
                text += "* " + lang.name + ": ";
                for (int k = 0; k < terms; ++k) {
                    if (k) text += ", ";
                    text += (rng() % 2 ? "{{t|" : "{{t+|") + lang.code + "|w" + std::to_string(rng() % 50) + "_" +
                            std::to_string(k) + "}}";
                }
                text += "\n";
                (*emitted)[lang.code] += terms;
            }
            text += "{{trans-bottom}}\n";
        }
        pages.push_back(RawPage{"c" + std::to_string(seed) + "_" + std::to_string(i), 0, text, false});
    }
    std::shuffle(pages.begin(), pages.end(), rng);
    return pages;
}

Outcome translation_counters() {
    Outcome o;
    std::size_t mismatches = 0;
    std::size_t rows_checked = 0;
    for (int seed = 1; seed <= kCounterSeeds; ++seed) {
        std::map<std::string, long> emitted;
        Store store;
        ingest(counter_corpus(static_cast<unsigned>(seed), &emitted), store, seed % 2 ? 1 : 4);
        const TsvBundle bundle = export_tsv_bundle(store);
        const TsvTable lang = parse_tsv(bundle_file(bundle, "lang.tsv"));
        const TsvTable entries = parse_tsv(bundle_file(bundle, "translation_entry.tsv"));
        std::map<std::string, long> recount;
        for (const auto& e : entries) ++recount[e.at("lang_id")];
        for (const auto& row : lang) {
            ++rows_checked;
            const long stored = std::stol(row.at("n_translation"));
            if (stored != value_or_zero(recount, row.at("id")) || stored != value_or_zero(emitted, row.at("code")))
                ++mismatches;
        }
        for (const auto& [code, n] : emitted) {
            bool found = false;
            for (const auto& row : lang) found = found || row.at("code") == code;
            if (!found) ++mismatches;
        }
    }
    o.require(mismatches == 0, std::to_string(mismatches) + " counter mismatches");
    if (o.pass)
        o.detail = std::to_string(rows_checked) + " lang rows over " + std::to_string(kCounterSeeds) +
                   " seeds, 0 mismatches";
    return o;
}

// ---------------------------------------------------------------------------
// 5. template scanner against the reference parser

bool scanner_agrees(const std::string& s) {
    ReferenceTemplateParser ref(s);
    std::size_t ref_unbalanced = 0;
    const auto expected = serialize_all(ref.parse_all(&ref_unbalanced));
    Diagnostics d;
    const auto got = scan_templates(s, &d);
    return serialize_all(got) == expected && d.count(diag::kUnbalancedTemplate) == ref_unbalanced;
}

Outcome template_oracle() {
    Outcome o;
    const std::string alphabet = "{}|a";
    const unsigned threads = std::max(2u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> checked{0};
    std::atomic<std::size_t> disagreements{0};
    std::mutex first_mutex;
    std::string first_bad;
    auto note_bad = [&](const std::string& s) {
        ++disagreements;
        std::lock_guard lock(first_mutex);
        if (first_bad.empty()) first_bad = s;
    };

    for (std::size_t len = 0; len <= kExhaustiveLength; ++len) {
        const std::uint64_t total = std::uint64_t{1} << (2 * len);
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w, len, total] {
                std::string s(len, 'a');
                std::size_t local = 0;
                for (std::uint64_t code = w; code < total; code += threads) {
                    std::uint64_t c = code;
                    for (std::size_t i = 0; i < len; ++i, c >>= 2) s[i] = alphabet[c & 3];
                    if (!scanner_agrees(s)) note_bad(s);
                    ++local;
                }
                checked += local;
            });
        }
    }
    const std::size_t exhaustive = checked.load();

    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            std::mt19937_64 rng(1000 + w);
            const std::string fuzz_alphabet = "{{}}|a=[] \n";
            std::size_t local = 0;
            for (int i = static_cast<int>(w); i < kFuzzStrings; i += static_cast<int>(threads)) {
                const std::size_t len = rng() % (kFuzzLength + 1);
                std::string s(len, ' ');
                // Alternate between brace-heavy and mixed alphabets.
                const std::string_view alpha = i % 2 ? std::string_view(alphabet) : std::string_view(fuzz_alphabet);
                for (auto& ch : s) ch = alpha[rng() % alpha.size()];
                if (!scanner_agrees(s)) note_bad(s);
                ++local;
            }
            checked += local;
        });
    }
    pool.clear();

    std::size_t expected_exhaustive = 0;
    for (std::size_t len = 0; len <= kExhaustiveLength; ++len) expected_exhaustive += std::size_t{1} << (2 * len);
    o.require(exhaustive == expected_exhaustive, "exhaustive enumeration incomplete");
    o.require(checked.load() == expected_exhaustive + kFuzzStrings, "fuzz count incomplete");
    o.require(disagreements == 0, std::to_string(disagreements.load()) + " disagreements, first '" + first_bad + "'");
    if (o.pass)
        o.detail = std::to_string(exhaustive) + " exhaustive + " + std::to_string(kFuzzStrings) +
                   " random strings, 0 disagreements";
    return o;
}

// ---------------------------------------------------------------------------
// 6. determinism across worker counts

Outcome determinism(const fs::path& scratch) {
    Outcome o;
    int runs = 0;
    for (const char* name : {"corpus", "mixed"}) {
        const fs::path corpus = fixtures() / name;
        std::string reference_tsv;
        std::string reference_sql;
        for (int rep = 0; rep < kDeterminismRuns; ++rep) {
            for (int workers : {1, 4}) {
                const fs::path dir =
                    scratch / ("det-" + std::string(name) + "-" + std::to_string(rep) + "-" + std::to_string(workers));
                const std::string store = (dir / "store").string();
                int rc = run_cli("parse -q --input '" + corpus.string() + "' --store '" + store + "' --workers " +
                                 std::to_string(workers));
                rc |= run_cli("export --store '" + store + "' --format tsv-bundle --out '" + (dir / "tsv").string() +
                              "'");
                rc |= run_cli("export --store '" + store + "' --format sql-dump --out '" +
                              (dir / "dump.sql").string() + "'");
                o.require(rc == 0, "cli failed");
                const std::string tsv = joined(read_tsv_bundle(dir / "tsv"));
                const std::string sql = read_file(dir / "dump.sql");
                if (reference_tsv.empty()) {
                    reference_tsv = tsv;
                    reference_sql = sql;
                }
                o.require(tsv == reference_tsv && sql == reference_sql, std::string(name) + " export differs at rep " +
                                                                            std::to_string(rep) + " workers " +
                                                                            std::to_string(workers));
                ++runs;
            }
        }
        o.require(reference_tsv.find("dela") != std::string::npos, std::string(name) + " export is missing content");
    }
    if (o.pass) o.detail = std::to_string(runs) + " cli runs over 2 fixture sets byte-identical (tsv-bundle and sql-dump)";
    return o;
}

// ---------------------------------------------------------------------------
// 7. round trip and fault injection

Outcome round_trip() {
    Outcome o;
    std::map<std::string, long> unused;
    Store store;
    FixtureDirectoryReader reader(fixtures() / "mixed");
    std::vector<RawPage> pages;
    while (auto p = reader.next()) pages.push_back(std::move(*p));
    for (auto& p : counter_corpus(99, &unused)) pages.push_back(std::move(p));
    ingest(std::move(pages), store);

    const TsvBundle bundle = export_tsv_bundle(store);
    const Store from_tsv = import_tsv_bundle(bundle);
    o.require(joined(export_tsv_bundle(from_tsv)) == joined(bundle), "tsv round trip differs");
    const std::string dump = export_sql_dump(store);
    const Store from_sql = import_sql_dump(dump);
    o.require(export_sql_dump(from_sql) == dump, "sql round trip differs");
    o.require(verify_integrity(from_tsv).ok() && verify_integrity(from_sql).ok(), "findings on clean store");

    Store counter = import_tsv_bundle(bundle);
    counter.unchecked_tables().lang.back().n_translation += 1;
    const auto r1 = verify_integrity(counter);
    o.require(r1.findings.size() == 1 && r1.count("counter-mismatch") == 1, "perturbed counter not isolated");

    Store gap = import_tsv_bundle(bundle);
    auto& meanings = gap.unchecked_tables().meaning;
    const auto it = std::find_if(meanings.begin(), meanings.end(), [](const MeaningRow& m) { return m.meaning_n == 1; });
    o.require(it != meanings.end(), "no second meaning to perturb");
    if (it != meanings.end()) {
        it->meaning_n = 2;
        const auto r2 = verify_integrity(gap);
        o.require(r2.findings.size() == 1 && r2.count("meaning-density") == 1, "meaning_n gap not isolated");
    }
    if (o.pass)
        o.detail = "tsv and sql byte-identical, 0 findings; 1 counter-mismatch, 1 meaning-density under injection";
    return o;
}

// ---------------------------------------------------------------------------
// 8. malformed corpus through the CLI

struct MalformedCorpus {
    std::size_t unbalanced = 0;    ///< by the reference parser
    std::size_t no_language = 0;   ///< pages with no recognized language section
    std::size_t unknown_lang = 0;  ///< unknown level-2 headings
};

MalformedCorpus write_malformed(const fs::path& dir) {
    MalformedCorpus expect;
    std::mt19937 rng(4242);
    const std::vector<std::string> fragments = {
        "{{", "}}", "{{a|", "{{t|sv|", "[[", "]]", "|", "{{{", "}}}", "<!--", "text", "{{trans-top|x",
    };
    for (int i = 0; i < kMalformedPages; ++i) {
        std::string text;
        bool recognized = false;
        switch (i % 5) {
            case 0: {  // unbalanced braces inside an otherwise valid entry
                text = "==English==\n===Noun===\n# a";
                for (int k = 0; k < 6; ++k) text += fragments[rng() % 8];
                text += " [[word]]\n====Synonyms====\n* {{sense|a [[b]]\n";
                recognized = true;
                break;
            }
            case 1:  // unknown languages only
                text = "==Notalanguage" + std::to_string(i) + "==\n===Verb===\n# x\n==Zzzish==\n# y\n";
                expect.unknown_lang += 2;
                break;
            case 2:  // no headings at all
                text = "just some {{prose}} and [[links]]\n* a list\n# numbered\n";
                break;
            case 3:  // empty sections
                text = "==English==\n===Verb===\n\n===Noun===\n====Translations====\n{{trans-top|g}}\n{{trans-bottom}}\n"
                       "====Synonyms====\n";
                recognized = true;
                break;
            default:  // mixed: duplicates, stray headings, bad etymology numbers
                text = "==English==\n===Etymology 0===\n===Etymology 1===\n====Verb====\n# a\n====Verb====\n# b\n"
                       "==English==\n===Noun===\n# c\n==Klingonish==\n=======\n{{t|xx-bogus|w}}\n";
                expect.unknown_lang += 1;
                recognized = true;
                break;
        }
        std::size_t unbalanced = 0;
        ReferenceTemplateParser(text).parse_all(&unbalanced);
        expect.unbalanced += unbalanced;
        if (!recognized) ++expect.no_language;
        char name[16];
        std::snprintf(name, sizeof name, "m%02d.wiki", i);
        write_file(dir / name, text);
    }
    return expect;
}

Outcome malformed_corpus(const fs::path& scratch) {
    Outcome o;
    const fs::path input = scratch / "malformed";
    const MalformedCorpus expect = write_malformed(input);
    std::string out;
    const int rc = run_cli("parse --workers 4 --input '" + input.string() + "' --store '" +
                               (scratch / "malformed-store").string() + "'",
                           &out);
    o.require(rc == 0, "exit code " + std::to_string(rc));
    if (!o.pass) return o;
    const auto v = summary_values(out);
    const auto get = [&](const char* k) { return value_or_zero(v, k); };
    o.require(get("pages_read") == kMalformedPages, "pages_read");
    o.require(get("pages_read") == get("pages_filtered") + get("entry_pages") + get("pages_without_entries"),
              "page conservation");
    o.require(get("pages_without_entries") == get("page-without-entries"), "skipped pages not diagnosed");
    o.require(get("language_headings") ==
                  get("language_sections") + get("unknown-language") + get("duplicate-language"),
              "language heading conservation");
    o.require(get("pos_sections") == get("lang_pos") + get("duplicate-entry"), "pos section conservation");
    o.require(get("unknown-language") == static_cast<long>(expect.unknown_lang), "unknown-language count");
    o.require(get("no-language-section") == static_cast<long>(expect.no_language), "no-language-section count");
    o.require(get("unbalanced-template") == static_cast<long>(expect.unbalanced),
              "unbalanced-template " + std::to_string(get("unbalanced-template")) + " vs reference " +
                  std::to_string(expect.unbalanced));
    o.require(run_cli("verify --store '" + (scratch / "malformed-store").string() + "'") == 0, "verify findings");
    if (o.pass)
        o.detail = "exit 0; " + std::to_string(get("pages_read")) + " pages = " + std::to_string(get("entry_pages")) +
                   " stored + " + std::to_string(get("pages_without_entries")) + " skipped; " +
                   std::to_string(get("diagnostics")) + " diagnostics";
    return o;
}

// ---------------------------------------------------------------------------
// 9. streaming memory bound

std::size_t write_dump(const fs::path& path, int pages, std::size_t* largest) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "<mediawiki xmlns=\"http://www.mediawiki.org/xml/export-0.10/\">\n<siteinfo><sitename>x</sitename>"
           "</siteinfo>\n";
    std::mt19937 rng(77);
    *largest = 0;
    std::size_t total = 0;
    for (int i = 0; i < pages; ++i) {
        std::string text = "==English==\n===Noun===\n";
        // One big page early on; the rest vary between roughly 100 B and 3 KiB.
        const int defs = i == 17 ? 2000 : 1 + static_cast<int>(rng() % 40);
        for (int d = 0; d < defs; ++d)
            text += "# sense " + std::to_string(d) + " of [[word" + std::to_string(rng() % 1000) + "]] &amp; more\n";
        text += "====Translations====\n{{trans-top|sense 0 of}}\n* Swedish: {{t|sv|ord" + std::to_string(i) +
                "}}\n{{trans-bottom}}\n";
        const std::string page = "<page>\n<title>p" + std::to_string(i) + "</title>\n<ns>0</ns>\n<id>" +
                                 std::to_string(i + 1) + "</id>\n<revision><id>1</id><text xml:space=\"preserve\">" +
                                 text + "</text></revision>\n</page>\n";
        *largest = std::max(*largest, page.size());
        total += page.size();
        out << page;
    }
    out << "</mediawiki>\n";
    return total;
}

Outcome memory_bound(const fs::path& scratch) {
    Outcome o;
    std::size_t largest_small = 0;
    std::size_t largest_big = 0;
    const fs::path small = scratch / "dump-1000.xml";
    const fs::path big = scratch / "dump-10000.xml";
    write_dump(small, kDumpPages / 10, &largest_small);
    const std::size_t big_bytes = write_dump(big, kDumpPages, &largest_big);

    auto run_dump = [&](const fs::path& path, ParseSummary* summary, std::size_t* peak) {
        std::ifstream in(path, std::ios::binary);
        XmlDumpReader reader(in, path.string());
        Store store;
        Diagnostics d;
        *summary = run_pipeline(reader, en_profile(), store, d, PipelineOptions{4, 0});
        *peak = reader.peak_buffer_bytes();
    };

    ParseSummary s_small;
    ParseSummary s_big;
    std::size_t peak_small = 0;
    std::size_t peak_big = 0;
    run_dump(small, &s_small, &peak_small);
    const auto t0 = Clock::now();
    run_dump(big, &s_big, &peak_big);
    const double elapsed = seconds_since(t0);

    const std::size_t ceiling = 10 * largest_big + kBufferSlack;
    o.require(s_big.pages_read == static_cast<std::size_t>(kDumpPages), "pages_read");
    o.require(s_big.lang_pos == static_cast<std::size_t>(kDumpPages), "lang_pos");
    o.require(largest_small == largest_big, "generator changed the largest page");
    o.require(peak_big <= ceiling, "peak " + std::to_string(peak_big) + " > ceiling " + std::to_string(ceiling));
    o.require(peak_big == peak_small,
              "peak grows with page count: " + std::to_string(peak_small) + " -> " + std::to_string(peak_big));
    o.require(elapsed < kDumpSeconds, "took " + fmt_seconds(elapsed));
    if (o.pass)
        o.detail = "peak " + std::to_string(peak_big) + " B (ceiling " + std::to_string(ceiling) + ", dump " +
                   std::to_string(big_bytes) + " B), same at 1000 pages, " + fmt_seconds(elapsed);
    return o;
}

}  // namespace

int main() {
    const fs::path scratch = scratch_dir("acceptance");
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"deal fixture end to end", deal_fixture},
        {"strip_markup worked example", strip_worked_example},
        {"link indexing", link_indexing},
        {"translation counter oracle", translation_counters},
        {"template scanner oracle", template_oracle},
        {"determinism across workers", [&] { return determinism(scratch); }},
        {"round trip and fault injection", round_trip},
        {"malformed corpus robustness", [&] { return malformed_corpus(scratch); }},
        {"streaming memory bound", [&] { return memory_bound(scratch); }},
    };
    int failures = 0;
    int index = 1;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << index++ << ". " << name << ": " << o.detail << std::endl;
        if (!o.pass) ++failures;
    }
    fs::remove_all(scratch);
    return failures == 0 ? 0 : 1;
}
