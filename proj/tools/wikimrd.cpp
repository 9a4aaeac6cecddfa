// wikimrd: build and query a machine-readable dictionary from Wiktionary dumps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wikimrd/dump_ingest.hpp"
#include "wikimrd/lang_registry.hpp"
#include "wikimrd/mrd_store.hpp"
#include "wikimrd/pipeline.hpp"
#include "wikimrd/store_io.hpp"
#include "wikimrd/word_card.hpp"

namespace fs = std::filesystem;
using namespace wikimrd;

namespace {

enum Exit : int {
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kNotFound = 3,
    kFindings = 4,
};

struct ParseArgs {
    std::string profile = "en";
    std::string input;
    std::string store;
    unsigned workers = 1;
    std::string registry;
    bool quiet = false;
};

void print_summary(const ParseSummary& s) {
    std::cout << "pages_read: " << s.pages_read << '\n'
              << "pages_filtered: " << s.pages_filtered << '\n'
              << "entry_pages: " << s.entry_pages << '\n'
              << "pages_without_entries: " << s.pages_without_entries << '\n'
              << "language_headings: " << s.language_headings << '\n'
              << "language_sections: " << s.language_sections << '\n'
              << "pos_sections: " << s.pos_sections << '\n'
              << "lang_pos: " << s.lang_pos << '\n'
              << "meanings: " << s.meanings << '\n'
              << "relations: " << s.relations << '\n'
              << "translation_entries: " << s.translation_entries << '\n';
    std::size_t total = 0;
    for (const auto& [category, n] : s.diagnostics) total += n;
    std::cout << "diagnostics: " << total << '\n';
    for (const auto& [category, n] : s.diagnostics) std::cout << "  " << category << ": " << n << '\n';
}

int cmd_parse(const ParseArgs& args) {
    Profile profile;
    try {
        const fs::path dir = args.registry.empty() ? default_registry_dir() : fs::path(args.registry);
        profile = load_profile(parse_profile_id(args.profile), dir);
    } catch (const std::exception& e) {
        std::cerr << "wikimrd: " << e.what() << '\n';
        return kUsage;
    }

    std::unique_ptr<PageSource> source;
    try {
        source = open_page_source(args.input);
    } catch (const std::exception& e) {
        std::cerr << "wikimrd: " << e.what() << '\n';
        return kIo;
    }

    Diagnostics diagnostics([quiet = args.quiet](const Diagnostic& d) {
        if (!quiet) std::cerr << "DIAG\t" << d.category << '\t' << d.page << '\t' << d.detail << '\n';
    });
    Store store;
    int status = kOk;
    ParseSummary summary;
    try {
        summary = run_pipeline(*source, profile, store, diagnostics, PipelineOptions{args.workers, 0});
    } catch (const DumpError& e) {
        std::cerr << "wikimrd: malformed dump: " << e.what() << '\n';
        status = kIo;
    } catch (const std::exception& e) {
        std::cerr << "wikimrd: " << e.what() << '\n';
        status = kIo;
    }

    try {
        if (fs::exists(args.store) && !fs::is_directory(args.store))
            throw std::runtime_error("store path exists and is not a directory: " + args.store);
        save_store(store, args.store);
    } catch (const std::exception& e) {
        std::cerr << "wikimrd: " << e.what() << '\n';
        return kIo;
    }
    if (status == kOk) print_summary(summary);
    return status;
}

bool open_store(const std::string& path, std::optional<Store>& store) {
    try {
        store.emplace(load_store(path));
        return true;
    } catch (const std::exception& e) {
        std::cerr << "wikimrd: cannot load store: " << e.what() << '\n';
        return false;
    }
}

int cmd_lookup(const std::string& store_path, const std::string& title, const std::string& format) {
    std::optional<Store> store;
    if (!open_store(store_path, store)) return kIo;
    const auto card = store->lookup_word_card(title);
    if (!card) {
        std::cerr << "wikimrd: not found: " << title << '\n';
        return kNotFound;
    }
    std::cout << (format == "doc" ? render_word_card_json(*card) : render_word_card_text(*card));
    return kOk;
}

int cmd_export(const std::string& store_path, const std::string& format, const std::string& out) {
    std::optional<Store> store;
    if (!open_store(store_path, store)) return kIo;
    try {
        if (parse_export_format(format) == ExportFormat::tsv_bundle) {
            write_tsv_bundle(export_tsv_bundle(*store), out);
        } else {
            std::ofstream file(out, std::ios::binary | std::ios::trunc);
            file << export_sql_dump(*store);
            if (!file) throw std::runtime_error("cannot write " + out);
        }
    } catch (const std::exception& e) {
        std::cerr << "wikimrd: " << e.what() << '\n';
        return kIo;
    }
    return kOk;
}

int cmd_verify(const std::string& store_path) {
    std::optional<Store> store;
    try {
        store.emplace(load_store(store_path, false));
    } catch (const ImportError& e) {
        std::cerr << "wikimrd: " << e.what() << '\n';
        return kFindings;
    } catch (const std::exception& e) {
        std::cerr << "wikimrd: cannot load store: " << e.what() << '\n';
        return kIo;
    }
    const IntegrityReport report = verify_integrity(*store);
    for (const Finding& f : report.findings)
        std::cout << "FINDING\t" << f.category << '\t' << f.table << '\t' << f.row_id << '\t' << f.detail << '\n';
    std::cout << "findings: " << report.findings.size() << '\n';
    return report.ok() ? kOk : kFindings;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Build and query a machine-readable dictionary from Wiktionary dumps"};
    app.require_subcommand(1);

    ParseArgs parse_args;
    auto* parse = app.add_subcommand("parse", "Ingest a dump or fixture directory into a store");
    parse->add_option("--profile", parse_args.profile, "Wiktionary edition")->check(CLI::IsMember({"en", "ru"}));
    parse->add_option("--input", parse_args.input, "XML dump, fixture directory, or - for stdin")->required();
    parse->add_option("--store", parse_args.store, "Output store directory")->required();
    parse->add_option("--workers", parse_args.workers, "Extraction threads")->check(CLI::PositiveNumber);
    parse->add_option("--registry", parse_args.registry, "Registry data directory");
    parse->add_flag("-q,--quiet", parse_args.quiet, "Do not print diagnostics");

    std::string store_path;
    std::string title;
    std::string format = "text";
    auto* lookup = app.add_subcommand("lookup", "Print the word card of a page");
    lookup->add_option("--store", store_path, "Store directory")->required();
    lookup->add_option("--title", title, "Page title")->required();
    lookup->add_option("--format", format, "text or doc")->check(CLI::IsMember({"text", "doc"}));

    std::string export_format;
    std::string out;
    auto* exp = app.add_subcommand("export", "Write a canonical export of a store");
    exp->add_option("--store", store_path, "Store directory")->required();
    exp->add_option("--format", export_format, "tsv-bundle or sql-dump")
        ->required()
        ->check(CLI::IsMember({"tsv-bundle", "sql-dump"}));
    exp->add_option("--out", out, "Output directory (tsv-bundle) or file (sql-dump)")->required();

    auto* verify = app.add_subcommand("verify", "Check a store's integrity");
    verify->add_option("--store", store_path, "Store directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (parse->parsed()) return cmd_parse(parse_args);
    if (lookup->parsed()) return cmd_lookup(store_path, title, format);
    if (exp->parsed()) return cmd_export(store_path, export_format, out);
    if (verify->parsed()) return cmd_verify(store_path);
    return kUsage;
}
