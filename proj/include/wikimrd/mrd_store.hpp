#pragma once

// The machine-readable dictionary: relational tables for pages, language /
// part-of-speech sections, meanings, semantic relations, translations and
// the lemma/inflection data carried by internal links.
//
// Row ids are dense and 1-based (row k of a table has id k). The store is
// single-writer; const access is safe from any number of threads.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "wikimrd/extractors.hpp"
#include "wikimrd/segmenter.hpp"

namespace wikimrd {

using RowId = std::int64_t;

/// A caller broke a documented precondition (empty text, dangling index...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An insert would duplicate a unique key.
class UniquenessViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PageRow {
    RowId id = 0;
    std::string page_title;
};

struct LangRow {
    RowId id = 0;
    std::string code;
    std::string name;
    std::int64_t n_translation = 0;
};

struct PartOfSpeechRow {
    RowId id = 0;
    std::string name;
};

struct LangPosRow {
    RowId id = 0;
    RowId page_id = 0;
    RowId lang_id = 0;
    RowId pos_id = 0;
    std::int64_t etymology_n = 0;
};

struct WikiTextRow {
    RowId id = 0;
    std::string text;
};

struct MeaningRow {
    RowId id = 0;
    RowId lang_pos_id = 0;
    std::int64_t meaning_n = 0;
    RowId wiki_text_id = 0;
    std::string plain_text;
};

struct InflectionRow {
    RowId id = 0;
    std::string inflected_form;
};

struct PageInflectionRow {
    RowId id = 0;
    RowId page_id = 0;
    RowId inflection_id = 0;
};

struct WikiTextWordsRow {
    RowId id = 0;
    RowId wiki_text_id = 0;
    RowId page_inflection_id = 0;
    std::int64_t position = 0;
};

struct RelationTypeRow {
    RowId id = 0;
    std::string name;
};

struct RelationRow {
    RowId id = 0;
    RowId lang_pos_id = 0;
    std::optional<RowId> meaning_id;
    RowId wiki_text_id = 0;
    RowId relation_type_id = 0;
    std::optional<std::string> meaning_summary;
};

struct TranslationRow {
    RowId id = 0;
    RowId lang_pos_id = 0;
    std::optional<RowId> meaning_id;
    std::optional<std::string> gloss;
};

struct TranslationEntryRow {
    RowId id = 0;
    RowId translation_id = 0;
    RowId lang_id = 0;
    RowId wiki_text_id = 0;
};

struct Tables {
    std::vector<PageRow> page;
    std::vector<LangRow> lang;
    std::vector<PartOfSpeechRow> part_of_speech;
    std::vector<LangPosRow> lang_pos;
    std::vector<WikiTextRow> wiki_text;
    std::vector<MeaningRow> meaning;
    std::vector<InflectionRow> inflection;
    std::vector<PageInflectionRow> page_inflection;
    std::vector<WikiTextWordsRow> wiki_text_words;
    std::vector<RelationTypeRow> relation_type;
    std::vector<RelationRow> relation;
    std::vector<TranslationRow> translation;
    std::vector<TranslationEntryRow> translation_entry;
};

/// The relation type inventory every store is seeded with.
std::vector<std::string> default_relation_types();

/// Everything known about one page, assembled for display.
struct WordCard {
    struct Meaning {
        std::int64_t meaning_n = 0;
        std::string plain_text;
        std::string raw_wikitext;
    };
    struct RelationItem {
        std::optional<std::int64_t> meaning_n;
        std::optional<std::string> meaning_summary;
        std::string wikitext;
    };
    struct Relations {
        std::string relation_type;
        std::vector<RelationItem> items;
    };
    struct TranslationItem {
        std::string language_name;
        std::string language_code;
        std::string term;
    };
    struct Translations {
        std::optional<std::string> gloss;
        std::optional<std::int64_t> meaning_n;
        std::vector<TranslationItem> entries;  ///< ordered by language name
    };
    struct Section {
        std::string language_name;
        std::string language_code;
        std::string pos_name;
        std::int64_t etymology_n = 0;
        std::vector<Meaning> meanings;
        std::vector<Relations> relations;        ///< ordered by relation type name
        std::vector<Translations> translations;  ///< bound glosses by meaning, then unbound by gloss
    };

    std::string page_title;
    std::vector<Section> sections;

    bool is_stub() const { return sections.empty(); }
};

class Store {
public:
    /// Creates an empty store with the relation_type table filled.
    explicit Store(const std::vector<std::string>& relation_types = default_relation_types());

    /// Adopts tables as-is (ids must be dense and 1-based) and rebuilds the
    /// lookup indexes. Throws UniquenessViolation on duplicate unique keys.
    static Store from_tables(Tables tables);

    /// Id of the row holding exactly `text`, inserting (and link-indexing)
    /// it on first sight. Throws ContractViolation on blank text.
    RowId intern_wiki_text(std::string_view text);

    /// Records the internal links of a wiki_text row: target page (a title-only
    /// stub when absent), label inflection, their pairing, and one
    /// wiki_text_words row per link ordinal. Re-indexing a row is a no-op.
    std::size_t index_links(RowId wiki_text_id);

    /// Stores one extracted language/part-of-speech section. Throws
    /// UniquenessViolation if `key` is already stored and ContractViolation
    /// on inconsistent input (sparse meaning numbers, dangling sense indexes).
    RowId store_entry(const LangPosKey& key, std::span<const Definition> definitions,
                      std::span<const RelationGroup> relations, std::span<const TranslationBlock> translations);

    std::optional<WordCard> lookup_word_card(std::string_view page_title) const;

    const Tables& tables() const { return tables_; }

    /// Direct row access that bypasses every invariant; for repair tools and
    /// fault-injection tests. Call rebuild_indexes() after structural edits.
    Tables& unchecked_tables() { return tables_; }
    void rebuild_indexes();

    std::optional<RowId> find_page(std::string_view title) const;
    std::optional<RowId> find_lang(std::string_view code) const;

private:
    RowId ensure_page(const std::string& title);
    RowId ensure_lang(const LanguageInfo& language);
    RowId ensure_pos(const std::string& name);
    RowId ensure_inflection(const std::string& form);
    RowId ensure_page_inflection(RowId page_id, RowId inflection_id);

    Tables tables_;
    std::unordered_map<std::string, RowId> page_by_title_;
    std::unordered_map<std::string, RowId> lang_by_code_;
    std::unordered_map<std::string, RowId> lang_by_name_;
    std::unordered_map<std::string, RowId> pos_by_name_;
    std::unordered_map<std::string, RowId> wiki_text_by_text_;
    std::unordered_map<std::string, RowId> inflection_by_form_;
    std::unordered_map<std::string, RowId> relation_type_by_name_;
    std::map<std::pair<RowId, RowId>, RowId> page_inflection_by_pair_;
    std::map<std::tuple<RowId, RowId, RowId, std::int64_t>, RowId> lang_pos_by_key_;
    std::unordered_map<RowId, std::size_t> words_per_text_;
    std::unordered_map<RowId, std::vector<RowId>> lang_pos_by_page_;
};

// ---------------------------------------------------------------------------
// Integrity

struct Finding {
    std::string category;  ///< foreign-key, uniqueness, counter-mismatch, meaning-density, ...
    std::string table;
    RowId row_id = 0;
    std::string detail;
};

struct IntegrityReport {
    std::vector<Finding> findings;

    bool ok() const { return findings.empty(); }
    std::size_t count(std::string_view category) const;
};

/// Checks the store's tables directly (not its indexes): dense ids,
/// referential integrity, unique keys, translation counters, dense meaning
/// numbers, word positions, and the relation type inventory.
IntegrityReport verify_integrity(const Store& store);

inline constexpr std::size_t kRelationTypeCount = 9;

}  // namespace wikimrd
