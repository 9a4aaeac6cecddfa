#include "wikimrd/mrd_store.hpp"

#include <algorithm>
#include <set>

#include "wikimrd/text.hpp"

namespace wikimrd {

std::vector<std::string> default_relation_types() {
    return {"synonym", "antonym", "hypernym", "hyponym", "holonym",
            "meronym", "troponym", "coordinate term", "see-also"};
}

namespace {

template <typename Row>
RowId next_id(const std::vector<Row>& rows) {
    return static_cast<RowId>(rows.size()) + 1;
}

template <typename Row>
bool valid_id(const std::vector<Row>& rows, RowId id) {
    return id >= 1 && id <= static_cast<RowId>(rows.size());
}

template <typename Row>
const Row& row(const std::vector<Row>& rows, RowId id) {
    return rows[static_cast<std::size_t>(id - 1)];
}

template <typename Row>
Row& row(std::vector<Row>& rows, RowId id) {
    return rows[static_cast<std::size_t>(id - 1)];
}

}  // namespace

Store::Store(const std::vector<std::string>& relation_types) {
    for (const auto& name : relation_types) {
        if (relation_type_by_name_.count(name)) throw UniquenessViolation("duplicate relation type " + name);
        const RowId id = next_id(tables_.relation_type);
        tables_.relation_type.push_back({id, name});
        relation_type_by_name_.emplace(name, id);
    }
}

Store Store::from_tables(Tables tables) {
    Store store(std::vector<std::string>{});
    store.tables_ = std::move(tables);
    store.rebuild_indexes();
    return store;
}

void Store::rebuild_indexes() {
    page_by_title_.clear();
    lang_by_code_.clear();
    lang_by_name_.clear();
    pos_by_name_.clear();
    wiki_text_by_text_.clear();
    inflection_by_form_.clear();
    relation_type_by_name_.clear();
    page_inflection_by_pair_.clear();
    lang_pos_by_key_.clear();
    words_per_text_.clear();
    lang_pos_by_page_.clear();

    auto check_ids = [](const auto& rows, const char* table) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].id != static_cast<RowId>(i) + 1)
                throw ContractViolation(std::string(table) + ": ids must be dense and 1-based (row " +
                                        std::to_string(i + 1) + " has id " + std::to_string(rows[i].id) + ")");
    };
    auto unique = [](auto& index, auto key, RowId id, const char* table) {
        if (!index.emplace(std::move(key), id).second)
            throw UniquenessViolation(std::string(table) + ": duplicate key at id " + std::to_string(id));
    };

    check_ids(tables_.page, "page");
    check_ids(tables_.lang, "lang");
    check_ids(tables_.part_of_speech, "part_of_speech");
    check_ids(tables_.lang_pos, "lang_pos");
    check_ids(tables_.wiki_text, "wiki_text");
    check_ids(tables_.meaning, "meaning");
    check_ids(tables_.inflection, "inflection");
    check_ids(tables_.page_inflection, "page_inflection");
    check_ids(tables_.wiki_text_words, "wiki_text_words");
    check_ids(tables_.relation_type, "relation_type");
    check_ids(tables_.relation, "relation");
    check_ids(tables_.translation, "translation");
    check_ids(tables_.translation_entry, "translation_entry");

    for (const auto& r : tables_.page) unique(page_by_title_, r.page_title, r.id, "page");
    for (const auto& r : tables_.lang) {
        unique(lang_by_code_, r.code, r.id, "lang");
        unique(lang_by_name_, r.name, r.id, "lang");
    }
    for (const auto& r : tables_.part_of_speech) unique(pos_by_name_, r.name, r.id, "part_of_speech");
    for (const auto& r : tables_.wiki_text) unique(wiki_text_by_text_, r.text, r.id, "wiki_text");
    for (const auto& r : tables_.inflection) unique(inflection_by_form_, r.inflected_form, r.id, "inflection");
    for (const auto& r : tables_.relation_type) unique(relation_type_by_name_, r.name, r.id, "relation_type");
    for (const auto& r : tables_.page_inflection)
        unique(page_inflection_by_pair_, std::make_pair(r.page_id, r.inflection_id), r.id, "page_inflection");
    for (const auto& r : tables_.lang_pos) {
        unique(lang_pos_by_key_, std::make_tuple(r.page_id, r.lang_id, r.pos_id, r.etymology_n), r.id, "lang_pos");
        lang_pos_by_page_[r.page_id].push_back(r.id);
    }
    for (const auto& r : tables_.wiki_text_words) ++words_per_text_[r.wiki_text_id];
}

std::optional<RowId> Store::find_page(std::string_view title) const {
    auto it = page_by_title_.find(std::string(title));
    if (it == page_by_title_.end()) return std::nullopt;
    return it->second;
}

std::optional<RowId> Store::find_lang(std::string_view code) const {
    auto it = lang_by_code_.find(std::string(code));
    if (it == lang_by_code_.end()) return std::nullopt;
    return it->second;
}

RowId Store::ensure_page(const std::string& title) {
    if (auto it = page_by_title_.find(title); it != page_by_title_.end()) return it->second;
    const RowId id = next_id(tables_.page);
    tables_.page.push_back({id, title});
    page_by_title_.emplace(title, id);
    return id;
}

RowId Store::ensure_lang(const LanguageInfo& language) {
    if (auto it = lang_by_code_.find(language.code); it != lang_by_code_.end()) {
        if (row(tables_.lang, it->second).name != language.name)
            throw ContractViolation("language code " + language.code + " already stored under another name");
        return it->second;
    }
    if (lang_by_name_.count(language.name))
        throw ContractViolation("language name " + language.name + " already stored under another code");
    const RowId id = next_id(tables_.lang);
    tables_.lang.push_back({id, language.code, language.name, 0});
    lang_by_code_.emplace(language.code, id);
    lang_by_name_.emplace(language.name, id);
    return id;
}

RowId Store::ensure_pos(const std::string& name) {
    if (auto it = pos_by_name_.find(name); it != pos_by_name_.end()) return it->second;
    const RowId id = next_id(tables_.part_of_speech);
    tables_.part_of_speech.push_back({id, name});
    pos_by_name_.emplace(name, id);
    return id;
}

RowId Store::ensure_inflection(const std::string& form) {
    if (auto it = inflection_by_form_.find(form); it != inflection_by_form_.end()) return it->second;
    const RowId id = next_id(tables_.inflection);
    tables_.inflection.push_back({id, form});
    inflection_by_form_.emplace(form, id);
    return id;
}

RowId Store::ensure_page_inflection(RowId page_id, RowId inflection_id) {
    const auto key = std::make_pair(page_id, inflection_id);
    if (auto it = page_inflection_by_pair_.find(key); it != page_inflection_by_pair_.end()) return it->second;
    const RowId id = next_id(tables_.page_inflection);
    tables_.page_inflection.push_back({id, page_id, inflection_id});
    page_inflection_by_pair_.emplace(key, id);
    return id;
}

RowId Store::intern_wiki_text(std::string_view text) {
    if (trim(text).empty()) throw ContractViolation("cannot intern blank wiki text");
    const std::string key(text);
    if (auto it = wiki_text_by_text_.find(key); it != wiki_text_by_text_.end()) return it->second;
    const RowId id = next_id(tables_.wiki_text);
    tables_.wiki_text.push_back({id, key});
    wiki_text_by_text_.emplace(key, id);
    index_links(id);
    return id;
}

std::size_t Store::index_links(RowId wiki_text_id) {
    if (!valid_id(tables_.wiki_text, wiki_text_id))
        throw ContractViolation("no wiki_text row " + std::to_string(wiki_text_id));
    if (auto it = words_per_text_.find(wiki_text_id); it != words_per_text_.end()) return it->second;
    // Copy: inserting pages below may not touch wiki_text, but keep the scan
    // independent of table growth anyway.
    const std::string text = row(tables_.wiki_text, wiki_text_id).text;
    std::int64_t position = 0;
    for (const InternalLink& link : scan_internal_links(text)) {
        const RowId page_id = ensure_page(link.target);
        const RowId inflection_id = ensure_inflection(link.label);
        const RowId pair_id = ensure_page_inflection(page_id, inflection_id);
        tables_.wiki_text_words.push_back({next_id(tables_.wiki_text_words), wiki_text_id, pair_id, position++});
    }
    words_per_text_[wiki_text_id] = static_cast<std::size_t>(position);
    return static_cast<std::size_t>(position);
}

RowId Store::store_entry(const LangPosKey& key, std::span<const Definition> definitions,
                         std::span<const RelationGroup> relations, std::span<const TranslationBlock> translations) {
    if (trim(key.page_title).empty()) throw ContractViolation("blank page title");
    if (key.etymology_n < 0) throw ContractViolation("negative etymology number");
    const std::string pos_name = to_lower(trim(key.pos_name));
    if (pos_name.empty()) throw ContractViolation("blank part of speech");

    const auto n_defs = static_cast<int>(definitions.size());
    for (int i = 0; i < n_defs; ++i) {
        if (definitions[i].meaning_n != i) throw ContractViolation("meaning numbers must be dense from zero");
        if (trim(definitions[i].raw_wikitext).empty()) throw ContractViolation("blank definition text");
    }
    auto check_sense = [&](const std::optional<int>& n) {
        if (n && (*n < 0 || *n >= n_defs)) throw ContractViolation("sense index out of range");
    };
    for (const auto& group : relations) {
        if (!relation_type_by_name_.count(group.relation_type))
            throw ContractViolation("unknown relation type " + group.relation_type);
        check_sense(group.resolved_meaning_n);
        for (const auto& target : group.targets)
            if (trim(target).empty()) throw ContractViolation("blank relation target");
    }
    std::set<int> bound_meanings;
    for (const auto& block : translations) {
        check_sense(block.resolved_meaning_n);
        if (block.resolved_meaning_n && !bound_meanings.insert(*block.resolved_meaning_n).second)
            throw ContractViolation("more than one translation block for one meaning");
        for (const auto& entry : block.entries)
            if (trim(entry.term_wikitext).empty()) throw ContractViolation("blank translation term");
    }
    {
        const auto page = page_by_title_.find(key.page_title);
        const auto lang = lang_by_code_.find(key.language.code);
        const auto pos = pos_by_name_.find(pos_name);
        if (page != page_by_title_.end() && lang != lang_by_code_.end() && pos != pos_by_name_.end() &&
            lang_pos_by_key_.count({page->second, lang->second, pos->second, key.etymology_n})) {
            throw UniquenessViolation("lang_pos already stored: " + key.page_title + "/" + key.language.code + "/" +
                                      pos_name + "/" + std::to_string(key.etymology_n));
        }
    }

    const RowId page_id = ensure_page(key.page_title);
    const RowId lang_id = ensure_lang(key.language);
    const RowId pos_id = ensure_pos(pos_name);
    const RowId lang_pos_id = next_id(tables_.lang_pos);
    tables_.lang_pos.push_back({lang_pos_id, page_id, lang_id, pos_id, key.etymology_n});
    lang_pos_by_key_.emplace(std::make_tuple(page_id, lang_id, pos_id, std::int64_t{key.etymology_n}), lang_pos_id);
    lang_pos_by_page_[page_id].push_back(lang_pos_id);

    std::vector<RowId> meaning_ids;
    for (const Definition& def : definitions) {
        const RowId text_id = intern_wiki_text(def.raw_wikitext);
        const RowId id = next_id(tables_.meaning);
        tables_.meaning.push_back({id, lang_pos_id, def.meaning_n, text_id, def.plain_text});
        meaning_ids.push_back(id);
    }
    auto meaning_of = [&](const std::optional<int>& n) -> std::optional<RowId> {
        if (!n) return std::nullopt;
        return meaning_ids[static_cast<std::size_t>(*n)];
    };

    for (const RelationGroup& group : relations) {
        const RowId type_id = relation_type_by_name_.at(group.relation_type);
        for (const std::string& target : group.targets) {
            const RowId text_id = intern_wiki_text(target);
            tables_.relation.push_back({next_id(tables_.relation), lang_pos_id, meaning_of(group.resolved_meaning_n),
                                        text_id, type_id, group.meaning_summary});
        }
    }

    for (const TranslationBlock& block : translations) {
        const RowId translation_id = next_id(tables_.translation);
        tables_.translation.push_back({translation_id, lang_pos_id, meaning_of(block.resolved_meaning_n), block.gloss});
        for (const TranslationEntry& entry : block.entries) {
            const RowId target_lang = ensure_lang(entry.language);
            const RowId text_id = intern_wiki_text(entry.term_wikitext);
            tables_.translation_entry.push_back({next_id(tables_.translation_entry), translation_id, target_lang, text_id});
            ++row(tables_.lang, target_lang).n_translation;
        }
    }
    return lang_pos_id;
}

std::optional<WordCard> Store::lookup_word_card(std::string_view page_title) const {
    const auto page_id = find_page(page_title);
    if (!page_id) return std::nullopt;
    WordCard card;
    card.page_title = std::string(page_title);

    auto it = lang_pos_by_page_.find(*page_id);
    if (it == lang_pos_by_page_.end()) return card;
    const std::vector<RowId>& lang_pos_ids = it->second;
    const std::set<RowId> wanted(lang_pos_ids.begin(), lang_pos_ids.end());

    std::map<RowId, WordCard::Section> sections;
    for (RowId id : lang_pos_ids) {
        const LangPosRow& lp = row(tables_.lang_pos, id);
        WordCard::Section s;
        s.language_code = row(tables_.lang, lp.lang_id).code;
        s.language_name = row(tables_.lang, lp.lang_id).name;
        s.pos_name = row(tables_.part_of_speech, lp.pos_id).name;
        s.etymology_n = lp.etymology_n;
        sections.emplace(id, std::move(s));
    }

    std::map<RowId, std::int64_t> meaning_numbers;
    for (const MeaningRow& m : tables_.meaning) {
        if (!wanted.count(m.lang_pos_id)) continue;
        meaning_numbers[m.id] = m.meaning_n;
        sections[m.lang_pos_id].meanings.push_back(
            {m.meaning_n, m.plain_text, row(tables_.wiki_text, m.wiki_text_id).text});
    }
    auto number_of = [&](const std::optional<RowId>& meaning_id) -> std::optional<std::int64_t> {
        if (!meaning_id) return std::nullopt;
        auto found = meaning_numbers.find(*meaning_id);
        if (found == meaning_numbers.end()) return std::nullopt;
        return found->second;
    };

    std::map<RowId, std::map<std::string, std::vector<WordCard::RelationItem>>> relations;
    for (const RelationRow& r : tables_.relation) {
        if (!wanted.count(r.lang_pos_id)) continue;
        relations[r.lang_pos_id][row(tables_.relation_type, r.relation_type_id).name].push_back(
            {number_of(r.meaning_id), r.meaning_summary, row(tables_.wiki_text, r.wiki_text_id).text});
    }

    std::map<RowId, WordCard::Translations> translations;  // by translation id
    std::map<RowId, RowId> translation_owner;
    for (const TranslationRow& t : tables_.translation) {
        if (!wanted.count(t.lang_pos_id)) continue;
        translations[t.id] = {t.gloss, number_of(t.meaning_id), {}};
        translation_owner[t.id] = t.lang_pos_id;
    }
    for (const TranslationEntryRow& e : tables_.translation_entry) {
        auto found = translations.find(e.translation_id);
        if (found == translations.end()) continue;
        const LangRow& lang = row(tables_.lang, e.lang_id);
        found->second.entries.push_back({lang.name, lang.code, row(tables_.wiki_text, e.wiki_text_id).text});
    }

    for (auto& [id, section] : sections) {
        std::sort(section.meanings.begin(), section.meanings.end(),
                  [](const auto& a, const auto& b) { return a.meaning_n < b.meaning_n; });
        for (auto& [type, items] : relations[id]) {
            std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
                // Bound items first, in meaning order; unbound after.
                const auto ka = std::make_tuple(!a.meaning_n, a.meaning_n.value_or(0), a.meaning_summary, a.wikitext);
                const auto kb = std::make_tuple(!b.meaning_n, b.meaning_n.value_or(0), b.meaning_summary, b.wikitext);
                return ka < kb;
            });
            section.relations.push_back({type, std::move(items)});
        }
        for (auto& [tid, group] : translations) {
            if (translation_owner[tid] != id) continue;
            std::sort(group.entries.begin(), group.entries.end(), [](const auto& a, const auto& b) {
                return std::tie(a.language_name, a.term) < std::tie(b.language_name, b.term);
            });
            section.translations.push_back(std::move(group));
        }
        std::sort(section.translations.begin(), section.translations.end(), [](const auto& a, const auto& b) {
            return std::make_tuple(!a.meaning_n, a.meaning_n.value_or(0), a.gloss) <
                   std::make_tuple(!b.meaning_n, b.meaning_n.value_or(0), b.gloss);
        });
        card.sections.push_back(std::move(section));
    }
    std::sort(card.sections.begin(), card.sections.end(), [](const auto& a, const auto& b) {
        return std::tie(a.language_name, a.etymology_n, a.pos_name) <
               std::tie(b.language_name, b.etymology_n, b.pos_name);
    });
    return card;
}

// ---------------------------------------------------------------------------
// Integrity

std::size_t IntegrityReport::count(std::string_view category) const {
    return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(),
                                                  [&](const Finding& f) { return f.category == category; }));
}

IntegrityReport verify_integrity(const Store& store) {
    const Tables& t = store.tables();
    IntegrityReport report;
    auto add = [&](const char* category, const char* table, RowId id, std::string detail) {
        report.findings.push_back({category, table, id, std::move(detail)});
    };

    auto dense = [&](const auto& rows, const char* table) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].id != static_cast<RowId>(i) + 1)
                add("id-sequence", table, rows[i].id, "expected id " + std::to_string(i + 1));
    };
    dense(t.page, "page");
    dense(t.lang, "lang");
    dense(t.part_of_speech, "part_of_speech");
    dense(t.lang_pos, "lang_pos");
    dense(t.wiki_text, "wiki_text");
    dense(t.meaning, "meaning");
    dense(t.inflection, "inflection");
    dense(t.page_inflection, "page_inflection");
    dense(t.wiki_text_words, "wiki_text_words");
    dense(t.relation_type, "relation_type");
    dense(t.relation, "relation");
    dense(t.translation, "translation");
    dense(t.translation_entry, "translation_entry");

    // Foreign keys resolve by position, matching the dense-id layout.
    auto fk = [&](const auto& target, RowId ref, const char* table, RowId id, const char* column) {
        if (!valid_id(target, ref)) {
            add("foreign-key", table, id, std::string(column) + " = " + std::to_string(ref) + " does not resolve");
            return false;
        }
        return true;
    };
    for (const auto& r : t.lang_pos) {
        fk(t.page, r.page_id, "lang_pos", r.id, "page_id");
        fk(t.lang, r.lang_id, "lang_pos", r.id, "lang_id");
        fk(t.part_of_speech, r.pos_id, "lang_pos", r.id, "pos_id");
        if (r.etymology_n < 0) add("range", "lang_pos", r.id, "negative etymology_n");
    }
    for (const auto& r : t.meaning) {
        fk(t.lang_pos, r.lang_pos_id, "meaning", r.id, "lang_pos_id");
        fk(t.wiki_text, r.wiki_text_id, "meaning", r.id, "wiki_text_id");
    }
    for (const auto& r : t.page_inflection) {
        fk(t.page, r.page_id, "page_inflection", r.id, "page_id");
        fk(t.inflection, r.inflection_id, "page_inflection", r.id, "inflection_id");
    }
    for (const auto& r : t.wiki_text_words) {
        fk(t.wiki_text, r.wiki_text_id, "wiki_text_words", r.id, "wiki_text_id");
        fk(t.page_inflection, r.page_inflection_id, "wiki_text_words", r.id, "page_inflection_id");
    }
    for (const auto& r : t.relation) {
        const bool lp_ok = fk(t.lang_pos, r.lang_pos_id, "relation", r.id, "lang_pos_id");
        fk(t.wiki_text, r.wiki_text_id, "relation", r.id, "wiki_text_id");
        fk(t.relation_type, r.relation_type_id, "relation", r.id, "relation_type_id");
        if (r.meaning_id && fk(t.meaning, *r.meaning_id, "relation", r.id, "meaning_id") && lp_ok &&
            row(t.meaning, *r.meaning_id).lang_pos_id != r.lang_pos_id)
            add("foreign-key", "relation", r.id, "meaning belongs to another lang_pos");
    }
    for (const auto& r : t.translation) {
        const bool lp_ok = fk(t.lang_pos, r.lang_pos_id, "translation", r.id, "lang_pos_id");
        if (r.meaning_id && fk(t.meaning, *r.meaning_id, "translation", r.id, "meaning_id") && lp_ok &&
            row(t.meaning, *r.meaning_id).lang_pos_id != r.lang_pos_id)
            add("foreign-key", "translation", r.id, "meaning belongs to another lang_pos");
    }
    for (const auto& r : t.translation_entry) {
        fk(t.translation, r.translation_id, "translation_entry", r.id, "translation_id");
        fk(t.lang, r.lang_id, "translation_entry", r.id, "lang_id");
        fk(t.wiki_text, r.wiki_text_id, "translation_entry", r.id, "wiki_text_id");
    }

    auto unique = [&](const auto& rows, const char* table, auto key_of) {
        std::map<decltype(key_of(rows.front())), RowId> seen;
        for (const auto& r : rows) {
            auto [it, inserted] = seen.emplace(key_of(r), r.id);
            if (!inserted) add("uniqueness", table, r.id, "duplicates row " + std::to_string(it->second));
        }
    };
    if (!t.page.empty()) unique(t.page, "page", [](const PageRow& r) { return r.page_title; });
    if (!t.lang.empty()) {
        unique(t.lang, "lang", [](const LangRow& r) { return r.code; });
        unique(t.lang, "lang", [](const LangRow& r) { return r.name; });
    }
    if (!t.part_of_speech.empty())
        unique(t.part_of_speech, "part_of_speech", [](const PartOfSpeechRow& r) { return r.name; });
    if (!t.wiki_text.empty()) unique(t.wiki_text, "wiki_text", [](const WikiTextRow& r) { return r.text; });
    if (!t.inflection.empty())
        unique(t.inflection, "inflection", [](const InflectionRow& r) { return r.inflected_form; });
    if (!t.relation_type.empty())
        unique(t.relation_type, "relation_type", [](const RelationTypeRow& r) { return r.name; });
    if (!t.lang_pos.empty())
        unique(t.lang_pos, "lang_pos", [](const LangPosRow& r) {
            return std::make_tuple(r.page_id, r.lang_id, r.pos_id, r.etymology_n);
        });
    if (!t.meaning.empty())
        unique(t.meaning, "meaning", [](const MeaningRow& r) { return std::make_pair(r.lang_pos_id, r.meaning_n); });
    if (!t.page_inflection.empty())
        unique(t.page_inflection, "page_inflection",
               [](const PageInflectionRow& r) { return std::make_pair(r.page_id, r.inflection_id); });
    if (!t.wiki_text_words.empty())
        unique(t.wiki_text_words, "wiki_text_words",
               [](const WikiTextWordsRow& r) { return std::make_pair(r.wiki_text_id, r.position); });
    {
        std::map<RowId, RowId> seen;
        for (const auto& r : t.translation) {
            if (!r.meaning_id) continue;
            auto [it, inserted] = seen.emplace(*r.meaning_id, r.id);
            if (!inserted) add("uniqueness", "translation", r.id, "second translation for meaning");
        }
    }

    for (const auto& r : t.page)
        if (trim(r.page_title).empty()) add("empty-value", "page", r.id, "blank page_title");
    for (const auto& r : t.wiki_text)
        if (trim(r.text).empty()) add("empty-value", "wiki_text", r.id, "blank text");
    for (const auto& r : t.part_of_speech)
        if (r.name != to_lower(r.name)) add("pos-normalization", "part_of_speech", r.id, r.name);

    {
        std::vector<std::int64_t> recount(t.lang.size(), 0);
        for (const auto& e : t.translation_entry)
            if (valid_id(t.lang, e.lang_id)) ++recount[static_cast<std::size_t>(e.lang_id - 1)];
        for (const auto& l : t.lang)
            if (valid_id(t.lang, l.id) && l.n_translation != recount[static_cast<std::size_t>(l.id - 1)])
                add("counter-mismatch", "lang", l.id,
                    l.code + ": n_translation " + std::to_string(l.n_translation) + ", entries " +
                        std::to_string(recount[static_cast<std::size_t>(l.id - 1)]));
    }

    {
        std::map<RowId, std::vector<std::int64_t>> numbers;
        for (const auto& m : t.meaning) numbers[m.lang_pos_id].push_back(m.meaning_n);
        for (auto& [lang_pos_id, ns] : numbers) {
            std::sort(ns.begin(), ns.end());
            for (std::size_t i = 0; i < ns.size(); ++i) {
                if (ns[i] != static_cast<std::int64_t>(i)) {
                    add("meaning-density", "lang_pos", lang_pos_id, "meaning_n not dense from zero");
                    break;
                }
            }
        }
    }
    {
        std::map<RowId, std::vector<std::int64_t>> positions;
        for (const auto& w : t.wiki_text_words) positions[w.wiki_text_id].push_back(w.position);
        for (auto& [text_id, ps] : positions) {
            std::sort(ps.begin(), ps.end());
            for (std::size_t i = 0; i < ps.size(); ++i) {
                if (ps[i] != static_cast<std::int64_t>(i)) {
                    add("word-position", "wiki_text", text_id, "link positions not dense from zero");
                    break;
                }
            }
        }
    }

    if (t.relation_type.size() != kRelationTypeCount)
        add("relation-type-cardinality", "relation_type", 0,
            std::to_string(t.relation_type.size()) + " rows, expected " + std::to_string(kRelationTypeCount));
    return report;
}

}  // namespace wikimrd
