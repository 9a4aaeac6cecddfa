#include "wikimrd/word_card.hpp"

#include <sstream>

#include <json.hpp>

#include "wikimrd/wikitext.hpp"

namespace wikimrd {

namespace {

std::string display(const std::string& wikitext) { return strip_markup(wikitext, {}); }

std::string section_heading(const WordCard::Section& s) {
    return s.language_name + " (" + s.language_code + "), " + s.pos_name + ", Etymology " +
           std::to_string(s.etymology_n + 1);
}

}  // namespace

std::string render_word_card_text(const WordCard& card) {
    std::ostringstream out;
    out << card.page_title << '\n';
    if (card.is_stub()) {
        out << "  (stub: known only as a link target, no entries)\n";
        return out.str();
    }
    for (const auto& s : card.sections) {
        out << "  " << section_heading(s) << '\n';
        out << "    Meanings\n";
        for (const auto& m : s.meanings) out << "      " << m.meaning_n + 1 << ". " << m.plain_text << '\n';
        for (const auto& group : s.relations) {
            out << "    " << group.relation_type << '\n';
            for (const auto& item : group.items) {
                out << "      ";
                if (item.meaning_n) out << '[' << *item.meaning_n + 1 << "] ";
                out << display(item.wikitext);
                if (item.meaning_summary) out << "  (" << *item.meaning_summary << ')';
                out << '\n';
            }
        }
        if (!s.translations.empty()) out << "    Translations\n";
        for (const auto& block : s.translations) {
            out << "      " << block.gloss.value_or("(no gloss)");
            if (block.meaning_n) out << " [" << *block.meaning_n + 1 << ']';
            out << '\n';
            for (const auto& e : block.entries) out << "        " << e.language_name << ": " << display(e.term) << '\n';
        }
    }
    return out.str();
}

std::string render_word_card_json(const WordCard& card) {
    using nlohmann::json;
    auto optional = [](const auto& v) -> json { return v ? json(*v) : json(nullptr); };
    json doc;
    doc["title"] = card.page_title;
    doc["stub"] = card.is_stub();
    doc["sections"] = json::array();
    for (const auto& s : card.sections) {
        json section{{"language", s.language_name},
                     {"language_code", s.language_code},
                     {"pos", s.pos_name},
                     {"etymology_n", s.etymology_n}};
        section["meanings"] = json::array();
        for (const auto& m : s.meanings)
            section["meanings"].push_back({{"meaning_n", m.meaning_n}, {"text", m.plain_text}, {"wikitext", m.raw_wikitext}});
        section["relations"] = json::object();
        for (const auto& group : s.relations) {
            json items = json::array();
            for (const auto& item : group.items)
                items.push_back({{"meaning_n", optional(item.meaning_n)},
                                 {"meaning_summary", optional(item.meaning_summary)},
                                 {"wikitext", item.wikitext}});
            section["relations"][group.relation_type] = std::move(items);
        }
        section["translations"] = json::array();
        for (const auto& block : s.translations) {
            json entries = json::array();
            for (const auto& e : block.entries)
                entries.push_back({{"language", e.language_name}, {"language_code", e.language_code}, {"term", e.term}});
            section["translations"].push_back(
                {{"gloss", optional(block.gloss)}, {"meaning_n", optional(block.meaning_n)}, {"entries", entries}});
        }
        doc["sections"].push_back(std::move(section));
    }
    return doc.dump(2) + "\n";
}

}  // namespace wikimrd
