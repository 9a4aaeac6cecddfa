#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "wikimrd/diagnostics.hpp"
#include "wikimrd/lang_registry.hpp"
#include "wikimrd/wikitext.hpp"

namespace wikimrd {

// Spans below are absolute code point offsets into the page text; bodies
// exclude the heading line that opened them.

struct LanguageSection {
    LanguageInfo language;
    std::string body;
    SourceSpan span;
};

struct EtymologyBlock {
    int etymology_n = 0;  ///< zero-based: "Etymology 2" is 1
    std::string body;
    SourceSpan span;
};

struct PosSection {
    std::string pos_name;  ///< lowercase, member of Profile::pos_names
    std::string body;
    SourceSpan span;
};

/// Addresses one language + part-of-speech + homonym part of an entry.
struct LangPosKey {
    std::string page_title;
    LanguageInfo language;
    std::string pos_name;
    int etymology_n = 0;

    friend bool operator==(const LangPosKey& a, const LangPosKey& b) {
        return a.page_title == b.page_title && a.language.code == b.language.code &&
               a.pos_name == b.pos_name && a.etymology_n == b.etymology_n;
    }
    friend auto operator<=>(const LangPosKey& a, const LangPosKey& b) {
        if (auto c = a.page_title <=> b.page_title; c != 0) return c;
        if (auto c = a.language.code <=> b.language.code; c != 0) return c;
        if (auto c = a.pos_name <=> b.pos_name; c != 0) return c;
        return a.etymology_n <=> b.etymology_n;
    }
};

std::vector<LanguageSection> segment_languages(std::string_view page_text, const Profile& profile,
                                               Diagnostics* diagnostics = nullptr);

std::vector<EtymologyBlock> segment_etymologies(const LanguageSection& section,
                                                Diagnostics* diagnostics = nullptr);

std::vector<PosSection> segment_pos(const EtymologyBlock& block, const Profile& profile,
                                    Diagnostics* diagnostics = nullptr);

}  // namespace wikimrd
