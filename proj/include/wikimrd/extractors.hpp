#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wikimrd/diagnostics.hpp"
#include "wikimrd/lang_registry.hpp"
#include "wikimrd/segmenter.hpp"
#include "wikimrd/wikitext.hpp"

namespace wikimrd {

struct Definition {
    int meaning_n = 0;
    std::string raw_wikitext;
    std::string plain_text;
    std::vector<std::string> labels;  ///< leading grammar labels, e.g. "transitive"
};

struct RelationGroup {
    std::string relation_type;
    std::optional<std::string> meaning_summary;
    std::vector<std::string> targets;  ///< one raw wikitext item each
    std::optional<int> resolved_meaning_n;
};

struct TranslationEntry {
    LanguageInfo language;
    std::string term_wikitext;
};

struct TranslationBlock {
    std::optional<std::string> gloss;
    std::vector<TranslationEntry> entries;
    std::optional<int> resolved_meaning_n;
};

/// Numbered senses from the "#" lines of the section's definition list
/// (the text before its first subheading). Example ("#:") and quotation
/// ("#*") lines are not senses.
std::vector<Definition> extract_definitions(const PosSection& section, const TemplateRenderPolicy& policy,
                                            Diagnostics* diagnostics = nullptr);

/// Binds a sense gloss to one definition. A unique substring match wins;
/// otherwise the unique best token-set Jaccard overlap of at least 0.5.
/// Ties and weak overlaps stay unbound.
std::optional<int> match_sense(std::string_view gloss, std::span<const Definition> definitions);

/// Lowercase, punctuation replaced by spaces, whitespace collapsed.
std::string normalize_gloss(std::string_view text);

std::vector<RelationGroup> extract_relations(const PosSection& section, std::span<const Definition> definitions,
                                             const Profile& profile, Diagnostics* diagnostics = nullptr);

std::vector<TranslationBlock> extract_translations(const PosSection& section,
                                                   std::span<const Definition> definitions,
                                                   const Profile& profile, Diagnostics* diagnostics = nullptr);

}  // namespace wikimrd
