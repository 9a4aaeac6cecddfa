#include "wikimrd/extractors.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "wikimrd/text.hpp"

namespace wikimrd {

namespace {

bool all_space(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return is_space(c); });
}

// Text before the first heading line of a section body.
std::string_view lead_text(std::string_view body) {
    const auto headings = scan_headings(body);
    if (headings.empty()) return body;
    const Utf8Index index(body);
    return body.substr(0, index.to_byte(headings.front().span.start));
}

// Splits on `separator` outside of `{{...}}` and `[[...]]`.
std::vector<std::string_view> split_top_level(std::string_view s, char separator, std::size_t max_pieces = 0) {
    std::vector<std::string_view> out;
    int braces = 0;
    int brackets = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        const char next = i + 1 < s.size() ? s[i + 1] : '\0';
        if (c == '{' && next == '{') {
            ++braces;
            ++i;
        } else if (c == '}' && next == '}' && braces > 0) {
            --braces;
            ++i;
        } else if (c == '[' && next == '[') {
            ++brackets;
            ++i;
        } else if (c == ']' && next == ']' && brackets > 0) {
            --brackets;
            ++i;
        } else if (c == separator && braces == 0 && brackets == 0 &&
                   (max_pieces == 0 || out.size() + 1 < max_pieces)) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    out.push_back(s.substr(start));
    return out;
}

std::string normalized_template_name(std::string_view name) {
    std::string out = to_lower(trim(name));
    std::replace(out.begin(), out.end(), '_', '-');
    return out;
}

bool is_translation_term_template(std::string_view name) {
    static const std::set<std::string, std::less<>> kNames = {"t", "t+", "t-", "tø", "t+check", "t-check",
                                                              "t-simple"};
    return kNames.count(name) != 0;
}

std::set<std::string> tokens(std::string_view normalized) {
    std::set<std::string> out;
    std::size_t pos = 0;
    while (pos < normalized.size()) {
        std::size_t sp = normalized.find(' ', pos);
        if (sp == std::string_view::npos) sp = normalized.size();
        if (sp > pos) out.emplace(normalized.substr(pos, sp - pos));
        pos = sp + 1;
    }
    return out;
}

}  // namespace

std::vector<Definition> extract_definitions(const PosSection& section, const TemplateRenderPolicy& policy,
                                            Diagnostics* diagnostics) {
    std::vector<Definition> out;
    for (const ListItem& item : scan_list_items(lead_text(section.body))) {
        if (item.markers != "#") continue;
        const std::string raw(trim(item.content));
        if (raw.empty()) {
            report(diagnostics, diag::kEmptyDefinition, section.pos_name);
            continue;
        }
        Definition def;
        def.meaning_n = static_cast<int>(out.size());
        def.raw_wikitext = raw;
        def.plain_text = strip_markup(raw, policy);

        const Utf8Index index(raw);
        std::size_t pos = 0;
        for (const Template& t : scan_templates(raw)) {
            const std::size_t b = index.to_byte(t.span.start);
            if (!all_space(std::string_view(raw).substr(pos, b - pos)) || !policy.is_label(t.name)) break;
            for (auto& label : policy.label_names(t)) def.labels.push_back(std::move(label));
            pos = index.to_byte(t.span.end);
        }
        out.push_back(std::move(def));
    }
    if (out.empty()) report(diagnostics, diag::kPosWithoutDefinitions, section.pos_name);
    return out;
}

std::string normalize_gloss(std::string_view text) {
    std::string lowered = to_lower(text);
    for (char& c : lowered) {
        const auto u = static_cast<unsigned char>(c);
        if (u < 0x80 && !std::isalnum(u) && !is_space(c)) c = ' ';
    }
    return collapse_whitespace(lowered);
}

std::optional<int> match_sense(std::string_view gloss, std::span<const Definition> definitions) {
    const std::string needle = normalize_gloss(gloss);
    if (needle.empty() || definitions.empty()) return std::nullopt;

    std::vector<std::string> haystacks;
    haystacks.reserve(definitions.size());
    for (const Definition& d : definitions) haystacks.push_back(normalize_gloss(d.plain_text));

    std::optional<std::size_t> containing;
    std::size_t containing_count = 0;
    for (std::size_t i = 0; i < haystacks.size(); ++i) {
        if (haystacks[i].find(needle) != std::string::npos) {
            containing = i;
            ++containing_count;
        }
    }
    if (containing_count == 1) return definitions[*containing].meaning_n;

    // Best Jaccard overlap, compared as exact fractions inter/union.
    const auto gloss_tokens = tokens(needle);
    std::size_t best_inter = 0;
    std::size_t best_union = 1;
    std::optional<std::size_t> best;
    bool tie = false;
    for (std::size_t i = 0; i < haystacks.size(); ++i) {
        const auto def_tokens = tokens(haystacks[i]);
        std::size_t inter = 0;
        for (const auto& t : gloss_tokens) inter += def_tokens.count(t);
        const std::size_t uni = gloss_tokens.size() + def_tokens.size() - inter;
        if (uni == 0) continue;
        const auto lhs = inter * best_union;
        const auto rhs = best_inter * uni;
        if (!best || lhs > rhs) {
            best = i;
            best_inter = inter;
            best_union = uni;
            tie = false;
        } else if (lhs == rhs) {
            tie = true;
        }
    }
    if (!best || tie || 2 * best_inter < best_union) return std::nullopt;
    return definitions[*best].meaning_n;
}

std::vector<RelationGroup> extract_relations(const PosSection& section, std::span<const Definition> definitions,
                                             const Profile& profile, Diagnostics* diagnostics) {
    std::vector<RelationGroup> out;
    const std::string_view body = section.body;
    const auto headings = scan_headings(body);
    const Utf8Index index(body);
    for (std::size_t h = 0; h < headings.size(); ++h) {
        const std::string* type = profile.relation_for_heading(headings[h].title);
        if (!type) continue;
        std::size_t begin = body.find('\n', index.to_byte(headings[h].span.end));
        begin = begin == std::string_view::npos ? body.size() : begin + 1;
        std::size_t end = h + 1 < headings.size() ? index.to_byte(headings[h + 1].span.start) : body.size();
        end = std::max(begin, end);

        for (const ListItem& item : scan_list_items(body.substr(begin, end - begin))) {
            if (item.markers.find_first_not_of('*') != std::string::npos) continue;
            RelationGroup group;
            group.relation_type = *type;
            std::string_view rest = item.content;

            const auto templates = scan_templates(rest);
            if (!templates.empty() && templates.front().name == "sense") {
                const Utf8Index item_index(rest);
                const std::size_t b = item_index.to_byte(templates.front().span.start);
                if (all_space(rest.substr(0, b))) {
                    std::vector<std::string> parts;
                    for (const auto& arg : templates.front().positional_args) {
                        std::string part(trim(arg));
                        if (!part.empty()) parts.push_back(std::move(part));
                    }
                    if (!parts.empty()) group.meaning_summary = join(parts, "; ");
                    rest = rest.substr(item_index.to_byte(templates.front().span.end));
                }
            }
            rest = trim(rest);
            while (!rest.empty() && rest.front() == ':') rest = trim(rest.substr(1));

            for (std::string_view piece : split_top_level(rest, ',')) {
                piece = trim(piece);
                if (!piece.empty()) group.targets.emplace_back(piece);
            }
            if (group.targets.empty()) {
                report(diagnostics, diag::kRelationWithoutTargets, *type + ": " + item.content);
                continue;
            }
            if (group.meaning_summary) group.resolved_meaning_n = match_sense(*group.meaning_summary, definitions);
            out.push_back(std::move(group));
        }
    }
    return out;
}

std::vector<TranslationBlock> extract_translations(const PosSection& section,
                                                   std::span<const Definition> definitions,
                                                   const Profile& profile, Diagnostics* diagnostics) {
    std::vector<TranslationBlock> blocks;
    const std::string body = remove_comments(section.body);
    bool open = false;

    for (const LineRange& line : split_lines(body)) {
        const std::string_view text = std::string_view(body).substr(line.begin, line.end - line.begin);
        const auto templates = scan_templates(text);

        bool control = false;
        for (const Template& t : templates) {
            const std::string name = normalized_template_name(t.name);
            if (name == "trans-top") {
                TranslationBlock block;
                if (!t.positional_args.empty()) {
                    std::string gloss(trim(t.positional_args.front()));
                    if (!gloss.empty()) block.gloss = std::move(gloss);
                }
                blocks.push_back(std::move(block));
                open = true;
                control = true;
            } else if (name == "trans-bottom") {
                open = false;
                control = true;
            }
        }
        if (control || !open || text.empty() || text.front() != '*') continue;

        std::string_view item = text;
        while (!item.empty() && (item.front() == '*' || item.front() == ':')) item.remove_prefix(1);
        item = trim(item);
        const auto parts = split_top_level(item, ':', 2);
        std::string_view name_part = parts.size() == 2 ? parts[0] : std::string_view{};
        std::string_view term_part = parts.size() == 2 ? parts[1] : parts[0];

        const LanguageInfo* by_name =
            name_part.empty() ? nullptr : profile.languages.lookup_name(strip_markup(name_part, {}));

        std::vector<std::string> terms;
        const LanguageInfo* by_code = nullptr;
        std::string first_code;
        for (const Template& t : scan_templates(term_part)) {
            if (!is_translation_term_template(t.name) || t.positional_args.size() < 2) continue;
            if (first_code.empty()) {
                first_code = std::string(trim(t.positional_args[0]));
                by_code = profile.languages.lookup_code(first_code);
            }
            std::string word(trim(t.positional_args[1]));
            if (!word.empty()) terms.push_back(std::move(word));
        }
        if (terms.empty()) {
            for (const InternalLink& link : scan_internal_links(term_part)) terms.push_back(link.target);
        }

        const LanguageInfo* lang = by_name ? by_name : by_code;
        if (!lang) {
            report(diagnostics, diag::kUnresolvedLanguage, std::string(item));
            continue;
        }
        if (by_name && by_code && by_name->code != by_code->code) {
            report(diagnostics, diag::kTranslationLanguageMismatch,
                   by_name->name + " line uses code " + first_code);
        }
        if (terms.empty()) {
            report(diagnostics, diag::kTranslationWithoutTerm, std::string(item));
            continue;
        }
        for (auto& term : terms) blocks.back().entries.push_back(TranslationEntry{*lang, std::move(term)});
    }

    for (TranslationBlock& block : blocks)
        if (block.gloss) block.resolved_meaning_n = match_sense(*block.gloss, definitions);

    // One block per meaning (and per gloss among unbound blocks); later
    // duplicates are folded into the first.
    std::vector<TranslationBlock> merged;
    for (TranslationBlock& block : blocks) {
        auto same = std::find_if(merged.begin(), merged.end(), [&](const TranslationBlock& m) {
            if (block.resolved_meaning_n || m.resolved_meaning_n)
                return block.resolved_meaning_n == m.resolved_meaning_n;
            return block.gloss == m.gloss;
        });
        if (same == merged.end()) {
            merged.push_back(std::move(block));
            continue;
        }
        report(diagnostics, diag::kDuplicateTranslationBlock, block.gloss.value_or(""));
        for (auto& e : block.entries) same->entries.push_back(std::move(e));
    }
    return merged;
}

}  // namespace wikimrd
