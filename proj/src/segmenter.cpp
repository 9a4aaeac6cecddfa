#include "wikimrd/segmenter.hpp"

#include <charconv>
#include <optional>
#include <set>

#include "wikimrd/text.hpp"

namespace wikimrd {

namespace {

// A heading resolved to byte offsets within the text it was scanned from.
struct HeadingAt {
    const Heading* heading;
    std::size_t line_begin;  // byte offset of the heading line
    std::size_t body_begin;  // byte offset just past the heading line
};

std::vector<HeadingAt> locate(std::string_view text, const std::vector<Heading>& headings,
                              const Utf8Index& index) {
    std::vector<HeadingAt> out;
    out.reserve(headings.size());
    for (const Heading& h : headings) {
        const std::size_t begin = index.to_byte(h.span.start);
        const std::size_t end = index.to_byte(h.span.end);
        const std::size_t nl = text.find('\n', end);
        out.push_back({&h, begin, nl == std::string_view::npos ? text.size() : nl + 1});
    }
    return out;
}

SourceSpan absolute(const Utf8Index& index, std::size_t base, std::size_t byte_begin, std::size_t byte_end) {
    return {base + index.to_codepoint(byte_begin), base + index.to_codepoint(byte_end)};
}

enum class EtymologyTitle { none, valid, invalid };

// "Etymology" -> 0, "Etymology N" -> N - 1 for positive N.
EtymologyTitle parse_etymology_title(std::string_view title, int& number) {
    constexpr std::string_view kWord = "Etymology";
    if (title.substr(0, kWord.size()) != kWord) return EtymologyTitle::none;
    std::string_view rest = title.substr(kWord.size());
    if (rest.empty()) {
        number = 0;
        return EtymologyTitle::valid;
    }
    if (rest.front() != ' ') return EtymologyTitle::none;
    rest = trim(rest);
    if (rest.empty()) return EtymologyTitle::none;
    for (char c : rest)
        if (c < '0' || c > '9') return EtymologyTitle::none;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || value < 1) return EtymologyTitle::invalid;
    number = value - 1;
    return EtymologyTitle::valid;
}

}  // namespace

std::vector<LanguageSection> segment_languages(std::string_view page_text, const Profile& profile,
                                               Diagnostics* diagnostics) {
    std::vector<LanguageSection> out;
    if (profile.grammar != SectionGrammar::english) {
        report(diagnostics, diag::kUnsupportedGrammar,
               "no section grammar for profile " + std::string(to_string(profile.id)));
        return out;
    }
    const auto headings = scan_headings(page_text);
    const Utf8Index index(page_text);
    const auto located = locate(page_text, headings, index);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < located.size(); ++i) {
        const Heading& h = *located[i].heading;
        if (h.level != 2) continue;
        std::size_t end = page_text.size();
        for (std::size_t j = i + 1; j < located.size(); ++j) {
            if (located[j].heading->level <= 2) {
                end = located[j].line_begin;
                break;
            }
        }
        const LanguageInfo* lang = profile.languages.lookup_name(h.title);
        if (!lang) {
            report(diagnostics, diag::kUnknownLanguage, h.title);
            continue;
        }
        if (!seen.insert(lang->code).second) {
            report(diagnostics, diag::kDuplicateLanguage, h.title);
            continue;
        }
        const std::size_t begin = std::min(located[i].body_begin, end);
        out.push_back(LanguageSection{*lang, std::string(page_text.substr(begin, end - begin)),
                                      absolute(index, 0, begin, end)});
    }
    if (out.empty()) report(diagnostics, diag::kNoLanguageSection);
    return out;
}

std::vector<EtymologyBlock> segment_etymologies(const LanguageSection& section, Diagnostics* diagnostics) {
    std::vector<EtymologyBlock> out;
    const std::string_view body = section.body;
    const auto headings = scan_headings(body);
    const Utf8Index index(body);
    const auto located = locate(body, headings, index);

    struct Delimiter {
        std::size_t at;
        EtymologyTitle kind;
        int number;
    };
    std::vector<Delimiter> delimiters;
    for (std::size_t i = 0; i < located.size(); ++i) {
        const Heading& h = *located[i].heading;
        int number = 0;
        const EtymologyTitle kind = parse_etymology_title(h.title, number);
        if (kind == EtymologyTitle::none) continue;
        if (h.level != 3) {
            report(diagnostics, diag::kEtymologyHeadingLevel,
                   h.title + " at level " + std::to_string(h.level));
            continue;
        }
        delimiters.push_back({i, kind, number});
    }

    if (delimiters.empty()) {
        out.push_back(EtymologyBlock{0, section.body, section.span});
        return out;
    }

    std::set<int> seen;
    for (std::size_t d = 0; d < delimiters.size(); ++d) {
        const HeadingAt& at = located[delimiters[d].at];
        const std::size_t end = d + 1 < delimiters.size() ? located[delimiters[d + 1].at].line_begin : body.size();
        if (delimiters[d].kind == EtymologyTitle::invalid) {
            report(diagnostics, diag::kInvalidEtymologyNumber, at.heading->title);
            continue;
        }
        if (!seen.insert(delimiters[d].number).second) {
            report(diagnostics, diag::kDuplicateEtymology, at.heading->title);
            continue;
        }
        const std::size_t begin = std::min(at.body_begin, end);
        out.push_back(EtymologyBlock{delimiters[d].number, std::string(body.substr(begin, end - begin)),
                                     absolute(index, section.span.start, begin, end)});
    }
    return out;
}

std::vector<PosSection> segment_pos(const EtymologyBlock& block, const Profile& profile,
                                    Diagnostics* diagnostics) {
    std::vector<PosSection> out;
    const std::string_view body = block.body;
    const auto headings = scan_headings(body);
    const Utf8Index index(body);
    const auto located = locate(body, headings, index);

    auto is_pos = [&](const Heading& h) {
        return (h.level == 3 || h.level == 4) && profile.is_pos_heading(h.title);
    };

    std::set<std::string> seen;
    for (std::size_t i = 0; i < located.size(); ++i) {
        const Heading& h = *located[i].heading;
        if (!is_pos(h)) continue;
        std::size_t end = body.size();
        for (std::size_t j = i + 1; j < located.size(); ++j) {
            const Heading& next = *located[j].heading;
            if (next.level <= h.level || is_pos(next)) {
                end = located[j].line_begin;
                break;
            }
        }
        std::string name = to_lower(trim(h.title));
        if (!seen.insert(name).second) {
            report(diagnostics, diag::kDuplicatePos, h.title);
            continue;
        }
        const std::size_t begin = std::min(located[i].body_begin, end);
        out.push_back(PosSection{std::move(name), std::string(body.substr(begin, end - begin)),
                                 absolute(index, block.span.start, begin, end)});
    }
    return out;
}

}  // namespace wikimrd
