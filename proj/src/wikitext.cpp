#include "wikimrd/wikitext.hpp"

#include <algorithm>
#include <cstdint>

#include "wikimrd/text.hpp"

namespace wikimrd {

std::string slice(std::string_view source, SourceSpan span) {
    const Utf8Index index(source);
    const std::size_t b = index.to_byte(span.start);
    const std::size_t e = index.to_byte(span.end);
    return std::string(source.substr(b, e > b ? e - b : 0));
}

// ---------------------------------------------------------------------------
// Headings and list items

std::vector<Heading> scan_headings(std::string_view source) {
    std::vector<Heading> out;
    if (source.find('=') == std::string_view::npos) return out;
    const MaskedText masked(source);
    const std::string_view text = masked.text();
    std::vector<LineRange> lines = split_lines(text);
    const Utf8Index index(source);
    for (const LineRange& line : lines) {
        std::string_view s = trim_right(text.substr(line.begin, line.end - line.begin));
        if (s.empty() || s.front() != '=') continue;
        std::size_t lead = 0;
        while (lead < s.size() && s[lead] == '=') ++lead;
        if (lead == s.size()) continue;
        std::size_t trail = 0;
        while (trail < s.size() - lead && s[s.size() - 1 - trail] == '=') ++trail;
        if (lead != trail || lead > 6) continue;
        std::string title(trim(masked.visible(line.begin + lead, line.begin + s.size() - trail)));
        if (title.empty()) continue;
        out.push_back(Heading{static_cast<int>(lead), std::move(title),
                              {index.to_codepoint(line.begin), index.to_codepoint(line.begin + s.size())}});
    }
    return out;
}

namespace {

bool is_list_marker(char c) { return c == '#' || c == '*' || c == ':'; }

}  // namespace

std::vector<ListItem> scan_list_items(std::string_view source) {
    std::vector<ListItem> out;
    const MaskedText masked(source);
    const std::string_view text = masked.text();
    const Utf8Index index(source);
    for (const LineRange& line : split_lines(text)) {
        std::size_t p = line.begin;
        while (p < line.end && is_list_marker(text[p])) ++p;
        if (p == line.begin) continue;
        ListItem item;
        item.markers.assign(text.substr(line.begin, p - line.begin));
        item.content = masked.visible(p, line.end);
        if (!item.content.empty() && item.content.front() == ' ') item.content.erase(0, 1);
        item.span = {index.to_codepoint(line.begin), index.to_codepoint(line.end)};
        out.push_back(std::move(item));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Templates

namespace {

// Memoized matcher over comment-masked text. `end_[i]` is the byte offset
// just past the template opened by the `{{` at i, or 0 when that opening
// has no well-formed close. Computed right to left so every nested opening
// is already resolved when its parent scans over it.
//
// Grammar: "{{" content "}}" where content holds nested templates and any
// character except a stray brace; the name (content up to the first `|`
// outside nested links) must be non-blank.
class TemplateMatcher {
public:
    TemplateMatcher(std::string_view masked, const MaskedText& source)
        : text_(masked), source_(source), end_(masked.size(), 0), depth_(masked.size(), 0) {
        if (text_.size() < 4) return;
        for (std::size_t i = text_.size() - 1; i-- > 0;) {
            if (text_[i] == '{' && text_[i + 1] == '{') match(i);
        }
    }

    bool opens(std::size_t i) const {
        return i + 1 < text_.size() && text_[i] == '{' && text_[i + 1] == '{';
    }
    std::size_t end(std::size_t i) const { return end_[i]; }

    Template build(std::size_t open, const Utf8Index& index) const {
        Template t;
        const std::size_t close = end_[open] - 2;
        std::vector<std::pair<std::size_t, std::size_t>> pieces;
        std::size_t piece_start = open + 2;
        int link_depth = 0;
        std::size_t k = open + 2;
        while (k < close) {
            const char c = text_[k];
            if (c == '{') {
                t.children.push_back(build(k, index));
                k = end_[k];
                continue;
            }
            if (c == '[' && text_[k + 1] == '[') {
                ++link_depth;
                k += 2;
                continue;
            }
            if (c == ']' && text_[k + 1] == ']' && link_depth > 0) {
                --link_depth;
                k += 2;
                continue;
            }
            if (c == '|' && link_depth == 0) {
                pieces.emplace_back(piece_start, k);
                piece_start = k + 1;
            }
            ++k;
        }
        pieces.emplace_back(piece_start, close);

        t.name = std::string(trim(source_.visible(pieces[0].first, pieces[0].second)));
        for (std::size_t p = 1; p < pieces.size(); ++p) add_arg(t, pieces[p].first, pieces[p].second);
        t.span = {index.to_codepoint(open), index.to_codepoint(end_[open])};
        return t;
    }

private:
    void match(std::size_t open) {
        const std::size_t n = text_.size();
        std::size_t k = open + 2;
        bool in_name = true;
        bool name_blank = true;
        std::size_t depth = 1;
        int link_depth = 0;
        while (k < n) {
            const char c = text_[k];
            if (c == '{') {
                if (!opens(k) || end_[k] == 0) return;
                if (in_name) name_blank = false;
                depth = std::max<std::size_t>(depth, depth_[k] + 1u);
                k = end_[k];
                continue;
            }
            if (c == '}') {
                if (k + 1 < n && text_[k + 1] == '}' && !name_blank && depth <= kMaxTemplateNesting) {
                    end_[open] = k + 2;
                    depth_[open] = static_cast<std::uint32_t>(depth);
                }
                return;
            }
            if (c == '[' && k + 1 < n && text_[k + 1] == '[') {
                ++link_depth;
                if (in_name) name_blank = false;
                k += 2;
                continue;
            }
            if (c == ']' && k + 1 < n && text_[k + 1] == ']' && link_depth > 0) {
                --link_depth;
                k += 2;
                continue;
            }
            if (in_name) {
                if (c == '|' && link_depth == 0) {
                    in_name = false;
                } else if (!is_space(c)) {
                    name_blank = false;
                }
            }
            ++k;
        }
    }

    void add_arg(Template& t, std::size_t b, std::size_t e) const {
        int link_depth = 0;
        std::size_t k = b;
        while (k < e) {
            const char c = text_[k];
            if (c == '{') {
                k = end_[k];
                continue;
            }
            if (c == '[' && text_[k + 1] == '[') {
                ++link_depth;
                k += 2;
                continue;
            }
            if (c == ']' && text_[k + 1] == ']' && link_depth > 0) {
                --link_depth;
                k += 2;
                continue;
            }
            if (c == '=' && link_depth == 0) {
                std::string key(trim(source_.visible(b, k)));
                if (!key.empty()) {
                    t.named_args[std::move(key)] = std::string(trim(source_.visible(k + 1, e)));
                    return;
                }
                break;
            }
            ++k;
        }
        t.positional_args.push_back(source_.visible(b, e));
    }

    std::string_view text_;
    const MaskedText& source_;
    std::vector<std::size_t> end_;
    std::vector<std::uint32_t> depth_;
};

}  // namespace

std::vector<Template> scan_templates(std::string_view source, Diagnostics* diagnostics) {
    std::vector<Template> out;
    if (source.find("{{") == std::string_view::npos) return out;
    const MaskedText masked(source);
    const TemplateMatcher matcher(masked.text(), masked);
    const Utf8Index index(source);
    const std::size_t n = source.size();
    std::size_t i = 0;
    while (i + 1 < n) {
        if (matcher.opens(i)) {
            if (matcher.end(i) != 0) {
                out.push_back(matcher.build(i, index));
                i = matcher.end(i);
                continue;
            }
            report(diagnostics, diag::kUnbalancedTemplate,
                   "unclosed {{ at offset " + std::to_string(index.to_codepoint(i)));
        }
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Internal links

std::vector<InternalLink> scan_internal_links(std::string_view source) {
    std::vector<InternalLink> out;
    std::size_t i = source.find("[[");
    if (i == std::string_view::npos) return out;
    const MaskedText masked(source);
    const std::string_view text = masked.text();
    const Utf8Index index(source);
    const std::size_t n = text.size();
    while ((i = text.find("[[", i)) != std::string_view::npos) {
        std::size_t j = i + 2;
        while (j < n && text[j] != '[' && text[j] != ']' && text[j] != '\n') ++j;
        if (j + 1 < n && text[j] == ']' && text[j + 1] == ']') {
            const std::string content = masked.visible(i + 2, j);
            const std::size_t bar = content.find('|');
            std::string target(trim(std::string_view(content).substr(0, bar)));
            if (!target.empty()) {
                std::string label = bar == std::string::npos
                                        ? target
                                        : std::string(trim(std::string_view(content).substr(bar + 1)));
                if (label.empty()) label = target;
                out.push_back(InternalLink{std::move(target), std::move(label),
                                           {index.to_codepoint(i), index.to_codepoint(j + 2)}});
                i = j + 2;
                continue;
            }
        }
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rendering

std::vector<std::string> TemplateRenderPolicy::label_names(const Template& t) const {
    if (labels.count(t.name)) return {t.name};
    auto it = label_lists.find(t.name);
    if (it == label_lists.end()) return {};
    std::vector<std::string> names;
    for (std::size_t i = it->second; i < t.positional_args.size(); ++i) {
        std::string arg(trim(t.positional_args[i]));
        if (!arg.empty()) names.push_back(std::move(arg));
    }
    return names;
}

std::string TemplateRenderPolicy::render(const Template& t) const {
    if (auto it = labels.find(t.name); it != labels.end()) return "(" + it->second + ")";
    auto names = label_names(t);
    if (names.empty()) return {};
    return "(" + join(names, ", ") + ")";
}

namespace {

std::string strip_once(std::string_view input, const TemplateRenderPolicy& policy) {
    const std::string text = remove_comments(input);

    std::string no_templates;
    {
        const auto templates = scan_templates(text);
        const Utf8Index index(text);
        std::size_t pos = 0;
        for (const Template& t : templates) {
            const std::size_t b = index.to_byte(t.span.start);
            no_templates.append(text, pos, b - pos);
            no_templates.append(policy.render(t));
            pos = index.to_byte(t.span.end);
        }
        no_templates.append(text, pos, std::string::npos);
    }

    std::string no_links;
    {
        const auto links = scan_internal_links(no_templates);
        const Utf8Index index(no_templates);
        std::size_t pos = 0;
        for (const InternalLink& link : links) {
            const std::size_t b = index.to_byte(link.span.start);
            no_links.append(no_templates, pos, b - pos);
            no_links.append(link.label);
            pos = index.to_byte(link.span.end);
        }
        no_links.append(no_templates, pos, std::string::npos);
    }

    std::string no_quotes;
    no_quotes.reserve(no_links.size());
    for (std::size_t i = 0; i < no_links.size();) {
        if (no_links[i] == '\'') {
            std::size_t j = i;
            while (j < no_links.size() && no_links[j] == '\'') ++j;
            if (j - i == 1) no_quotes.push_back('\'');
            i = j;
            continue;
        }
        no_quotes.push_back(no_links[i++]);
    }

    return collapse_whitespace(no_quotes);
}

}  // namespace

std::string strip_markup(std::string_view source, const TemplateRenderPolicy& policy) {
    std::string current = strip_once(source, policy);
    // Removing markup can join fragments into new markup ("{{a}{{b}}}"),
    // so iterate to a fixed point; every changing pass shrinks the markup.
    for (int pass = 0; pass < 64; ++pass) {
        std::string next = strip_once(current, policy);
        if (next == current) break;
        current = std::move(next);
    }
    return current;
}

}  // namespace wikimrd
