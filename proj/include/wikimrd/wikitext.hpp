#pragma once

// Structural scanning of wiki markup: headings, templates, internal links,
// list items, and plain-text rendering. All functions are pure and total:
// malformed markup is skipped (and counted when a Diagnostics is supplied),
// never raised.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wikimrd/diagnostics.hpp"

namespace wikimrd {

/// Half-open range of Unicode scalar-value offsets into a source text.
struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - start; }
    bool contains(const SourceSpan& other) const { return start <= other.start && other.end <= end; }
    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Text covered by `span`, measured in code points.
std::string slice(std::string_view source, SourceSpan span);

struct Heading {
    int level = 0;
    std::string title;
    SourceSpan span;
};

struct Template {
    std::string name;
    std::vector<std::string> positional_args;
    std::map<std::string, std::string> named_args;
    std::vector<Template> children;
    SourceSpan span;
};

struct InternalLink {
    std::string target;
    std::string label;
    SourceSpan span;
};

struct ListItem {
    std::string markers;  ///< run of '#', '*', ':' characters
    std::string content;
    SourceSpan span;

    std::size_t depth() const { return markers.size(); }
};

/// Rendering rules for grammar-label templates in strip_markup.
struct TemplateRenderPolicy {
    /// `{{name}}` renders as "(" + text + ")".
    std::map<std::string, std::string, std::less<>> labels;
    /// `{{name|...}}` renders its positional args from the given index on,
    /// joined by ", " inside parentheses (e.g. `{{lb|en|transitive}}`).
    std::map<std::string, std::size_t, std::less<>> label_lists;

    bool is_label(std::string_view name) const {
        return labels.count(name) != 0 || label_lists.count(name) != 0;
    }
    /// Label names a template contributes; empty for non-label templates.
    std::vector<std::string> label_names(const Template& t) const;
    /// Rendered form of a template; empty for non-label templates.
    std::string render(const Template& t) const;
};

/// Template nesting beyond this depth is treated as unbalanced.
inline constexpr std::size_t kMaxTemplateNesting = 256;

std::vector<Heading> scan_headings(std::string_view source);

/// Top-level templates in document order, nested ones in `children`.
/// An opening `{{` without a matching close is plain text; each such site
/// is reported as unbalanced-template.
std::vector<Template> scan_templates(std::string_view source, Diagnostics* diagnostics = nullptr);

std::vector<InternalLink> scan_internal_links(std::string_view source);

std::vector<ListItem> scan_list_items(std::string_view source);

/// Reader-facing text of a wikitext fragment: links become their labels,
/// label templates become "(label)", other templates and bold/italic quote
/// runs disappear, whitespace is collapsed. Idempotent.
std::string strip_markup(std::string_view source, const TemplateRenderPolicy& policy);

}  // namespace wikimrd
