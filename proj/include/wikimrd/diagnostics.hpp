#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wikimrd {

/// Stable category names used in diagnostics output.
namespace diag {
inline constexpr std::string_view kUnbalancedTemplate = "unbalanced-template";
inline constexpr std::string_view kUnknownLanguageCode = "unknown-language-code";
inline constexpr std::string_view kUnknownLanguage = "unknown-language";
inline constexpr std::string_view kDuplicateLanguage = "duplicate-language";
inline constexpr std::string_view kNoLanguageSection = "no-language-section";
inline constexpr std::string_view kUnsupportedGrammar = "unsupported-grammar";
inline constexpr std::string_view kEtymologyHeadingLevel = "etymology-heading-level";
inline constexpr std::string_view kInvalidEtymologyNumber = "invalid-etymology-number";
inline constexpr std::string_view kDuplicateEtymology = "duplicate-etymology";
inline constexpr std::string_view kDuplicatePos = "duplicate-pos";
inline constexpr std::string_view kPosWithoutDefinitions = "pos-without-definitions";
inline constexpr std::string_view kEmptyDefinition = "empty-definition";
inline constexpr std::string_view kRelationWithoutTargets = "relation-without-targets";
inline constexpr std::string_view kUnresolvedLanguage = "unresolved-language";
inline constexpr std::string_view kTranslationLanguageMismatch = "translation-language-mismatch";
inline constexpr std::string_view kTranslationWithoutTerm = "translation-without-term";
inline constexpr std::string_view kDuplicateTranslationBlock = "duplicate-translation-block";
inline constexpr std::string_view kFilteredNamespace = "filtered-namespace";
inline constexpr std::string_view kFilteredRedirect = "filtered-redirect";
inline constexpr std::string_view kPageWithoutEntries = "page-without-entries";
inline constexpr std::string_view kDuplicateEntry = "duplicate-entry";
}  // namespace diag

struct Diagnostic {
    std::string category;
    std::string page;
    std::string detail;
};

/// Collects non-fatal findings about malformed input. Counts are always
/// kept; individual records are kept unless a sink is installed, in which
/// case they are forwarded and dropped.
class Diagnostics {
public:
    using Sink = std::function<void(const Diagnostic&)>;

    Diagnostics() = default;
    explicit Diagnostics(Sink sink) : sink_(std::move(sink)) {}

    /// Page title attached to subsequent reports.
    void set_page(std::string page) { page_ = std::move(page); }
    const std::string& page() const { return page_; }

    void report(std::string_view category, std::string detail = {});

    /// Moves every record of `other` into this collector.
    void absorb(Diagnostics&& other);

    std::size_t count(std::string_view category) const;
    std::size_t total() const;
    const std::map<std::string, std::size_t, std::less<>>& counts() const { return counts_; }
    const std::vector<Diagnostic>& records() const { return records_; }

private:
    Sink sink_;
    std::string page_;
    std::map<std::string, std::size_t, std::less<>> counts_;
    std::vector<Diagnostic> records_;
};

inline void report(Diagnostics* diagnostics, std::string_view category, std::string detail = {}) {
    if (diagnostics) diagnostics->report(category, std::move(detail));
}

}  // namespace wikimrd
