#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wikimrd/diagnostics.hpp"
#include "wikimrd/wikitext.hpp"

namespace wikimrd {

/// Invalid or unreadable registry/profile data.
class RegistryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LanguageInfo {
    std::string code;
    std::string name;
    int id = 0;  ///< 1-based record number within the registry file

    friend bool operator==(const LanguageInfo&, const LanguageInfo&) = default;
};

/// Immutable code/name lookup table for one wiktionary edition.
class LanguageRegistry {
public:
    LanguageRegistry() = default;

    /// Parses `code<TAB>name` records; `#` lines and blank lines are ignored.
    /// Throws RegistryError on syntax errors and duplicate codes or names.
    static LanguageRegistry parse(std::string_view text, std::string_view origin = "<memory>");
    static LanguageRegistry load(const std::filesystem::path& file);

    /// Case-insensitive code match. Misses are counted as unknown-language-code.
    const LanguageInfo* lookup_code(std::string_view code, Diagnostics* diagnostics = nullptr) const;
    /// Exact match on the canonical name after trimming.
    const LanguageInfo* lookup_name(std::string_view name) const;

    const std::vector<LanguageInfo>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<LanguageInfo> entries_;
    std::unordered_map<std::string, std::size_t> by_code_;
    std::unordered_map<std::string, std::size_t> by_name_;
};

/// Syntactic code check: lowercase ASCII letters, digits and '-', 2..12 chars.
bool is_valid_language_code(std::string_view code);

enum class ProfileId { en, ru };

std::string_view to_string(ProfileId id);
/// Accepts "en" and "ru"; throws RegistryError otherwise.
ProfileId parse_profile_id(std::string_view text);

/// How an edition lays out language and part-of-speech sections.
enum class SectionGrammar {
    english,   ///< ==Language== / ===Etymology N=== / ===POS=== layout
    unsupported,
};

/// Everything edition-specific the parser needs, loaded from data files in
/// a registry directory:
///   languages.<id>.tsv          code<TAB>name
///   pos.<id>.txt                one part-of-speech heading per line
///   relations.<id>.tsv          heading<TAB>relation type
///   labels.<id>.tsv             label<TAB>template<TAB>text  |  list<TAB>template<TAB>first arg
///   relation_types.txt          the relation type inventory (shared)
struct Profile {
    ProfileId id = ProfileId::en;
    SectionGrammar grammar = SectionGrammar::english;
    LanguageRegistry languages;
    std::set<std::string> pos_names;                          ///< lowercase
    std::map<std::string, std::string> relation_headings;     ///< lowercase heading -> type
    std::vector<std::string> relation_types;
    TemplateRenderPolicy label_templates;

    const std::string* relation_for_heading(std::string_view title) const;
    bool is_pos_heading(std::string_view title) const;
};

Profile load_profile(ProfileId id, const std::filesystem::path& registry_dir);

/// Registry directory baked in at build time (the repository's data/ tree).
std::filesystem::path default_registry_dir();

}  // namespace wikimrd
