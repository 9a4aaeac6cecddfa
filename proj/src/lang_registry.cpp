#include "wikimrd/lang_registry.hpp"

#include <fstream>
#include <sstream>

#include "wikimrd/text.hpp"

#ifndef WIKIMRD_DEFAULT_REGISTRY_DIR
#define WIKIMRD_DEFAULT_REGISTRY_DIR "data"
#endif

namespace wikimrd {

namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw RegistryError("cannot open registry file " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Data lines of a registry file with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> data_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t number = 0;
    for (const LineRange& line : split_lines(text)) {
        ++number;
        std::string_view s = text.substr(line.begin, line.end - line.begin);
        if (trim(s).empty() || s.front() == '#') continue;
        out.emplace_back(number, s);
    }
    return out;
}

std::vector<std::string_view> split_tabs(std::string_view s) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t tab = s.find('\t', pos);
        fields.push_back(s.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
        if (tab == std::string_view::npos) break;
        pos = tab + 1;
    }
    return fields;
}

[[noreturn]] void fail(std::string_view origin, std::size_t line, const std::string& what) {
    throw RegistryError(std::string(origin) + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

bool is_valid_language_code(std::string_view code) {
    if (code.size() < 2 || code.size() > 12) return false;
    for (char c : code)
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-')) return false;
    return true;
}

LanguageRegistry LanguageRegistry::parse(std::string_view text, std::string_view origin) {
    LanguageRegistry reg;
    for (const auto& [number, line] : data_lines(text)) {
        const auto fields = split_tabs(line);
        if (fields.size() != 2) fail(origin, number, "expected code<TAB>name");
        const std::string code(trim(fields[0]));
        const std::string name(trim(fields[1]));
        if (!is_valid_language_code(code)) fail(origin, number, "invalid language code '" + code + "'");
        if (name.empty()) fail(origin, number, "empty language name");
        if (reg.by_code_.count(code)) fail(origin, number, "duplicate language code '" + code + "'");
        if (reg.by_name_.count(name)) fail(origin, number, "duplicate language name '" + name + "'");
        const std::size_t index = reg.entries_.size();
        reg.entries_.push_back(LanguageInfo{code, name, static_cast<int>(index + 1)});
        reg.by_code_.emplace(code, index);
        reg.by_name_.emplace(name, index);
    }
    return reg;
}

LanguageRegistry LanguageRegistry::load(const std::filesystem::path& file) {
    return parse(read_file(file), file.string());
}

const LanguageInfo* LanguageRegistry::lookup_code(std::string_view code, Diagnostics* diagnostics) const {
    auto it = by_code_.find(ascii_lower(trim(code)));
    if (it == by_code_.end()) {
        report(diagnostics, diag::kUnknownLanguageCode, std::string(code));
        return nullptr;
    }
    return &entries_[it->second];
}

const LanguageInfo* LanguageRegistry::lookup_name(std::string_view name) const {
    auto it = by_name_.find(std::string(trim(name)));
    return it == by_name_.end() ? nullptr : &entries_[it->second];
}

std::string_view to_string(ProfileId id) { return id == ProfileId::en ? "en" : "ru"; }

ProfileId parse_profile_id(std::string_view text) {
    if (text == "en") return ProfileId::en;
    if (text == "ru") return ProfileId::ru;
    throw RegistryError("unknown profile '" + std::string(text) + "' (expected en or ru)");
}

const std::string* Profile::relation_for_heading(std::string_view title) const {
    auto it = relation_headings.find(to_lower(trim(title)));
    return it == relation_headings.end() ? nullptr : &it->second;
}

bool Profile::is_pos_heading(std::string_view title) const {
    return pos_names.count(to_lower(trim(title))) != 0;
}

Profile load_profile(ProfileId id, const std::filesystem::path& registry_dir) {
    const std::string suffix(to_string(id));
    Profile profile;
    profile.id = id;
    // Only the English layout is implemented; other editions load their data
    // but report every page as unsupported until a grammar is written.
    profile.grammar = id == ProfileId::en ? SectionGrammar::english : SectionGrammar::unsupported;
    profile.languages = LanguageRegistry::load(registry_dir / ("languages." + suffix + ".tsv"));

    {
        const auto file = registry_dir / "relation_types.txt";
        const std::string text = read_file(file);
        for (const auto& [number, line] : data_lines(text)) {
            std::string type(trim(line));
            for (const auto& existing : profile.relation_types)
                if (existing == type) fail(file.string(), number, "duplicate relation type '" + type + "'");
            profile.relation_types.push_back(std::move(type));
        }
        if (profile.relation_types.empty()) throw RegistryError(file.string() + ": no relation types");
    }
    {
        const auto file = registry_dir / ("pos." + suffix + ".txt");
        const std::string text = read_file(file);
        for (const auto& [number, line] : data_lines(text)) {
            if (!profile.pos_names.insert(to_lower(trim(line))).second)
                fail(file.string(), number, "duplicate part of speech '" + std::string(trim(line)) + "'");
        }
    }
    {
        const auto file = registry_dir / ("relations." + suffix + ".tsv");
        const std::string text = read_file(file);
        for (const auto& [number, line] : data_lines(text)) {
            const auto fields = split_tabs(line);
            if (fields.size() != 2) fail(file.string(), number, "expected heading<TAB>relation type");
            const std::string type(trim(fields[1]));
            bool known = false;
            for (const auto& t : profile.relation_types) known = known || t == type;
            if (!known) fail(file.string(), number, "unknown relation type '" + type + "'");
            if (!profile.relation_headings.emplace(to_lower(trim(fields[0])), type).second)
                fail(file.string(), number, "duplicate relation heading");
        }
    }
    {
        const auto file = registry_dir / ("labels." + suffix + ".tsv");
        const std::string text = read_file(file);
        for (const auto& [number, line] : data_lines(text)) {
            const auto fields = split_tabs(line);
            if (fields.size() != 3) fail(file.string(), number, "expected kind<TAB>template<TAB>value");
            const std::string name(trim(fields[1]));
            const std::string value(trim(fields[2]));
            if (name.empty()) fail(file.string(), number, "empty template name");
            if (profile.label_templates.is_label(name)) fail(file.string(), number, "duplicate label template");
            if (fields[0] == "label") {
                if (value.find_first_of("{}[]") != std::string::npos)
                    fail(file.string(), number, "label text must not contain markup");
                profile.label_templates.labels.emplace(name, value);
            } else if (fields[0] == "list") {
                std::size_t first = 0;
                try {
                    first = static_cast<std::size_t>(std::stoul(value));
                } catch (const std::exception&) {
                    fail(file.string(), number, "list label needs a numeric first-argument index");
                }
                profile.label_templates.label_lists.emplace(name, first);
            } else {
                fail(file.string(), number, "unknown label kind '" + std::string(fields[0]) + "'");
            }
        }
    }
    return profile;
}

std::filesystem::path default_registry_dir() { return WIKIMRD_DEFAULT_REGISTRY_DIR; }

}  // namespace wikimrd
