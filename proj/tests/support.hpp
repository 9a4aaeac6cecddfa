#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "wikimrd/lang_registry.hpp"

namespace wikimrd::testing {

inline std::filesystem::path fixtures() { return WIKIMRD_FIXTURES; }
inline std::filesystem::path data_dir() { return WIKIMRD_DATA; }
inline std::filesystem::path cli_path() { return WIKIMRD_CLI; }

inline const Profile& en_profile() {
    static const Profile profile = load_profile(ProfileId::en, data_dir());
    return profile;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << contents;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    static std::random_device rd;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("wikimrd-" + name + "-" + std::to_string(rd()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string deal_page() { return read_file(fixtures() / "corpus" / "deal.wiki"); }

}  // namespace wikimrd::testing
