#pragma once

// Page sources: MediaWiki XML exports (streamed) and fixture directories of
// `<title>.wiki` files.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wikimrd/diagnostics.hpp"

namespace wikimrd {

struct RawPage {
    std::string title;
    long long ns = 0;
    std::string text;
    bool is_redirect = false;
};

/// Malformed dump. Pages completed before the error have already been yielded.
class DumpError : public std::runtime_error {
public:
    DumpError(std::string origin, std::size_t offset, std::size_t line, std::size_t column, const std::string& what);

    std::size_t offset() const { return offset_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t offset_;
    std::size_t line_;
    std::size_t column_;
};

class PageSource {
public:
    virtual ~PageSource() = default;
    /// Next page in document order; nullopt once exhausted.
    virtual std::optional<RawPage> next() = 0;
};

/// Pull parser over an XML export. Reads the input in fixed-size chunks and
/// keeps at most one page plus a small window of input in memory. When a
/// page carries several revisions the last one wins.
class XmlDumpReader : public PageSource {
public:
    static constexpr std::size_t kChunkSize = 64 * 1024;

    explicit XmlDumpReader(std::istream& in, std::string origin = "<input>");

    std::optional<RawPage> next() override;

    /// High-water mark of bytes held for the input window and the page under
    /// construction.
    std::size_t peak_buffer_bytes() const { return peak_; }

private:
    struct Tag {
        std::string name;
        bool closing = false;
        bool self_closing = false;
    };

    bool fill(std::size_t need);
    std::size_t find_ahead(std::string_view delimiter);
    void consume(std::size_t n);
    void compact();
    void note_usage();
    [[noreturn]] void fail(const std::string& what) const;

    Tag read_tag();
    void read_text();
    void append_decoded(std::string_view raw);
    void open_element(const std::string& name, bool self_closing);
    std::optional<RawPage> close_element(const std::string& name);
    std::string* capture_target();

    std::istream& in_;
    std::string origin_;
    std::string buf_;
    std::size_t pos_ = 0;
    std::size_t offset_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    bool eof_ = false;
    bool root_seen_ = false;
    bool done_ = false;

    std::vector<std::string> stack_;
    bool in_page_ = false;
    RawPage page_;
    std::string ns_text_;
    bool has_title_ = false;
    std::size_t peak_ = 0;
};

/// `*.wiki` files of a directory in file-name order; title = file stem.
class FixtureDirectoryReader : public PageSource {
public:
    explicit FixtureDirectoryReader(const std::filesystem::path& dir);

    std::optional<RawPage> next() override;

private:
    std::vector<std::filesystem::path> files_;
    std::size_t index_ = 0;
};

/// In-memory pages, handed out in order.
class PageList : public PageSource {
public:
    explicit PageList(std::vector<RawPage> pages) : pages_(std::move(pages)) {}

    std::optional<RawPage> next() override {
        if (index_ >= pages_.size()) return std::nullopt;
        return std::move(pages_[index_++]);
    }

private:
    std::vector<RawPage> pages_;
    std::size_t index_ = 0;
};

/// Directory → fixture reader, "-" → XML on stdin, anything else → XML file.
/// Throws std::runtime_error when the path cannot be opened.
std::unique_ptr<PageSource> open_page_source(const std::filesystem::path& path);

/// True for main-namespace non-redirect pages. Rejections are reported as
/// filtered-namespace or filtered-redirect.
bool keep_main(const RawPage& page, Diagnostics* diagnostics = nullptr);

std::vector<RawPage> filter_main(std::vector<RawPage> pages, Diagnostics* diagnostics = nullptr);

}  // namespace wikimrd
