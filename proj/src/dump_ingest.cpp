#include "wikimrd/dump_ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <iostream>
#include <sstream>

#include "wikimrd/text.hpp"

namespace wikimrd {

namespace {

bool is_name_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-' || c == '.' || c == ':' || u >= 0x80;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decodes one entity body (between '&' and ';'); false if unknown.
bool decode_entity(std::string_view name, std::string& out) {
    if (name == "lt") out.push_back('<');
    else if (name == "gt") out.push_back('>');
    else if (name == "amp") out.push_back('&');
    else if (name == "quot") out.push_back('"');
    else if (name == "apos") out.push_back('\'');
    else if (name.size() > 1 && name[0] == '#') {
        std::uint32_t cp = 0;
        const bool hex = name[1] == 'x' || name[1] == 'X';
        const char* first = name.data() + (hex ? 2 : 1);
        const char* last = name.data() + name.size();
        if (first == last) return false;
        const auto [ptr, ec] = std::from_chars(first, last, cp, hex ? 16 : 10);
        if (ec != std::errc() || ptr != last || cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            return false;
        append_utf8(out, cp);
    } else {
        return false;
    }
    return true;
}

class XmlFileSource : public PageSource {
public:
    explicit XmlFileSource(const std::filesystem::path& path)
        : file_(path, std::ios::binary), reader_(file_, path.string()) {
        if (!file_) throw std::runtime_error("cannot open " + path.string());
    }

    std::optional<RawPage> next() override { return reader_.next(); }

private:
    std::ifstream file_;
    XmlDumpReader reader_;
};

}  // namespace

DumpError::DumpError(std::string origin, std::size_t offset, std::size_t line, std::size_t column,
                     const std::string& what)
    : std::runtime_error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      offset_(offset),
      line_(line),
      column_(column) {}

XmlDumpReader::XmlDumpReader(std::istream& in, std::string origin) : in_(in), origin_(std::move(origin)) {}

void XmlDumpReader::fail(const std::string& what) const { throw DumpError(origin_, offset_, line_, column_, what); }

bool XmlDumpReader::fill(std::size_t need) {
    while (buf_.size() - pos_ < need) {
        if (eof_) return false;
        compact();
        const std::size_t old = buf_.size();
        buf_.resize(old + kChunkSize);
        in_.read(buf_.data() + old, static_cast<std::streamsize>(kChunkSize));
        const auto got = static_cast<std::size_t>(in_.gcount());
        buf_.resize(old + got);
        if (got < kChunkSize) eof_ = true;
        note_usage();
    }
    return true;
}

std::size_t XmlDumpReader::find_ahead(std::string_view delimiter) {
    std::size_t from = pos_;
    while (true) {
        const std::size_t at = buf_.find(delimiter, from);
        if (at != std::string::npos) return at - pos_;
        const std::size_t scanned = buf_.size() - pos_;
        if (!fill(scanned + 1)) return std::string::npos;
        from = pos_ + (scanned >= delimiter.size() ? scanned - delimiter.size() + 1 : 0);
    }
}

void XmlDumpReader::consume(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (buf_[pos_ + i] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
    }
    pos_ += n;
    offset_ += n;
}

void XmlDumpReader::compact() {
    if (pos_ == 0) return;
    buf_.erase(0, pos_);
    pos_ = 0;
}

void XmlDumpReader::note_usage() {
    const std::size_t held = buf_.size() + page_.title.size() + page_.text.size() + ns_text_.size();
    peak_ = std::max(peak_, held);
}

std::string* XmlDumpReader::capture_target() {
    if (!in_page_ || stack_.size() < 3) return nullptr;
    const std::string& top = stack_.back();
    const std::string& parent = stack_[stack_.size() - 2];
    if (parent == "page" && stack_.size() == 3) {
        if (top == "title") return &page_.title;
        if (top == "ns") return &ns_text_;
    }
    if (top == "text" && parent == "revision" && stack_.size() == 4) return &page_.text;
    return nullptr;
}

void XmlDumpReader::append_decoded(std::string_view raw) {
    std::string* target = capture_target();
    if (!target) {
        if (stack_.empty() && !std::all_of(raw.begin(), raw.end(), [](char c) { return is_space(c); }))
            fail("text outside the root element");
        return;
    }
    target->append(raw);
}

void XmlDumpReader::read_text() {
    // Character data up to the next '<' (or the end of the window), with
    // entities decoded.
    std::string decoded;
    while (pos_ < buf_.size() && buf_[pos_] != '<') {
        const std::size_t stop = buf_.find_first_of("<&", pos_);
        const std::size_t end = stop == std::string::npos ? buf_.size() : stop;
        decoded.append(buf_, pos_, end - pos_);
        consume(end - pos_);
        if (pos_ < buf_.size() && buf_[pos_] == '&') {
            fill(16);
            const std::size_t semi = buf_.find(';', pos_);
            if (semi == std::string::npos || semi - pos_ > 12) fail("malformed entity reference");
            if (!decode_entity(std::string_view(buf_).substr(pos_ + 1, semi - pos_ - 1), decoded))
                fail("unknown entity &" + buf_.substr(pos_ + 1, semi - pos_ - 1) + ";");
            consume(semi - pos_ + 1);
        }
    }
    append_decoded(decoded);
    note_usage();
}

XmlDumpReader::Tag XmlDumpReader::read_tag() {
    // buf_[pos_] == '<' and the byte after it is neither '!' nor '?'.
    std::size_t i = pos_ + 1;
    Tag tag;
    char quote = 0;
    std::size_t end = std::string::npos;
    while (true) {
        if (i >= buf_.size()) {
            const std::size_t rel = i - pos_;
            if (!fill(rel + 1)) fail("unterminated tag");
            i = pos_ + rel;
        }
        const char c = buf_[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            end = i;
            break;
        } else if (c == '<') {
            fail("'<' inside tag");
        }
        ++i;
    }
    std::string_view body = std::string_view(buf_).substr(pos_ + 1, end - pos_ - 1);
    if (!body.empty() && body.front() == '/') {
        tag.closing = true;
        body.remove_prefix(1);
    }
    if (!body.empty() && body.back() == '/') {
        tag.self_closing = true;
        body.remove_suffix(1);
    }
    std::size_t n = 0;
    while (n < body.size() && is_name_char(body[n])) ++n;
    tag.name = std::string(body.substr(0, n));
    if (tag.name.empty()) fail("tag without a name");
    const std::string_view rest = body.substr(n);
    if (!rest.empty() && !is_space(rest.front())) fail("malformed tag <" + tag.name + ">");
    if (tag.closing && (tag.self_closing || !trim(rest).empty())) fail("malformed end tag </" + tag.name + ">");
    consume(end - pos_ + 1);
    return tag;
}

void XmlDumpReader::open_element(const std::string& name, bool self_closing) {
    if (stack_.empty()) {
        if (root_seen_) fail("second root element <" + name + ">");
        root_seen_ = true;
    }
    const std::size_t depth = stack_.size();
    if (name == "page" && depth == 1) {
        in_page_ = true;
        page_ = RawPage{};
        ns_text_.clear();
        has_title_ = false;
    } else if (in_page_ && depth == 2) {
        if (name == "redirect") page_.is_redirect = true;
        if (name == "title") has_title_ = true;
        if (name == "revision") page_.text.clear();
    }
    if (!self_closing) stack_.push_back(name);
}

std::optional<RawPage> XmlDumpReader::close_element(const std::string& name) {
    if (stack_.empty() || stack_.back() != name)
        fail("unexpected </" + name + ">" + (stack_.empty() ? std::string() : ", expected </" + stack_.back() + ">"));
    stack_.pop_back();
    if (stack_.empty()) done_ = true;
    if (!(name == "page" && in_page_ && stack_.size() == 1)) return std::nullopt;

    in_page_ = false;
    if (!has_title_ || trim(page_.title).empty()) fail("page without a title");
    const std::string_view ns = trim(ns_text_);
    if (!ns.empty()) {
        long long value = 0;
        const auto [ptr, ec] = std::from_chars(ns.data(), ns.data() + ns.size(), value);
        if (ec != std::errc() || ptr != ns.data() + ns.size()) fail("invalid namespace '" + std::string(ns) + "'");
        page_.ns = value;
    }
    return std::move(page_);
}

std::optional<RawPage> XmlDumpReader::next() {
    while (true) {
        if (!fill(1)) {
            if (!stack_.empty()) fail("unexpected end of input inside <" + stack_.back() + ">");
            if (!root_seen_) fail("no root element");
            return std::nullopt;
        }
        if (buf_[pos_] != '<') {
            read_text();
            continue;
        }
        fill(9);
        const std::string_view ahead = std::string_view(buf_).substr(pos_);
        if (ahead.starts_with("<!--")) {
            const std::size_t end = find_ahead("-->");
            if (end == std::string::npos) fail("unterminated comment");
            consume(end + 3);
        } else if (ahead.starts_with("<![CDATA[")) {
            const std::size_t end = find_ahead("]]>");
            if (end == std::string::npos) fail("unterminated CDATA section");
            if (std::string* target = capture_target()) target->append(buf_, pos_ + 9, end - 9);
            consume(end + 3);
            note_usage();
        } else if (ahead.starts_with("<?") || ahead.starts_with("<!")) {
            const bool pi = ahead[1] == '?';
            const std::size_t end = find_ahead(pi ? "?>" : ">");
            if (end == std::string::npos) fail("unterminated declaration");
            consume(end + (pi ? 2 : 1));
        } else {
            if (done_) fail("content after the root element");
            const Tag tag = read_tag();
            if (tag.closing) {
                if (auto page = close_element(tag.name)) return page;
            } else {
                open_element(tag.name, tag.self_closing);
            }
        }
    }
}

FixtureDirectoryReader::FixtureDirectoryReader(const std::filesystem::path& dir) {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".wiki") files_.push_back(entry.path());
    }
    std::sort(files_.begin(), files_.end(),
              [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
}

std::optional<RawPage> FixtureDirectoryReader::next() {
    if (index_ >= files_.size()) return std::nullopt;
    const auto& path = files_[index_++];
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    RawPage page;
    page.title = path.stem().string();
    page.text = text.str();
    return page;
}

std::unique_ptr<PageSource> open_page_source(const std::filesystem::path& path) {
    if (path == "-") return std::make_unique<XmlDumpReader>(std::cin, "<stdin>");
    if (std::filesystem::is_directory(path)) return std::make_unique<FixtureDirectoryReader>(path);
    if (!std::filesystem::exists(path)) throw std::runtime_error("input not found: " + path.string());
    return std::make_unique<XmlFileSource>(path);
}

bool keep_main(const RawPage& page, Diagnostics* diagnostics) {
    if (page.ns != 0) {
        if (diagnostics) diagnostics->set_page(page.title);
        report(diagnostics, diag::kFilteredNamespace, "namespace " + std::to_string(page.ns));
        return false;
    }
    if (page.is_redirect) {
        if (diagnostics) diagnostics->set_page(page.title);
        report(diagnostics, diag::kFilteredRedirect);
        return false;
    }
    return true;
}

std::vector<RawPage> filter_main(std::vector<RawPage> pages, Diagnostics* diagnostics) {
    std::vector<RawPage> out;
    for (auto& page : pages)
        if (keep_main(page, diagnostics)) out.push_back(std::move(page));
    return out;
}

}  // namespace wikimrd
