#include "wikimrd/text.hpp"

#include <algorithm>

namespace wikimrd {

namespace {

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

// Decodes one scalar value; returns false for malformed input.
bool decode(std::string_view text, std::size_t pos, char32_t& cp, std::size_t& len) {
    const auto b0 = static_cast<unsigned char>(text[pos]);
    if (b0 < 0x80) {
        cp = b0;
        len = 1;
        return true;
    }
    std::size_t need = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
        need = 1;
        cp = b0 & 0x1F;
        min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        need = 2;
        cp = b0 & 0x0F;
        min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        need = 3;
        cp = b0 & 0x07;
        min = 0x10000;
    } else {
        return false;
    }
    if (pos + need >= text.size()) return false;
    for (std::size_t i = 1; i <= need; ++i) {
        const auto b = static_cast<unsigned char>(text[pos + i]);
        if (!is_continuation(b)) return false;
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    len = need + 1;
    return true;
}

void encode(char32_t cp, std::string& out) {
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

char32_t lower_codepoint(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    return cp;
}

}  // namespace

std::size_t utf8_sequence_length(std::string_view text, std::size_t pos) {
    char32_t cp = 0;
    std::size_t len = 1;
    return decode(text, pos, cp, len) ? len : 1;
}

Utf8Index::Utf8Index(std::string_view text) : bytes_(text.size()) {
    ascii_ = std::all_of(text.begin(), text.end(),
                         [](char c) { return static_cast<unsigned char>(c) < 0x80; });
    if (ascii_) return;
    boundaries_.reserve(text.size() + 1);
    for (std::size_t pos = 0; pos < text.size(); pos += utf8_sequence_length(text, pos))
        boundaries_.push_back(pos);
    boundaries_.push_back(text.size());
}

std::size_t Utf8Index::to_codepoint(std::size_t byte_offset) const {
    if (ascii_) return std::min(byte_offset, bytes_);
    auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), byte_offset);
    return static_cast<std::size_t>(it - boundaries_.begin()) - 1;
}

std::size_t Utf8Index::to_byte(std::size_t codepoint_offset) const {
    if (ascii_) return std::min(codepoint_offset, bytes_);
    if (codepoint_offset >= boundaries_.size()) return bytes_;
    return boundaries_[codepoint_offset];
}

std::size_t count_codepoints(std::string_view text) {
    std::size_t n = 0;
    for (std::size_t pos = 0; pos < text.size(); pos += utf8_sequence_length(text, pos)) ++n;
    return n;
}

std::string_view trim(std::string_view text) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && is_space(text[b])) ++b;
    while (e > b && is_space(text[e - 1])) --e;
    return text.substr(b, e - b);
}

std::string_view trim_right(std::string_view text) {
    std::size_t e = text.size();
    while (e > 0 && is_space(text[e - 1])) --e;
    return text.substr(0, e);
}

std::string to_lower(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t cp = 0;
        std::size_t len = 1;
        if (decode(text, pos, cp, len)) {
            encode(lower_codepoint(cp), out);
        } else {
            out.push_back(text[pos]);
        }
        pos += len;
    }
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending = false;
    for (char c : text) {
        if (is_space(c)) {
            pending = !out.empty();
            continue;
        }
        if (pending) out.push_back(' ');
        pending = false;
        out.push_back(c);
    }
    return out;
}

std::string remove_comments(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t open = text.find("<!--", pos);
        if (open == std::string_view::npos) {
            out.append(text.substr(pos));
            break;
        }
        out.append(text.substr(pos, open - pos));
        const std::size_t close = text.find("-->", open + 4);
        if (close == std::string_view::npos) break;
        pos = close + 3;
    }
    return out;
}

MaskedText::MaskedText(std::string_view source) : source_(source) {
    std::size_t open = source.find("<!--");
    if (open == std::string_view::npos) return;
    has_comments_ = true;
    masked_.assign(source);
    hidden_.assign(source.size(), false);
    while (open != std::string_view::npos) {
        const std::size_t close = source.find("-->", open + 4);
        const std::size_t end = close == std::string_view::npos ? source.size() : close + 3;
        for (std::size_t i = open; i < end; ++i) {
            hidden_[i] = true;
            if (masked_[i] != '\n') masked_[i] = ' ';
        }
        open = end < source.size() ? source.find("<!--", end) : std::string_view::npos;
    }
}

std::string MaskedText::visible(std::size_t begin, std::size_t end) const {
    if (!has_comments_) return std::string(source_.substr(begin, end - begin));
    std::string out;
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i)
        if (!hidden_[i]) out.push_back(source_[i]);
    return out;
}

std::vector<LineRange> split_lines(std::string_view text) {
    std::vector<LineRange> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        const std::size_t next = nl == std::string_view::npos ? text.size() : nl + 1;
        std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        if (end > pos && text[end - 1] == '\r') --end;
        lines.push_back({pos, end, next});
        pos = next;
    }
    return lines;
}

std::string join(const std::vector<std::string>& parts, std::string_view separator) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.append(separator);
        out.append(parts[i]);
    }
    return out;
}

}  // namespace wikimrd
