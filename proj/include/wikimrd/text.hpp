#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wikimrd {

/// Maps between byte offsets and Unicode scalar-value offsets of a UTF-8
/// buffer. Malformed bytes count as one code point each, so every input
/// has a well-defined index.
class Utf8Index {
public:
    explicit Utf8Index(std::string_view text);

    /// Code point offset of the boundary at or before `byte_offset`.
    std::size_t to_codepoint(std::size_t byte_offset) const;
    std::size_t to_byte(std::size_t codepoint_offset) const;

    std::size_t codepoints() const { return ascii_ ? bytes_ : boundaries_.size() - 1; }
    std::size_t bytes() const { return bytes_; }

private:
    std::size_t bytes_ = 0;
    bool ascii_ = true;
    std::vector<std::size_t> boundaries_;
};

/// Length in bytes of the UTF-8 sequence starting at `text[pos]`; 1 for
/// malformed or truncated sequences.
std::size_t utf8_sequence_length(std::string_view text, std::size_t pos);

std::size_t count_codepoints(std::string_view text);

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view text);
std::string_view trim_right(std::string_view text);

/// Lowercases ASCII, Latin-1 and Cyrillic letters; everything else passes through.
std::string to_lower(std::string_view text);

/// Replaces every whitespace run with one space and trims both ends.
std::string collapse_whitespace(std::string_view text);

/// Removes `<!-- ... -->`; an unterminated comment runs to the end of input.
std::string remove_comments(std::string_view text);

/// Source text with HTML comments blanked out in place. Byte offsets are
/// preserved: hidden bytes become spaces, newlines inside comments are kept
/// so line structure survives.
class MaskedText {
public:
    explicit MaskedText(std::string_view source);

    std::string_view text() const { return has_comments_ ? std::string_view(masked_) : source_; }
    std::string_view source() const { return source_; }

    /// Bytes of the original in [begin, end) that are not inside a comment.
    std::string visible(std::size_t begin, std::size_t end) const;

private:
    std::string_view source_;
    bool has_comments_ = false;
    std::string masked_;
    std::vector<bool> hidden_;
};

/// Byte range of one line, without the terminating LF or a trailing CR.
struct LineRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t next = 0;  ///< start of the following line
};

std::vector<LineRange> split_lines(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view separator);

}  // namespace wikimrd
