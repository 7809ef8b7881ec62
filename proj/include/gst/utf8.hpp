#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gst::utf8 {

/// Byte offset of the first ill-formed sequence, or nullopt when `text` is
/// well-formed UTF-8 (no overlongs, no surrogates, nothing above U+10FFFF).
std::optional<std::size_t> first_invalid(std::string_view text) noexcept;

inline bool is_valid(std::string_view text) noexcept { return !first_invalid(text).has_value(); }

/// Decodes one scalar starting at `pos` and advances `pos`. Returns nullopt
/// (leaving `pos` untouched) on an ill-formed sequence.
std::optional<char32_t> decode_one(std::string_view text, std::size_t& pos) noexcept;

void append(std::string& out, char32_t scalar);

/// The following assume well-formed input.
std::size_t scalar_count(std::string_view text) noexcept;
std::vector<char32_t> decode(std::string_view text);
std::string encode(const std::vector<char32_t>& scalars);

/// Byte offset of scalar number `index`; text.size() when index == count.
std::size_t byte_offset(std::string_view text, std::size_t index) noexcept;

/// First `n` scalars of `text`.
std::string_view head(std::string_view text, std::size_t n) noexcept;
/// Last `n` scalars of `text`.
std::string_view tail(std::string_view text, std::size_t n) noexcept;

bool is_white_space(char32_t c) noexcept;
std::string_view trim(std::string_view text) noexcept;

}  // namespace gst::utf8
