#include "gst/utf8.hpp"

namespace gst::utf8 {

std::optional<char32_t> decode_one(std::string_view text, std::size_t& pos) noexcept
{
    if (pos >= text.size()) {
        return std::nullopt;
    }
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
    const unsigned char lead = byte(pos);
    if (lead < 0x80) {
        ++pos;
        return lead;
    }

    std::size_t length = 0;
    char32_t scalar = 0;
    char32_t min_value = 0;
    if ((lead & 0xE0) == 0xC0) {
        length = 2;
        scalar = lead & 0x1F;
        min_value = 0x80;
    } else if ((lead & 0xF0) == 0xE0) {
        length = 3;
        scalar = lead & 0x0F;
        min_value = 0x800;
    } else if ((lead & 0xF8) == 0xF0) {
        length = 4;
        scalar = lead & 0x07;
        min_value = 0x10000;
    } else {
        return std::nullopt;
    }
    if (pos + length > text.size()) {
        return std::nullopt;
    }
    for (std::size_t i = 1; i < length; ++i) {
        const unsigned char cont = byte(pos + i);
        if ((cont & 0xC0) != 0x80) {
            return std::nullopt;
        }
        scalar = (scalar << 6) | (cont & 0x3F);
    }
    if (scalar < min_value || scalar > 0x10FFFF || (scalar >= 0xD800 && scalar <= 0xDFFF)) {
        return std::nullopt;
    }
    pos += length;
    return scalar;
}

std::optional<std::size_t> first_invalid(std::string_view text) noexcept
{
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (!decode_one(text, pos)) {
            return pos;
        }
    }
    return std::nullopt;
}

void append(std::string& out, char32_t c)
{
    if (c < 0x80) {
        out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
}

namespace {

constexpr bool is_continuation(char c) noexcept
{
    return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

}  // namespace

std::size_t scalar_count(std::string_view text) noexcept
{
    std::size_t count = 0;
    for (char c : text) {
        if (!is_continuation(c)) {
            ++count;
        }
    }
    return count;
}

std::vector<char32_t> decode(std::string_view text)
{
    std::vector<char32_t> out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto c = decode_one(text, pos);
        if (!c) {
            ++pos;
            out.push_back(0xFFFD);
            continue;
        }
        out.push_back(*c);
    }
    return out;
}

std::string encode(const std::vector<char32_t>& scalars)
{
    std::string out;
    out.reserve(scalars.size());
    for (char32_t c : scalars) {
        append(out, c);
    }
    return out;
}

std::size_t byte_offset(std::string_view text, std::size_t index) noexcept
{
    std::size_t seen = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!is_continuation(text[i])) {
            if (seen == index) {
                return i;
            }
            ++seen;
        }
    }
    return text.size();
}

std::string_view head(std::string_view text, std::size_t n) noexcept
{
    return text.substr(0, byte_offset(text, n));
}

std::string_view tail(std::string_view text, std::size_t n) noexcept
{
    const std::size_t count = scalar_count(text);
    if (n >= count) {
        return text;
    }
    return text.substr(byte_offset(text, count - n));
}

bool is_white_space(char32_t c) noexcept
{
    switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
        return true;
    default:
        return c >= 0x2000 && c <= 0x200A;
    }
}

std::string_view trim(std::string_view text) noexcept
{
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end) {
        std::size_t pos = begin;
        auto c = decode_one(text, pos);
        if (!c || !is_white_space(*c)) {
            break;
        }
        begin = pos;
    }
    while (end > begin) {
        std::size_t start = end - 1;
        while (start > begin && is_continuation(text[start])) {
            --start;
        }
        std::size_t pos = start;
        auto c = decode_one(text, pos);
        if (!c || pos != end || !is_white_space(*c)) {
            break;
        }
        end = start;
    }
    return text.substr(begin, end - begin);
}

}  // namespace gst::utf8
