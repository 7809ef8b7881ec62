#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gst/document.hpp"

namespace gst::wire {

struct MarkedText {
    std::string plain;
    std::vector<Mark> marks;

    friend bool operator==(const MarkedText&, const MarkedText&) = default;
};

/// Inline authoring form for rich-text marks:
///
///   [[interruption]]          interruption cue, no caption
///   [[tonal_pivot|caption]]   tonal pivot
///   [[other|caption]]         any other cue
///
/// Outside a group a backslash escapes one following '[' or '\', so `\[[` reads
/// as a literal "[[" and `\\` as one backslash; any other backslash is
/// literal. Inside a caption a backslash escapes the next character, so
/// captions may contain "]]".
/// Mark positions are Unicode scalar offsets into the returned plain text.
/// Throws ParseError{BadSyntax} (or BadUtf8) with the byte offset into
/// `authored`.
MarkedText parse_marked_text(std::string_view authored);

/// Inverse of parse_marked_text for marks sorted by position (ties keep
/// their order). Throws Error{Errc::BadMark} for a position past the end of
/// `plain` or a caption/kind mismatch.
std::string render_marked_text(std::string_view plain, std::span<const Mark> marks);

}  // namespace gst::wire
