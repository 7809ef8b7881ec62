#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gst/document.hpp"

namespace gst {

enum class ViolationCode {
    UnknownKey = 1,        // E001 unknown key, or key not allowed at this scope
    MissingInstruct,       // E002
    BadSpan,               // E003
    DanglingSpeaker,       // E004
    BadIndexSequence,      // E005
    BadCaption,            // E006 caption/text empty, too long, control char, bad UTF-8
    BadSpeaker,            // E007 duplicate or malformed speaker id
    OverlappingSpans,      // E008
    BadMark,               // E009 position out of range or caption/kind mismatch
    BadIdentity,           // E010 doc_id or version
};

/// "E001" .. "E010"
std::string code_string(ViolationCode code);

struct Violation {
    ViolationCode code;
    std::string path;  // JSON pointer into the wire form
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

/// Checks every structural invariant of the document model. An empty report
/// means the document is valid.
ValidationReport validate(const Document& doc);

/// Validates a single caption against a scalar budget.
bool is_valid_caption(std::string_view text, std::size_t caption_max) noexcept;

/// Throws Error{Errc::InvalidDocument} carrying the first violation.
void require_valid(const Document& doc);

/// Appends a JSON-pointer reference token, escaping '~' and '/'.
std::string pointer_append(std::string path, std::string_view token);

}  // namespace gst
