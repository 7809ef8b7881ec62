#pragma once

#include <string>
#include <string_view>

#include "gst/document.hpp"
#include "gst/wire/value.hpp"

namespace gst::wire {

inline constexpr std::string_view kFileExtension = ".gst";
inline constexpr std::string_view kMediaType = "application/x-gst+json; v=1";

/// Canonical bytes of a valid document, ending in exactly one '\n'.
/// Throws Error{Errc::InvalidDocument} when validate() reports anything.
std::string serialize_canonical(const Document& doc);

/// Reads a document; the result always passes validate(). Throws ParseError
/// (BadUtf8, BadSyntax, BadVersion, or SchemaViolation carrying the E-code).
Document parse(std::string_view bytes);

/// serialize_canonical(parse(bytes)).
std::string canonicalize(std::string_view bytes);

/// Tree conversion used by the document codec and by view/plan formats that
/// embed the same record shapes.
Value to_value(const Document& doc);
Value to_value(const DimMap& dims);
Value to_value(const Mark& mark);
Value to_value(const TokenAnnotation& token);
Value to_value(const SpeakerProfile& speaker);

/// Structural decode without validation. `source` is used for error
/// positions only.
Document document_from_value(const Value& root, std::string_view source);
DimMap dims_from_value(const Value& node, std::string_view source, std::string_view what);
Mark mark_from_value(const Value& node, std::string_view source);
TokenAnnotation token_from_value(const Value& node, std::string_view source);
SpeakerProfile speaker_from_value(const Value& node, std::string_view source);

/// Appends '\n' to canonical bytes of `value`.
std::string to_canonical_file(const Value& value);

}  // namespace gst::wire
