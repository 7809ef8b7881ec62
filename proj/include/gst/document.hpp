#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gst {

inline constexpr std::uint64_t kSchemaVersion = 1;
inline constexpr std::size_t kDocIdMax = 128;

/// A free-form natural-language value of one annotation dimension.
struct Caption {
    std::string text;

    friend auto operator<=>(const Caption&, const Caption&) = default;
};

/// Dimension key -> caption. Absent key means an empty slot.
using DimMap = std::map<std::string, Caption, std::less<>>;

enum class MarkKind { Interruption, TonalPivot, Other };

std::string_view to_string(MarkKind kind) noexcept;
std::optional<MarkKind> mark_kind_from_string(std::string_view name) noexcept;

/// Standoff rich-text mark. `position` counts Unicode scalars into the
/// sentence's plain text.
struct Mark {
    std::size_t position = 0;
    MarkKind kind = MarkKind::Interruption;
    std::optional<Caption> caption;

    friend bool operator==(const Mark&, const Mark&) = default;
};

/// Token-layer caption over the half-open scalar span [span_start, span_end).
struct TokenAnnotation {
    std::size_t span_start = 0;
    std::size_t span_end = 0;
    std::string key;
    Caption caption;

    friend bool operator==(const TokenAnnotation&, const TokenAnnotation&) = default;
};

struct SpeakerProfile {
    std::string speaker_id;
    DimMap dims;

    friend bool operator==(const SpeakerProfile&, const SpeakerProfile&) = default;
};

struct Sentence {
    std::size_t index = 0;
    std::string speaker_id;
    std::string text;
    std::vector<Mark> marks;
    DimMap dims;
    std::vector<TokenAnnotation> tokens;

    friend bool operator==(const Sentence&, const Sentence&) = default;
};

/// One annotated audio script across the Global, Sentence and Token layers.
struct Document {
    std::uint64_t version = kSchemaVersion;
    std::string doc_id;
    DimMap global_dims;
    std::vector<SpeakerProfile> speakers;
    std::vector<Sentence> sentences;

    friend bool operator==(const Document&, const Document&) = default;
};

bool is_valid_doc_id(std::string_view id) noexcept;
bool is_valid_speaker_id(std::string_view id) noexcept;

/// Number of caption-bearing dimension instances (global, per-speaker,
/// per-sentence and token annotations).
std::size_t dimension_count(const Document& doc) noexcept;

}  // namespace gst
