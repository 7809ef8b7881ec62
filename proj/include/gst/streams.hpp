#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gst/document.hpp"
#include "gst/registry.hpp"

namespace gst {

/// Sentence content that is input rather than plan: who says what, and the
/// rich-text marks on it.
struct SentenceSkeleton {
    std::size_t index = 0;
    std::string speaker_id;
    std::string text;
    std::vector<Mark> marks;

    friend bool operator==(const SentenceSkeleton&, const SentenceSkeleton&) = default;
};

/// The user-supplied hard constraints of a document.
struct InstructView {
    std::string doc_id;
    DimMap global_dims;
    std::vector<SpeakerProfile> speakers;
    std::vector<SentenceSkeleton> sentences;

    friend bool operator==(const InstructView&, const InstructView&) = default;
};

struct SentencePlan {
    std::size_t index = 0;
    DimMap dims;
    std::vector<TokenAnnotation> tokens;

    friend bool operator==(const SentencePlan&, const SentencePlan&) = default;
};

/// The expressive plan of a document, keyed by sentence index.
struct ThinkView {
    std::string doc_id;
    DimMap global_dims;
    std::vector<SentencePlan> sentences;

    friend bool operator==(const ThinkView&, const ThinkView&) = default;
};

struct Partition {
    InstructView instruct;
    ThinkView think;
};

/// Registry stream for `key`; throws Error{Errc::NotFound}.
Stream stream_of(std::string_view key);

/// Splits a valid document. The ThinkView carries one entry per sentence
/// even when that sentence has no Think captions.
Partition partition(const Document& doc);

/// Inverse of partition. Think entries may cover any subset of the
/// skeleton's sentences.
Document merge(const InstructView& instruct, const ThinkView& think);

/// Number of caption-bearing instances in each view.
std::size_t dimension_count(const InstructView& view) noexcept;
std::size_t dimension_count(const ThinkView& view) noexcept;

/// Wire form of the views: the document grammar plus "view": "instruct" |
/// "think". Parsing checks structure and stream purity only.
std::string serialize_view(const InstructView& view);
std::string serialize_view(const ThinkView& view);
InstructView parse_instruct_view(std::string_view bytes);
ThinkView parse_think_view(std::string_view bytes);

}  // namespace gst
