#include "gst/registry.hpp"

#include <algorithm>
#include <array>

#include "gst/error.hpp"

namespace gst {

namespace {

using enum Layer;
using enum Stream;
using enum Cardinality;

// Order is part of the contract: Instruct/Global, Think/Global,
// Think/Sentence, Think/Token. "speed" and "pace" share sentence.pace.
constexpr std::array<DimensionDescriptor, 22> kCanonical{{
    {"global.show_format", Global, Instruct, PerDocument, kGlobalCaptionMax},
    {"global.style_tags", Global, Instruct, PerDocument, kGlobalCaptionMax},
    {"global.topic", Global, Instruct, PerDocument, kGlobalCaptionMax},
    {"global.acoustic_environment_rating", Global, Instruct, PerDocument, kGlobalCaptionMax},
    {"speaker.gender", Global, Instruct, PerSpeaker, kGlobalCaptionMax},
    {"speaker.age", Global, Instruct, PerSpeaker, kGlobalCaptionMax},
    {"speaker.vocal_personality", Global, Instruct, PerSpeaker, kGlobalCaptionMax},

    {"global.atmosphere", Global, Think, PerDocument, kGlobalCaptionMax},
    {"global.emotional_arc", Global, Think, PerDocument, kGlobalCaptionMax},
    {"global.acoustic_environment", Global, Think, PerDocument, kGlobalCaptionMax},
    {"global.sound_events", Global, Think, PerDocument, kGlobalCaptionMax},

    {"sentence.tone", Sentence, Think, PerSentence, kSentenceCaptionMax},
    {"sentence.intonation", Sentence, Think, PerSentence, kSentenceCaptionMax},
    {"sentence.pace", Sentence, Think, PerSentence, kSentenceCaptionMax},
    {"sentence.volume", Sentence, Think, PerSentence, kSentenceCaptionMax},
    {"sentence.intent", Sentence, Think, PerSentence, kSentenceCaptionMax},
    {"sentence.background_state", Sentence, Think, PerSentence, kSentenceCaptionMax},

    {"token.stress", Token, Think, PerTokenSpan, kTokenCaptionMax},
    {"token.pronunciation", Token, Think, PerTokenSpan, kTokenCaptionMax},
    {"token.liaison", Token, Think, PerTokenSpan, kTokenCaptionMax},
    {"token.tone_sandhi", Token, Think, PerTokenSpan, kTokenCaptionMax},
    {"token.interjection_duration", Token, Think, PerTokenSpan, kTokenCaptionMax},
}};

constexpr bool layer_matches(const DimensionDescriptor& d)
{
    switch (d.layer) {
    case Global: return d.cardinality == PerDocument || d.cardinality == PerSpeaker;
    case Sentence: return d.cardinality == PerSentence;
    case Token: return d.cardinality == PerTokenSpan;
    }
    return false;
}

constexpr bool table_is_consistent()
{
    for (std::size_t i = 0; i < kCanonical.size(); ++i) {
        const auto& d = kCanonical[i];
        if (!layer_matches(d) || (d.stream == Instruct && d.layer != Global)) {
            return false;
        }
        for (std::size_t j = i + 1; j < kCanonical.size(); ++j) {
            if (kCanonical[j].key == d.key) {
                return false;
            }
        }
    }
    return true;
}

static_assert(table_is_consistent());

template <typename Pred>
std::vector<std::string_view> collect(Pred pred)
{
    std::vector<std::string_view> out;
    for (const auto& d : kCanonical) {
        if (pred(d)) {
            out.push_back(d.key);
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(Layer layer) noexcept
{
    switch (layer) {
    case Global: return "global";
    case Sentence: return "sentence";
    case Token: return "token";
    }
    return "?";
}

std::string_view to_string(Stream stream) noexcept
{
    return stream == Instruct ? "instruct" : "think";
}

std::string_view to_string(Cardinality cardinality) noexcept
{
    switch (cardinality) {
    case PerDocument: return "one-per-document";
    case PerSpeaker: return "one-per-speaker";
    case PerSentence: return "one-per-sentence";
    case PerTokenSpan: return "one-per-token-span";
    }
    return "?";
}

std::span<const DimensionDescriptor> DimensionRegistry::descriptors() const noexcept
{
    return kCanonical;
}

const DimensionDescriptor* DimensionRegistry::find(std::string_view key) const noexcept
{
    auto it = std::ranges::find(kCanonical, key, &DimensionDescriptor::key);
    return it == kCanonical.end() ? nullptr : &*it;
}

const DimensionDescriptor& DimensionRegistry::lookup(std::string_view key) const
{
    if (const auto* d = find(key)) {
        return *d;
    }
    throw Error(Errc::NotFound, "unknown dimension key '" + std::string(key) + "'");
}

std::vector<std::string_view> DimensionRegistry::keys(Stream stream) const
{
    return collect([&](const DimensionDescriptor& d) { return d.stream == stream; });
}

std::vector<std::string_view> DimensionRegistry::keys(Cardinality cardinality) const
{
    return collect([&](const DimensionDescriptor& d) { return d.cardinality == cardinality; });
}

std::vector<std::string_view> DimensionRegistry::keys(Stream stream, Cardinality cardinality) const
{
    return collect([&](const DimensionDescriptor& d) {
        return d.stream == stream && d.cardinality == cardinality;
    });
}

const DimensionRegistry& registry() noexcept
{
    static const DimensionRegistry instance;
    return instance;
}

}  // namespace gst
