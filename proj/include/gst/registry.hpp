#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gst {

enum class Layer { Global, Sentence, Token };
enum class Stream { Instruct, Think };
enum class Cardinality { PerDocument, PerSpeaker, PerSentence, PerTokenSpan };

std::string_view to_string(Layer layer) noexcept;
std::string_view to_string(Stream stream) noexcept;
std::string_view to_string(Cardinality cardinality) noexcept;

struct DimensionDescriptor {
    std::string_view key;
    Layer layer;
    Stream stream;
    Cardinality cardinality;
    std::size_t caption_max;  // Unicode scalars

    friend bool operator==(const DimensionDescriptor&, const DimensionDescriptor&) = default;
};

inline constexpr std::size_t kGlobalCaptionMax = 500;
inline constexpr std::size_t kSentenceCaptionMax = 280;
inline constexpr std::size_t kTokenCaptionMax = 140;

/// The fixed taxonomy of annotation dimensions. Every key belongs to exactly
/// one layer and one stream; Instruct keys are always Global.
class DimensionRegistry {
public:
    [[nodiscard]] std::span<const DimensionDescriptor> descriptors() const noexcept;
    [[nodiscard]] std::size_t count() const noexcept { return descriptors().size(); }

    /// nullptr for an unknown key.
    [[nodiscard]] const DimensionDescriptor* find(std::string_view key) const noexcept;

    /// Throws Error{Errc::NotFound} for an unknown key.
    [[nodiscard]] const DimensionDescriptor& lookup(std::string_view key) const;

    /// Keys in registry order matching the given predicate fields.
    [[nodiscard]] std::vector<std::string_view> keys(Stream stream) const;
    [[nodiscard]] std::vector<std::string_view> keys(Cardinality cardinality) const;
    [[nodiscard]] std::vector<std::string_view> keys(Stream stream, Cardinality cardinality) const;
};

/// The canonical 22-entry registry.
const DimensionRegistry& registry() noexcept;

}  // namespace gst
