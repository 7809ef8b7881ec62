#pragma once

#include <compare>
#include <cstddef>
#include <string>

namespace gst {

enum class ScopeKind { Global, Sentence, Token };

/// Where a dimension instance lives inside a document. Ordering is
/// global < sentence(i) < token(i, j), then by index.
struct Scope {
    ScopeKind kind = ScopeKind::Global;
    std::size_t sentence = 0;
    std::size_t annotation = 0;

    static constexpr Scope global() noexcept { return {}; }
    static constexpr Scope of_sentence(std::size_t index) noexcept
    {
        return {ScopeKind::Sentence, index, 0};
    }
    static constexpr Scope of_token(std::size_t sentence_index, std::size_t annotation_index) noexcept
    {
        return {ScopeKind::Token, sentence_index, annotation_index};
    }

    /// "g" | "s<i>" | "t<i>.<j>"
    [[nodiscard]] std::string to_string() const;

    friend auto operator<=>(const Scope&, const Scope&) = default;
};

struct SlotRef {
    Scope scope;
    std::string key;

    friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

}  // namespace gst
