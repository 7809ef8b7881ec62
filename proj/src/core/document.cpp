#include "gst/document.hpp"

#include <algorithm>

#include "gst/slot.hpp"

namespace gst {

std::string_view to_string(MarkKind kind) noexcept
{
    switch (kind) {
    case MarkKind::Interruption: return "interruption";
    case MarkKind::TonalPivot: return "tonal_pivot";
    case MarkKind::Other: return "other";
    }
    return "?";
}

std::optional<MarkKind> mark_kind_from_string(std::string_view name) noexcept
{
    if (name == "interruption") return MarkKind::Interruption;
    if (name == "tonal_pivot") return MarkKind::TonalPivot;
    if (name == "other") return MarkKind::Other;
    return std::nullopt;
}

bool is_valid_doc_id(std::string_view id) noexcept
{
    if (id.empty() || id.size() > kDocIdMax) {
        return false;
    }
    return std::ranges::all_of(id, [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
               c == '.' || c == '_' || c == '-';
    });
}

bool is_valid_speaker_id(std::string_view id) noexcept
{
    if (id.size() < 4 || !id.starts_with("spk")) {
        return false;
    }
    return std::ranges::all_of(id.substr(3), [](char c) { return c >= '0' && c <= '9'; });
}

std::size_t dimension_count(const Document& doc) noexcept
{
    std::size_t count = doc.global_dims.size();
    for (const auto& s : doc.speakers) {
        count += s.dims.size();
    }
    for (const auto& s : doc.sentences) {
        count += s.dims.size() + s.tokens.size();
    }
    return count;
}

std::string Scope::to_string() const
{
    switch (kind) {
    case ScopeKind::Global: return "g";
    case ScopeKind::Sentence: return "s" + std::to_string(sentence);
    case ScopeKind::Token: return "t" + std::to_string(sentence) + "." + std::to_string(annotation);
    }
    return {};
}

}  // namespace gst
