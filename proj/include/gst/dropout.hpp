#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gst/document.hpp"
#include "gst/slot.hpp"

namespace gst {

/// Probabilities are integers over 10^6.
inline constexpr std::uint32_t kMicroOne = 1'000'000;

struct DropoutConfig {
    std::uint32_t default_p = 200'000;
    std::map<std::string, std::uint32_t, std::less<>> overrides;

    /// Throws Error{Errc::InvalidConfig} for out-of-range probabilities or
    /// overrides on unknown or Instruct keys.
    void check() const;

    [[nodiscard]] std::uint32_t probability(std::string_view key) const;

    friend bool operator==(const DropoutConfig&, const DropoutConfig&) = default;
};

/// The Think slots chosen for masking in one document, in Scope/key order.
struct MaskPlan {
    std::string doc_id;
    std::uint64_t seed = 0;
    std::vector<SlotRef> slots;

    friend bool operator==(const MaskPlan&, const MaskPlan&) = default;
};

/// All non-empty Think dimension instances of `doc`, sorted.
std::vector<SlotRef> think_slots(const Document& doc);

/// FNV-1a 64 over decimal(seed) 0x1F doc_id 0x1F scope 0x1F key.
std::uint64_t slot_hash(std::uint64_t seed, std::string_view doc_id, const Scope& scope, std::string_view key);

/// hash / 2^64 < micro_p / 10^6, evaluated exactly.
constexpr bool hash_below(std::uint64_t hash, std::uint32_t micro_p) noexcept
{
    return static_cast<unsigned __int128>(hash) * kMicroOne <
           static_cast<unsigned __int128>(micro_p) << 64;
}

MaskPlan plan_mask(const Document& doc, const DropoutConfig& cfg, std::uint64_t seed);

/// Removes every planned slot. Throws Errc::DocIdMismatch or
/// Errc::SlotNotFound.
Document apply_mask(const Document& doc, const MaskPlan& plan);

struct KeyRate {
    std::uint64_t masked = 0;
    std::uint64_t eligible = 0;
    std::uint32_t rate_u = 0;  // floor(masked * 10^6 / eligible)

    friend bool operator==(const KeyRate&, const KeyRate&) = default;
};

using MaskStats = std::map<std::string, KeyRate, std::less<>>;

/// Per-Think-key masked/eligible counts over aligned plans and documents.
/// Keys with no eligible slot are omitted. Throws Errc::Misaligned.
MaskStats mask_stats(std::span<const MaskPlan> plans, std::span<const Document> docs);

/// Wire form {"default_p": int, "overrides": {key: int}}; "overrides" may
/// be omitted. The parsed config has passed check().
DropoutConfig parse_dropout_config(std::string_view bytes);
std::string serialize_dropout_config(const DropoutConfig& cfg);

std::string serialize_mask_plan(const MaskPlan& plan);

}  // namespace gst
