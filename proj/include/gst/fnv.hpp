#pragma once

#include <cstdint>
#include <string_view>

namespace gst {

/// Incremental 64-bit FNV-1a.
class Fnv1a64 {
public:
    static constexpr std::uint64_t kOffsetBasis = 14695981039346656037ULL;
    static constexpr std::uint64_t kPrime = 1099511628211ULL;

    constexpr Fnv1a64& update(std::uint8_t byte) noexcept
    {
        state_ ^= byte;
        state_ *= kPrime;
        return *this;
    }

    constexpr Fnv1a64& update(std::string_view bytes) noexcept
    {
        for (char c : bytes) {
            update(static_cast<std::uint8_t>(c));
        }
        return *this;
    }

    [[nodiscard]] constexpr std::uint64_t value() const noexcept { return state_; }

private:
    std::uint64_t state_ = kOffsetBasis;
};

constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    return Fnv1a64{}.update(bytes).value();
}

/// Field separator used when hashing composite identities.
inline constexpr std::uint8_t kUnitSeparator = 0x1F;

/// Maps a 64-bit hash onto [0, range) as floor(hash * range / 2^64).
constexpr std::uint64_t scale_hash(std::uint64_t hash, std::uint64_t range) noexcept
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(hash) * range) >> 64);
}

}  // namespace gst
