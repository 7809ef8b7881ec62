#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace gst::session::detail {

/// Escaped wire length of `text` without the surrounding quotes.
std::size_t escaped_size(std::string_view text);

/// Longest prefix with at most `max_scalars` scalars and `max_bytes` escaped bytes.
std::string fit_head(std::string_view text, std::size_t max_scalars, std::size_t max_bytes);

/// Longest suffix under the same limits.
std::string fit_tail(std::string_view text, std::size_t max_scalars, std::size_t max_bytes);

}  // namespace gst::session::detail
