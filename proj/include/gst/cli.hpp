#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "gst/dropout.hpp"
#include "gst/pipeline.hpp"
#include "gst/session.hpp"

namespace gst::cli {

/// 0 success, 1 input at fault, 2 usage error, 3 internal error.
enum class ExitStatus : int { Ok = 0, InputError = 1, UsageError = 2, InternalError = 3 };

enum class Format { Wire, Human };

/// Outcome of `session simulate`.
struct SessionSummary {
    std::string session_id;
    std::uint64_t turns = 0;
    std::uint64_t sentences = 0;
    std::uint64_t context_bytes_max = 0;
    std::uint64_t total_duration_ms = 0;

    friend bool operator==(const SessionSummary&, const SessionSummary&) = default;
};

SessionSummary summarize(const session::SimulationResult& result);

/// Wire form is the canonical object plus '\n'; human form is one
/// "name value" line per field, integers printed in decimal with micro
/// ratios also shown as a six-digit fraction.
std::string emit_report(const pipeline::RetentionReport& report, Format format);
std::string emit_report(const MaskStats& stats, Format format);
std::string emit_report(const SessionSummary& summary, Format format);
std::string emit_report(const session::GrowthProbe& probe, Format format);

/// Runs one command line. Results go to `out` or to files; diagnostics go
/// to `err` as "code path message" lines.
ExitStatus dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gst::cli
