#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gst {

/// Failure categories raised by the document, stream, dropout, pipeline and
/// session operations. Parse failures use wire::ParseError instead.
enum class Errc {
    NotFound,
    InvalidDocument,
    DocIdMismatch,
    DanglingSentenceIndex,
    DuplicateDimension,
    StreamViolation,
    InvalidConfig,
    SlotNotFound,
    Misaligned,
    DuplicateRecordId,
    LabelerViolation,
    UniverseMismatch,
    MissingInstruct,
    TooManySpeakers,
    BadOverrideKey,
    UnknownSpeaker,
    InvalidPhase,
    BackendFailure,
    BadMark,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    [[nodiscard]] Errc code() const noexcept { return code_; }
    /// Message without the leading code name.
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    Errc code_;
    std::string detail_;
};

}  // namespace gst
