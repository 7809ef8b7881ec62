#include "gst/error.hpp"

namespace gst {

std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::NotFound: return "NotFound";
    case Errc::InvalidDocument: return "InvalidDocument";
    case Errc::DocIdMismatch: return "DocIdMismatch";
    case Errc::DanglingSentenceIndex: return "DanglingSentenceIndex";
    case Errc::DuplicateDimension: return "DuplicateDimension";
    case Errc::StreamViolation: return "StreamViolation";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::SlotNotFound: return "SlotNotFound";
    case Errc::Misaligned: return "Misaligned";
    case Errc::DuplicateRecordId: return "DuplicateRecordId";
    case Errc::LabelerViolation: return "LabelerViolation";
    case Errc::UniverseMismatch: return "UniverseMismatch";
    case Errc::MissingInstruct: return "MissingInstruct";
    case Errc::TooManySpeakers: return "TooManySpeakers";
    case Errc::BadOverrideKey: return "BadOverrideKey";
    case Errc::UnknownSpeaker: return "UnknownSpeaker";
    case Errc::InvalidPhase: return "InvalidPhase";
    case Errc::BackendFailure: return "BackendFailure";
    case Errc::BadMark: return "BadMark";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message)
{
}

}  // namespace gst
