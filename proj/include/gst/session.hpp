#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gst/document.hpp"
#include "gst/slot.hpp"
#include "gst/streams.hpp"

namespace gst::session {

inline constexpr std::size_t kMaxSpeakers = 8;
inline constexpr std::size_t kContextBudgetBytes = 4096;
inline constexpr std::size_t kMaxSessionIdLength = 100;
inline constexpr std::size_t kMaxSpeakerIdLength = 16;

/// Per-field limits of the compressed context. Captions are capped both in
/// Unicode scalars and in escaped wire bytes; with at most 8 speakers and
/// 16-byte speaker ids the serialized context stays under 3800 bytes.
inline constexpr std::size_t kContextCaptionScalars = 280;
inline constexpr std::size_t kContextCaptionBytes = 640;
inline constexpr std::size_t kSpeakerToneScalars = 140;
inline constexpr std::size_t kSpeakerToneBytes = 200;

enum class Phase { Open, Planning, Rendered, Closed };

std::string_view to_string(Phase phase) noexcept;

/// Bounded emotion-and-context state carried between turns. Empty strings
/// mean "not yet established".
struct SessionContext {
    std::string emotional_baseline;
    std::string arc_summary;
    std::map<std::string, std::string, std::less<>> speaker_last_tone;
    std::string scene_state;

    friend bool operator==(const SessionContext&, const SessionContext&) = default;
};

/// Global Instruct layer fixed when the session opens.
struct GlobalInstruct {
    DimMap global_dims;
    std::vector<SpeakerProfile> speakers;

    friend bool operator==(const GlobalInstruct&, const GlobalInstruct&) = default;
};

struct SessionState {
    std::string session_id;
    GlobalInstruct global_instruct;
    std::uint64_t turn_count = 0;
    SessionContext context;
    Phase phase = Phase::Open;

    friend bool operator==(const SessionState&, const SessionState&) = default;
};

struct TurnSentence {
    std::string speaker_id;
    std::string text;  // authored form, may carry inline [[marks]]

    friend bool operator==(const TurnSentence&, const TurnSentence&) = default;
};

struct TurnRequest {
    std::vector<TurnSentence> sentences;
    /// Caller-pinned Think dimensions; sentence indices are turn-local.
    std::optional<ThinkView> think_overrides;

    friend bool operator==(const TurnRequest&, const TurnRequest&) = default;
};

enum class Provenance { Override, Planned };

std::string_view to_string(Provenance provenance) noexcept;

struct ThinkPlan {
    ThinkView view;
    std::vector<std::string> speakers;  // speaker of each planned sentence
    std::map<SlotRef, Provenance> provenance;

    friend bool operator==(const ThinkPlan&, const ThinkPlan&) = default;
};

struct RenderRequest {
    Document document;
    SessionContext context;  // state the plan was made from

    friend bool operator==(const RenderRequest&, const RenderRequest&) = default;
};

struct AcousticLine {
    std::size_t index = 0;
    std::string speaker_id;
    std::uint64_t duration_ms = 0;
    std::string tone_tag;
    std::string text;

    friend bool operator==(const AcousticLine&, const AcousticLine&) = default;
};

struct AcousticPlan {
    std::vector<AcousticLine> lines;

    friend bool operator==(const AcousticPlan&, const AcousticPlan&) = default;
};

/// Executes a render request. Only the mock ships; neural engines plug in
/// behind the same call.
class RenderBackend {
public:
    virtual ~RenderBackend() = default;
    virtual AcousticPlan render(const RenderRequest& request) = 0;
};

/// duration_ms = 300 + 60 * whitespace-separated tokens; tone_tag is the
/// first 24 scalars of sentence.tone, or "unspecified".
AcousticPlan render_mock(const RenderRequest& request);

class MockRenderer final : public RenderBackend {
public:
    AcousticPlan render(const RenderRequest& request) override { return render_mock(request); }
};

/// Throws Errc::MissingInstruct, Errc::TooManySpeakers, Errc::StreamViolation
/// (non-Instruct key) or Errc::InvalidDocument (bad ids or captions).
SessionState open_session(std::string session_id, DimMap global_instruct, std::vector<SpeakerProfile> speakers);

/// Rule-based Think stage. Overrides are copied verbatim; every sentence
/// ends up with all six Sentence-layer dimensions.
ThinkPlan plan_think(const SessionState& state, const TurnRequest& request);

SessionState compress_context(const SessionState& state, const ThinkPlan& plan);

struct TurnResult {
    ThinkPlan plan;
    RenderRequest request;
    AcousticPlan acoustic;
    SessionState state;
};

/// Think, merge, render, then fold the plan into the context.
TurnResult submit_turn(const SessionState& state, const TurnRequest& request, RenderBackend& backend);
TurnResult submit_turn(const SessionState& state, const TurnRequest& request);

SessionState close_session(const SessionState& state);

/// Canonical wire bytes of the context (no trailing newline).
std::string serialize_context(const SessionContext& context);

struct GrowthProbe {
    std::uint64_t bounded_bytes_max = 0;
    std::uint64_t raw_history_bytes = 0;

    friend bool operator==(const GrowthProbe&, const GrowthProbe&) = default;
};

/// Runs the built-in scripted session for `turns` turns and compares the
/// largest compressed context with the size of the concatenated raw turns.
GrowthProbe context_growth_probe(std::size_t turns);

/// The turn the probe submits at position `turn` (each is over 1 KiB).
TurnRequest scripted_turn(std::size_t turn);
/// The session the probe opens.
SessionState scripted_session();

/// Session script file: header for open_session plus the list of turns.
struct SessionScript {
    std::string session_id;
    DimMap global_dims;
    std::vector<SpeakerProfile> speakers;
    std::vector<TurnRequest> turns;

    friend bool operator==(const SessionScript&, const SessionScript&) = default;
};

SessionScript parse_script(std::string_view bytes);
std::string serialize_script(const SessionScript& script);
/// Canonical bytes of one turn object (no trailing newline).
std::string serialize_turn(const TurnRequest& request);

struct SimulationResult {
    std::vector<TurnResult> turns;
    SessionState final_state;  // closed
};

SimulationResult simulate(const SessionScript& script, RenderBackend& backend);

/// "turn|index|speaker_id|duration_ms|tone_tag|text\n" per line; '\\', '|',
/// '\n' and '\r' inside fields are backslash-escaped.
std::string format_acoustic_plan(std::uint64_t turn, const AcousticPlan& plan);

}  // namespace gst::session
