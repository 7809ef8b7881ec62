#include "gst/session.hpp"

#include <algorithm>
#include <set>

#include "context_budget.hpp"
#include "gst/error.hpp"
#include "gst/registry.hpp"
#include "gst/utf8.hpp"
#include "gst/validate.hpp"
#include "gst/wire/marked_text.hpp"
#include "gst/wire/value.hpp"

namespace gst::session {

namespace detail {

std::size_t escaped_size(std::string_view text)
{
    std::string out;
    wire::write_string(text, out);
    return out.size() - 2;
}

namespace {

template <typename Cut>
std::string fit(std::string_view text, std::size_t max_scalars, std::size_t max_bytes, Cut cut)
{
    std::size_t keep = std::min(max_scalars, utf8::scalar_count(text));
    std::string_view piece = cut(text, keep);
    while (keep > 0 && escaped_size(piece) > max_bytes) {
        piece = cut(text, --keep);
    }
    return keep == 0 ? std::string() : std::string(piece);
}

}  // namespace

std::string fit_head(std::string_view text, std::size_t max_scalars, std::size_t max_bytes)
{
    return fit(text, max_scalars, max_bytes, utf8::head);
}

std::string fit_tail(std::string_view text, std::size_t max_scalars, std::size_t max_bytes)
{
    return fit(text, max_scalars, max_bytes, utf8::tail);
}

}  // namespace detail

namespace {

constexpr std::string_view kTone = "sentence.tone";
constexpr std::string_view kIntonation = "sentence.intonation";
constexpr std::string_view kPace = "sentence.pace";
constexpr std::string_view kVolume = "sentence.volume";
constexpr std::string_view kIntent = "sentence.intent";
constexpr std::string_view kBackgroundState = "sentence.background_state";
constexpr std::string_view kSceneUnchanged = "as established";

void require_phase_for_turn(const SessionState& state)
{
    if (state.phase != Phase::Open && state.phase != Phase::Rendered) {
        throw Error(Errc::InvalidPhase, "turn submitted in phase " + std::string(to_string(state.phase)));
    }
}

std::string clip_caption(std::string_view text, std::size_t max_scalars)
{
    return std::string(utf8::head(text, max_scalars));
}

// Text before the first ',', ';' or '.', trimmed.
std::string first_clause(std::string_view text)
{
    const std::size_t cut = text.find_first_of(",;.");
    return std::string(utf8::trim(text.substr(0, cut)));
}

bool has_all_caps_word(std::string_view text)
{
    std::size_t letters = 0;
    bool lower = false;
    auto flush = [&] {
        const bool hit = letters >= 2 && !lower;
        letters = 0;
        lower = false;
        return hit;
    };
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (flush()) return true;
        } else if (c >= 'A' && c <= 'Z') {
            ++letters;
        } else if (c >= 'a' && c <= 'z') {
            lower = true;
        }
    }
    return flush();
}

bool trails_off(std::string_view text)
{
    const std::string_view t = utf8::trim(text);
    return t.ends_with("...") || t.ends_with("…");
}

DimMap planned_sentence_dims(std::string_view plain, const SessionContext& context)
{
    std::string tone = first_clause(context.emotional_baseline);
    if (tone.empty()) {
        tone = "neutral";
    }
    if (has_all_caps_word(plain)) {
        tone += ", with emphasis";
    }
    const bool question = plain.find('?') != std::string_view::npos;
    const bool exclaim = plain.find('!') != std::string_view::npos;

    DimMap dims;
    dims.emplace(kTone, Caption{clip_caption(tone, kSentenceCaptionMax)});
    dims.emplace(kIntonation, Caption{question ? "rising, incredulous question" : "level"});
    dims.emplace(kPace, Caption{trails_off(plain) ? "slow, trailing" : "moderate"});
    dims.emplace(kVolume, Caption{exclaim ? "raised" : "conversational"});
    dims.emplace(kIntent, Caption{question ? "asking" : "stating"});
    dims.emplace(kBackgroundState,
                 Caption{context.scene_state.empty() ? std::string(kSceneUnchanged)
                                                     : clip_caption(context.scene_state, kSentenceCaptionMax)});
    return dims;
}

void check_override_key(std::string_view key, Cardinality expected)
{
    const auto* d = registry().find(key);
    if (d == nullptr || d->stream != Stream::Think || d->cardinality != expected) {
        throw Error(Errc::BadOverrideKey, "'" + std::string(key) + "' cannot be overridden as " +
                                              std::string(to_string(expected)));
    }
}

void check_override_caption(const std::string& key, const Caption& caption)
{
    if (!is_valid_caption(caption.text, registry().lookup(key).caption_max)) {
        throw Error(Errc::InvalidDocument, "override caption for '" + key + "' is not a valid caption");
    }
}

std::string turn_doc_id(const SessionState& state)
{
    return state.session_id + ".t" + std::to_string(state.turn_count + 1);
}

InstructView turn_skeleton(const SessionState& state, const TurnRequest& request)
{
    InstructView view;
    view.doc_id = turn_doc_id(state);
    view.global_dims = state.global_instruct.global_dims;
    view.speakers = state.global_instruct.speakers;
    for (std::size_t i = 0; i < request.sentences.size(); ++i) {
        auto marked = wire::parse_marked_text(request.sentences[i].text);
        view.sentences.push_back({i, request.sentences[i].speaker_id, std::move(marked.plain),
                                  std::move(marked.marks)});
    }
    return view;
}

void enforce_budget(SessionContext& c)
{
    using namespace detail;
    c.emotional_baseline = fit_head(c.emotional_baseline, kContextCaptionScalars, kContextCaptionBytes);
    c.arc_summary = fit_tail(c.arc_summary, kContextCaptionScalars, kContextCaptionBytes);
    c.scene_state = fit_head(c.scene_state, kContextCaptionScalars, kContextCaptionBytes);
    for (auto& [speaker, tone] : c.speaker_last_tone) {
        tone = fit_head(tone, kSpeakerToneScalars, kSpeakerToneBytes);
    }
}

}  // namespace

std::string_view to_string(Phase phase) noexcept
{
    switch (phase) {
    case Phase::Open: return "Open";
    case Phase::Planning: return "Planning";
    case Phase::Rendered: return "Rendered";
    case Phase::Closed: return "Closed";
    }
    return "?";
}

std::string_view to_string(Provenance provenance) noexcept
{
    return provenance == Provenance::Override ? "override" : "planned";
}

SessionState open_session(std::string session_id, DimMap global_instruct, std::vector<SpeakerProfile> speakers)
{
    if (!is_valid_doc_id(session_id) || session_id.size() > kMaxSessionIdLength) {
        throw Error(Errc::InvalidDocument, "session_id must be 1-100 characters from [A-Za-z0-9._-]");
    }
    for (const auto& [key, caption] : global_instruct) {
        const auto* d = registry().find(key);
        if (d == nullptr || d->stream != Stream::Instruct || d->cardinality != Cardinality::PerDocument) {
            throw Error(Errc::StreamViolation, "'" + key + "' is not a global Instruct dimension");
        }
        if (!is_valid_caption(caption.text, d->caption_max)) {
            throw Error(Errc::InvalidDocument, "caption for '" + key + "' is not a valid caption");
        }
    }
    for (auto key : registry().keys(Stream::Instruct, Cardinality::PerDocument)) {
        if (!global_instruct.contains(key)) {
            throw Error(Errc::MissingInstruct, "missing '" + std::string(key) + "'");
        }
    }
    if (speakers.empty()) {
        throw Error(Errc::MissingInstruct, "a session needs at least one speaker");
    }
    if (speakers.size() > kMaxSpeakers) {
        throw Error(Errc::TooManySpeakers, std::to_string(speakers.size()) + " speakers, at most " +
                                               std::to_string(kMaxSpeakers) + " allowed");
    }
    std::set<std::string_view> ids;
    for (const auto& s : speakers) {
        if (!is_valid_speaker_id(s.speaker_id) || s.speaker_id.size() > kMaxSpeakerIdLength ||
            !ids.insert(s.speaker_id).second) {
            throw Error(Errc::InvalidDocument, "bad or duplicate speaker id '" + s.speaker_id + "'");
        }
        for (const auto& [key, caption] : s.dims) {
            const auto* d = registry().find(key);
            if (d == nullptr || d->cardinality != Cardinality::PerSpeaker) {
                throw Error(Errc::StreamViolation, "'" + key + "' is not a speaker Instruct dimension");
            }
            if (!is_valid_caption(caption.text, d->caption_max)) {
                throw Error(Errc::InvalidDocument, "caption for '" + key + "' is not a valid caption");
            }
        }
        for (auto key : registry().keys(Stream::Instruct, Cardinality::PerSpeaker)) {
            if (!s.dims.contains(key)) {
                throw Error(Errc::MissingInstruct, s.speaker_id + " is missing '" + std::string(key) + "'");
            }
        }
    }

    SessionState state;
    state.session_id = std::move(session_id);
    state.context.emotional_baseline =
        std::string(utf8::head(global_instruct.at("global.style_tags").text, kContextCaptionScalars));
    state.global_instruct = {std::move(global_instruct), std::move(speakers)};
    enforce_budget(state.context);
    return state;
}

ThinkPlan plan_think(const SessionState& state, const TurnRequest& request)
{
    require_phase_for_turn(state);
    if (request.sentences.empty()) {
        throw Error(Errc::InvalidDocument, "a turn needs at least one sentence");
    }
    const auto& speakers = state.global_instruct.speakers;

    ThinkPlan plan;
    plan.view.doc_id = turn_doc_id(state);
    for (std::size_t i = 0; i < request.sentences.size(); ++i) {
        const auto& sentence = request.sentences[i];
        if (std::ranges::find(speakers, sentence.speaker_id, &SpeakerProfile::speaker_id) == speakers.end()) {
            throw Error(Errc::UnknownSpeaker, "'" + sentence.speaker_id + "' is not part of this session");
        }
        const auto marked = wire::parse_marked_text(sentence.text);
        if (marked.plain.empty()) {
            throw Error(Errc::InvalidDocument, "sentence " + std::to_string(i) + " has no text");
        }
        plan.view.sentences.push_back({i, planned_sentence_dims(marked.plain, state.context), {}});
        plan.speakers.push_back(sentence.speaker_id);
        for (const auto& [key, caption] : plan.view.sentences.back().dims) {
            plan.provenance[{Scope::of_sentence(i), key}] = Provenance::Planned;
        }
    }

    // Context distilled into the global Think layer.
    if (!state.context.arc_summary.empty()) {
        plan.view.global_dims.emplace("global.emotional_arc", Caption{state.context.arc_summary});
        plan.provenance[{Scope::global(), "global.emotional_arc"}] = Provenance::Planned;
    }
    if (!state.context.scene_state.empty()) {
        plan.view.global_dims.emplace("global.acoustic_environment", Caption{state.context.scene_state});
        plan.provenance[{Scope::global(), "global.acoustic_environment"}] = Provenance::Planned;
    }

    if (!request.think_overrides) {
        return plan;
    }
    const ThinkView& overrides = *request.think_overrides;
    for (const auto& [key, caption] : overrides.global_dims) {
        check_override_key(key, Cardinality::PerDocument);
        check_override_caption(key, caption);
        plan.view.global_dims.insert_or_assign(key, caption);
        plan.provenance[{Scope::global(), key}] = Provenance::Override;
    }
    std::set<std::size_t> seen;
    for (const auto& pinned : overrides.sentences) {
        if (pinned.index >= plan.view.sentences.size() || !seen.insert(pinned.index).second) {
            throw Error(Errc::BadOverrideKey, "override for sentence " + std::to_string(pinned.index) +
                                                  " of a " + std::to_string(plan.view.sentences.size()) +
                                                  "-sentence turn");
        }
        auto& target = plan.view.sentences[pinned.index];
        for (const auto& [key, caption] : pinned.dims) {
            check_override_key(key, Cardinality::PerSentence);
            check_override_caption(key, caption);
            target.dims.insert_or_assign(key, caption);
            plan.provenance[{Scope::of_sentence(pinned.index), key}] = Provenance::Override;
        }
        for (const auto& token : pinned.tokens) {
            check_override_key(token.key, Cardinality::PerTokenSpan);
            check_override_caption(token.key, token.caption);
            plan.provenance[{Scope::of_token(pinned.index, target.tokens.size()), token.key}] =
                Provenance::Override;
            target.tokens.push_back(token);
        }
    }
    return plan;
}

SessionState compress_context(const SessionState& state, const ThinkPlan& plan)
{
    SessionState next = state;
    auto& c = next.context;
    const auto& sentences = plan.view.sentences;
    if (sentences.empty()) {
        return next;
    }

    const auto& last = sentences.back().dims;
    if (auto tone = last.find(kTone); tone != last.end()) {
        std::string joined = c.arc_summary.empty() ? tone->second.text : c.arc_summary + "; " + tone->second.text;
        std::string_view kept = utf8::tail(joined, kContextCaptionScalars);
        while (!kept.empty() && (kept.front() == ';' || kept.front() == ' ')) {
            kept.remove_prefix(1);
        }
        c.arc_summary = std::string(kept);
    }
    for (std::size_t i = 0; i < sentences.size() && i < plan.speakers.size(); ++i) {
        if (auto tone = sentences[i].dims.find(kTone); tone != sentences[i].dims.end()) {
            c.speaker_last_tone[plan.speakers[i]] = std::string(utf8::head(tone->second.text, kSpeakerToneScalars));
        }
    }
    if (auto bg = last.find(kBackgroundState); bg != last.end() && bg->second.text != kSceneUnchanged) {
        c.scene_state = bg->second.text;
    }
    enforce_budget(c);
    return next;
}

TurnResult submit_turn(const SessionState& state, const TurnRequest& request, RenderBackend& backend)
{
    require_phase_for_turn(state);
    SessionState planning = state;
    planning.phase = Phase::Planning;

    TurnResult result;
    result.plan = plan_think(state, request);
    result.request.document = merge(turn_skeleton(state, request), result.plan.view);
    result.request.context = state.context;
    try {
        result.acoustic = backend.render(result.request);
    } catch (const std::exception& e) {
        throw Error(Errc::BackendFailure, e.what());
    }
    result.state = compress_context(planning, result.plan);
    result.state.turn_count = state.turn_count + 1;
    result.state.phase = Phase::Rendered;
    return result;
}

TurnResult submit_turn(const SessionState& state, const TurnRequest& request)
{
    MockRenderer mock;
    return submit_turn(state, request, mock);
}

SessionState close_session(const SessionState& state)
{
    if (state.phase != Phase::Rendered) {
        throw Error(Errc::InvalidPhase, "close in phase " + std::string(to_string(state.phase)));
    }
    SessionState next = state;
    next.phase = Phase::Closed;
    return next;
}

std::string serialize_context(const SessionContext& context)
{
    wire::Value::Object tones;
    for (const auto& [speaker, tone] : context.speaker_last_tone) {
        tones.emplace(speaker, tone);
    }
    return wire::to_canonical(wire::Value::Object{
        {"arc_summary", context.arc_summary},
        {"emotional_baseline", context.emotional_baseline},
        {"scene_state", context.scene_state},
        {"speaker_last_tone", std::move(tones)},
    });
}

}  // namespace gst::session
