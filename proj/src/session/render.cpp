#include <algorithm>

#include "gst/error.hpp"
#include "gst/session.hpp"
#include "gst/utf8.hpp"
#include "gst/validate.hpp"

namespace gst::session {

namespace {

constexpr std::size_t kToneTagScalars = 24;

std::uint64_t whitespace_tokens(std::string_view text)
{
    std::uint64_t tokens = 0;
    bool in_token = false;
    for (char32_t c : utf8::decode(text)) {
        const bool space = utf8::is_white_space(c);
        if (!space && !in_token) {
            ++tokens;
        }
        in_token = !space;
    }
    return tokens;
}

void append_field(std::string& out, std::string_view field)
{
    for (char c : field) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '|': out += "\\|"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        default: out += c;
        }
    }
}

}  // namespace

AcousticPlan render_mock(const RenderRequest& request)
{
    const Document& doc = request.document;
    try {
        require_valid(doc);
    } catch (const Error& e) {
        throw Error(Errc::InvalidDocument, std::string("render request: ") + e.what());
    }
    AcousticPlan plan;
    for (const auto& sentence : doc.sentences) {
        AcousticLine line;
        line.index = sentence.index;
        line.speaker_id = sentence.speaker_id;
        line.duration_ms = 300 + 60 * whitespace_tokens(sentence.text);
        auto tone = sentence.dims.find("sentence.tone");
        line.tone_tag = tone == sentence.dims.end() ? std::string("unspecified")
                                                    : std::string(utf8::head(tone->second.text, kToneTagScalars));
        line.text = sentence.text;
        plan.lines.push_back(std::move(line));
    }
    return plan;
}

std::string format_acoustic_plan(std::uint64_t turn, const AcousticPlan& plan)
{
    std::string out;
    for (const auto& line : plan.lines) {
        out += std::to_string(turn);
        out += '|';
        out += std::to_string(line.index);
        out += '|';
        append_field(out, line.speaker_id);
        out += '|';
        out += std::to_string(line.duration_ms);
        out += '|';
        append_field(out, line.tone_tag);
        out += '|';
        append_field(out, line.text);
        out += '\n';
    }
    return out;
}

SimulationResult simulate(const SessionScript& script, RenderBackend& backend)
{
    SimulationResult result;
    SessionState state = open_session(script.session_id, script.global_dims, script.speakers);
    for (const auto& turn : script.turns) {
        result.turns.push_back(submit_turn(state, turn, backend));
        state = result.turns.back().state;
    }
    result.final_state = close_session(state);
    return result;
}

}  // namespace gst::session
