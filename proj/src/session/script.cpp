#include <algorithm>
#include <array>

#include "gst/error.hpp"
#include "gst/session.hpp"
#include "gst/utf8.hpp"
#include "gst/wire/codec.hpp"
#include "gst/wire/value.hpp"

namespace gst::session {

namespace {

using wire::ObjectReader;
using wire::Value;

TurnRequest turn_from_value(const Value& node, std::string_view source)
{
    ObjectReader turn(node, source, "turn");
    TurnRequest request;
    for (const auto& item : turn.required("sentences", Value::Kind::Array).as_array()) {
        ObjectReader s(item, source, "turn sentence");
        request.sentences.push_back({s.string("speaker_id"), s.string("text")});
        s.finish();
    }
    if (const auto* ov = turn.optional("think_overrides", Value::Kind::Object)) {
        ObjectReader o(*ov, source, "think_overrides");
        ThinkView view;
        if (const auto* g = o.optional("global_dims", Value::Kind::Object)) {
            view.global_dims = wire::dims_from_value(*g, source, "global_dims");
        }
        if (const auto* list = o.optional("sentences", Value::Kind::Array)) {
            for (const auto& item : list->as_array()) {
                ObjectReader p(item, source, "override sentence");
                SentencePlan plan;
                plan.index = p.integer("index");
                if (const auto* d = p.optional("dims", Value::Kind::Object)) {
                    plan.dims = wire::dims_from_value(*d, source, "dims");
                }
                if (const auto* t = p.optional("tokens", Value::Kind::Array)) {
                    for (const auto& token : t->as_array()) {
                        plan.tokens.push_back(wire::token_from_value(token, source));
                    }
                }
                p.finish();
                view.sentences.push_back(std::move(plan));
            }
        }
        o.finish();
        request.think_overrides = std::move(view);
    }
    turn.finish();
    return request;
}

Value to_value(const TurnRequest& request)
{
    Value::Array sentences;
    for (const auto& s : request.sentences) {
        sentences.emplace_back(Value::Object{{"speaker_id", s.speaker_id}, {"text", s.text}});
    }
    Value::Object turn{{"sentences", std::move(sentences)}};
    if (request.think_overrides) {
        Value::Array plans;
        for (const auto& plan : request.think_overrides->sentences) {
            Value::Array tokens;
            for (const auto& t : plan.tokens) {
                tokens.push_back(wire::to_value(t));
            }
            plans.emplace_back(Value::Object{
                {"dims", wire::to_value(plan.dims)}, {"index", plan.index}, {"tokens", std::move(tokens)}});
        }
        turn.emplace("think_overrides",
                     Value::Object{{"global_dims", wire::to_value(request.think_overrides->global_dims)},
                                   {"sentences", std::move(plans)}});
    }
    return turn;
}

// Building blocks of the scripted probe session.
constexpr std::array kOpenings{
    "Well, I never thought we would end up here again, after all those years of waiting by the harbour",
    "Honestly the whole plan sounded reasonable when you explained it over breakfast this morning",
    "Listen, the storm is coming in faster than the forecast said and the boats are still out",
    "Do you remember the night the lights went out in the old theatre and nobody moved",
    "They told me the letter arrived on Tuesday, but the envelope had already been opened",
};
constexpr std::array kMiddles{
    " and I keep asking myself whether any of it was worth the trouble we went through",
    " so we should probably decide now, before the others start asking awkward questions",
    " but you were the one who insisted that NOTHING could possibly go wrong this time",
    " while the radio kept playing that same song over and over in the empty kitchen",
    " and the neighbours swear they heard someone laughing in the corridor at midnight",
};
constexpr std::array kEndings{"?", "!", "...", ".", "…", "?!"};
constexpr std::array kTonesCjk{
    "平静而克制", "紧张不安", "温柔怀旧",
};

std::string scripted_text(std::size_t turn, std::size_t sentence)
{
    const std::size_t k = turn * 7 + sentence * 3;
    std::string text = kOpenings[k % kOpenings.size()];
    if (sentence == 1) {
        text += " [[tonal_pivot|voice drops to a whisper]]";
    }
    text += kMiddles[(k / 2) % kMiddles.size()];
    text += ", and that is what turn ";
    text += std::to_string(turn);
    text += " is really about";
    if (sentence == 2) {
        text += " [[interruption]]";
    }
    text += kEndings[(turn + sentence) % kEndings.size()];
    return text;
}

}  // namespace

TurnRequest scripted_turn(std::size_t turn)
{
    TurnRequest request;
    for (std::size_t i = 0; i < 4; ++i) {
        request.sentences.push_back({i % 2 == 0 ? "spk0" : "spk1", scripted_text(turn, i)});
    }
    if (turn % 5 == 3) {
        // Long multibyte tone: fills the scalar cap while overrunning the byte budget.
        std::string tone;
        while (tone.size() < 280 * 3) {
            tone += kTonesCjk[(turn + tone.size()) % kTonesCjk.size()];
        }
        ThinkView pinned;
        pinned.global_dims.emplace("global.atmosphere", Caption{"tense harbour night, rain on the windows"});
        pinned.sentences.push_back({3, {{"sentence.tone", Caption{std::string(utf8::head(tone, 280))}}}, {}});
        pinned.sentences.push_back({0, {}, {{0, 4, "token.stress", Caption{"heavy stress on the first word"}}}});
        request.think_overrides = std::move(pinned);
    }
    return request;
}

SessionState scripted_session()
{
    DimMap global{
        {"global.show_format", Caption{"two-person radio drama"}},
        {"global.style_tags", Caption{"wistful, slow-burning suspense with moments of humour"}},
        {"global.topic", Caption{"a harbour town waiting out a storm"}},
        {"global.acoustic_environment_rating", Caption{"clean studio recording"}},
    };
    auto speaker = [](std::string id, std::string gender, std::string age, std::string personality) {
        return SpeakerProfile{std::move(id),
                              {{"speaker.gender", Caption{std::move(gender)}},
                               {"speaker.age", Caption{std::move(age)}},
                               {"speaker.vocal_personality", Caption{std::move(personality)}}}};
    };
    return open_session("probe-session", std::move(global),
                        {speaker("spk0", "female", "middle-aged", "warm, measured and dry"),
                         speaker("spk1", "male", "young adult", "restless and quick to laugh")});
}

GrowthProbe context_growth_probe(std::size_t turns)
{
    GrowthProbe probe;
    SessionState state = scripted_session();
    probe.bounded_bytes_max = serialize_context(state.context).size();
    MockRenderer mock;
    for (std::size_t t = 0; t < turns; ++t) {
        const TurnRequest request = scripted_turn(t);
        probe.raw_history_bytes += serialize_turn(request).size();
        state = submit_turn(state, request, mock).state;
        probe.bounded_bytes_max =
            std::max<std::uint64_t>(probe.bounded_bytes_max, serialize_context(state.context).size());
    }
    return probe;
}

SessionScript parse_script(std::string_view bytes)
{
    const Value root = wire::parse_value(bytes);
    ObjectReader r(root, bytes, "session script");
    SessionScript script;
    script.session_id = r.string("session_id");
    script.global_dims = wire::dims_from_value(r.required("global_dims", Value::Kind::Object), bytes, "global_dims");
    for (const auto& s : r.required("speakers", Value::Kind::Array).as_array()) {
        script.speakers.push_back(wire::speaker_from_value(s, bytes));
    }
    for (const auto& t : r.required("turns", Value::Kind::Array).as_array()) {
        script.turns.push_back(turn_from_value(t, bytes));
    }
    r.finish();
    return script;
}

std::string serialize_script(const SessionScript& script)
{
    Value::Array speakers;
    for (const auto& s : script.speakers) {
        speakers.push_back(wire::to_value(s));
    }
    Value::Array turns;
    for (const auto& t : script.turns) {
        turns.push_back(to_value(t));
    }
    return wire::to_canonical_file(Value::Object{
        {"global_dims", wire::to_value(script.global_dims)},
        {"session_id", script.session_id},
        {"speakers", std::move(speakers)},
        {"turns", std::move(turns)},
    });
}

std::string serialize_turn(const TurnRequest& request)
{
    return wire::to_canonical(to_value(request));
}

}  // namespace gst::session
