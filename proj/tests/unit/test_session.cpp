#include <doctest.h>

#include "generators.hpp"
#include "gst/error.hpp"
#include "gst/session.hpp"
#include "gst/utf8.hpp"
#include "gst/validate.hpp"
#include "gst/wire/codec.hpp"

using namespace gst;
using namespace gst::session;

namespace {

DimMap global_instruct()
{
    return {
        {"global.show_format", Caption{"podcast"}},
        {"global.style_tags", Caption{"wry, deadpan"}},
        {"global.topic", Caption{"office gossip"}},
        {"global.acoustic_environment_rating", Caption{"clean"}},
    };
}

SpeakerProfile speaker(std::string id)
{
    return {std::move(id),
            {{"speaker.gender", Caption{"female"}},
             {"speaker.age", Caption{"thirties"}},
             {"speaker.vocal_personality", Caption{"dry"}}}};
}

SessionState two_speaker_session()
{
    return open_session("s-1", global_instruct(), {speaker("spk0"), speaker("spk1")});
}

TurnRequest say(std::string speaker_id, std::string text)
{
    return TurnRequest{{{std::move(speaker_id), std::move(text)}}, std::nullopt};
}

template <typename F>
Errc error_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::NotFound;
}

}  // namespace

TEST_SUITE("session")
{
    TEST_CASE("open")
    {
        const SessionState s = two_speaker_session();
        CHECK(s.phase == Phase::Open);
        CHECK(s.turn_count == 0);
        CHECK(s.context.emotional_baseline == "wry, deadpan");

        DimMap missing = global_instruct();
        missing.erase("global.topic");
        CHECK(error_of([&] { open_session("s", missing, {speaker("spk0")}); }) == Errc::MissingInstruct);
        std::vector<SpeakerProfile> nine;
        for (int i = 0; i < 9; ++i) nine.push_back(speaker("spk" + std::to_string(i)));
        CHECK(error_of([&] { open_session("s", global_instruct(), nine); }) == Errc::TooManySpeakers);
        CHECK(error_of([&] { open_session("s", global_instruct(), {}); }) == Errc::MissingInstruct);
        DimMap think = global_instruct();
        think.emplace("global.atmosphere", Caption{"x"});
        CHECK(error_of([&] { open_session("s", think, {speaker("spk0")}); }) == Errc::StreamViolation);
        CHECK(error_of([&] { open_session("bad id", global_instruct(), {speaker("spk0")}); }) ==
              Errc::InvalidDocument);
        CHECK(error_of([&] { open_session("s", global_instruct(), {speaker("spk0"), speaker("spk0")}); }) ==
              Errc::InvalidDocument);
    }

    TEST_CASE("planner rules")
    {
        const SessionState s = two_speaker_session();
        const ThinkPlan plan = plan_think(s, say("spk0", "You did WHAT?"));
        const DimMap& dims = plan.view.sentences.at(0).dims;
        CHECK(dims.at("sentence.intonation").text == "rising, incredulous question");
        CHECK(dims.at("sentence.intent").text == "asking");
        CHECK(dims.at("sentence.tone").text == "wry, with emphasis");
        CHECK(dims.at("sentence.volume").text == "conversational");
        CHECK(dims.at("sentence.pace").text == "moderate");
        CHECK(dims.at("sentence.background_state").text == "as established");

        const ThinkPlan calm_plan = plan_think(s, say("spk1", "Fine! I guess..."));
        const DimMap& calm = calm_plan.view.sentences.at(0).dims;
        CHECK(calm.at("sentence.volume").text == "raised");
        CHECK(calm.at("sentence.pace").text == "slow, trailing");
        CHECK(calm.at("sentence.intonation").text == "level");
        CHECK(calm.at("sentence.intent").text == "stating");
        CHECK(calm.at("sentence.tone").text == "wry");
        CHECK(plan_think(s, say("spk1", "ok…  ")).view.sentences[0].dims.at("sentence.pace").text ==
              "slow, trailing");
        CHECK(plan_think(s, say("spk1", "I am OK")).view.sentences[0].dims.at("sentence.tone").text ==
              "wry, with emphasis");
        CHECK(plan_think(s, say("spk1", "A I")).view.sentences[0].dims.at("sentence.tone").text == "wry");
    }

    TEST_CASE("overrides win and are tagged")
    {
        const SessionState s = two_speaker_session();
        TurnRequest turn = say("spk0", "Sure.");
        ThinkView pinned;
        pinned.sentences.push_back({0, {{"sentence.tone", Caption{"flat, exhausted"}}}, {}});
        pinned.global_dims.emplace("global.atmosphere", Caption{"late night"});
        turn.think_overrides = pinned;
        const ThinkPlan plan = plan_think(s, turn);
        CHECK(plan.view.sentences[0].dims.at("sentence.tone").text == "flat, exhausted");
        CHECK(plan.provenance.at({Scope::of_sentence(0), "sentence.tone"}) == Provenance::Override);
        CHECK(plan.provenance.at({Scope::of_sentence(0), "sentence.pace"}) == Provenance::Planned);
        CHECK(plan.provenance.at({Scope::global(), "global.atmosphere"}) == Provenance::Override);
        CHECK(plan == plan_think(s, turn));
    }

    TEST_CASE("override errors")
    {
        const SessionState s = two_speaker_session();
        auto with = [&](ThinkView pinned) {
            TurnRequest t = say("spk0", "Hi.");
            t.think_overrides = std::move(pinned);
            return t;
        };
        CHECK(error_of([&] { plan_think(s, with({"", {{"global.topic", Caption{"x"}}}, {}})); }) ==
              Errc::BadOverrideKey);
        CHECK(error_of([&] { plan_think(s, with({"", {}, {{0, {{"token.stress", Caption{"x"}}}, {}}}})); }) ==
              Errc::BadOverrideKey);
        CHECK(error_of([&] { plan_think(s, with({"", {}, {{1, {{"sentence.tone", Caption{"x"}}}, {}}}})); }) ==
              Errc::BadOverrideKey);
        CHECK(error_of([&] { plan_think(s, say("spk7", "Hi.")); }) == Errc::UnknownSpeaker);
        CHECK(error_of([&] { plan_think(s, TurnRequest{}); }) == Errc::InvalidDocument);
    }

    TEST_CASE("mock renderer")
    {
        const SessionState s = two_speaker_session();
        const TurnResult r = submit_turn(s, say("spk0", "Hello there."));
        REQUIRE(r.acoustic.lines.size() == 1);
        CHECK(r.acoustic.lines[0].duration_ms == 420);
        CHECK(r.acoustic.lines[0].tone_tag == "wry");

        RenderRequest req = r.request;
        req.document.sentences[0].text = "a b c";
        req.document.sentences[0].dims.erase("sentence.tone");
        const AcousticPlan plan = render_mock(req);
        CHECK(plan.lines[0].duration_ms == 480);
        CHECK(plan.lines[0].tone_tag == "unspecified");
        CHECK(plan == render_mock(req));
    }

    TEST_CASE("turns, phases and identical replays")
    {
        const SessionState s0 = two_speaker_session();
        const TurnResult first = submit_turn(s0, say("spk0", "Again?"));
        const TurnResult second = submit_turn(first.state, say("spk0", "Again?"));
        CHECK(first.state.turn_count == 1);
        CHECK(second.state.turn_count == 2);
        CHECK(first.state != second.state);
        CHECK(first.acoustic == second.acoustic);
        CHECK(first.state.phase == Phase::Rendered);
        CHECK(first.request.document.doc_id == "s-1.t1");
        CHECK(validate(first.request.document).empty());

        CHECK(error_of([&] { close_session(s0); }) == Errc::InvalidPhase);
        const SessionState closed = close_session(second.state);
        CHECK(closed.phase == Phase::Closed);
        CHECK(error_of([&] { submit_turn(closed, say("spk0", "Hi.")); }) == Errc::InvalidPhase);
        CHECK(error_of([&] { close_session(closed); }) == Errc::InvalidPhase);
        SessionState planning = first.state;
        planning.phase = Phase::Planning;
        CHECK(error_of([&] { submit_turn(planning, say("spk0", "Hi.")); }) == Errc::InvalidPhase);
    }

    TEST_CASE("backend failures are wrapped")
    {
        struct Broken : RenderBackend {
            AcousticPlan render(const RenderRequest&) override { throw std::runtime_error("engine down"); }
        } broken;
        CHECK(error_of([&] { submit_turn(two_speaker_session(), say("spk0", "Hi."), broken); }) ==
              Errc::BackendFailure);
    }

    TEST_CASE("marks in turns reach the render request")
    {
        const TurnResult r = submit_turn(two_speaker_session(), say("spk1", "No, I—[[interruption]]"));
        const Sentence& s = r.request.document.sentences.at(0);
        CHECK(s.text == "No, I—");
        REQUIRE(s.marks.size() == 1);
        CHECK(s.marks[0].position == 6);
    }

    TEST_CASE("context compression")
    {
        SessionState s = two_speaker_session();
        s.context.emotional_baseline = "calm";
        const ThinkPlan plan = plan_think(s, say("spk0", "Okay."));
        const SessionState next = compress_context(s, plan);
        CHECK(next.context.arc_summary == "calm");
        CHECK(next.context.speaker_last_tone.at("spk0") == "calm");
        CHECK(next.context.scene_state.empty());

        // spk1 silent this turn keeps its last tone.
        SessionState again = next;
        again.context.speaker_last_tone["spk1"] = "sulky";
        CHECK(compress_context(again, plan_think(again, say("spk0", "Yes."))).context.speaker_last_tone.at("spk1") ==
              "sulky");

        SessionState long_run = two_speaker_session();
        const std::string tone(280, 'x');
        for (int i = 0; i < 1000; ++i) {
            TurnRequest t = say("spk0", "Go.");
            t.think_overrides = ThinkView{"", {}, {{0, {{"sentence.tone", Caption{tone}}}, {}}}};
            long_run = submit_turn(long_run, t).state;
            CHECK(utf8::scalar_count(long_run.context.arc_summary) <= 280);
        }
    }

    TEST_CASE("growth probe")
    {
        const GrowthProbe one = context_growth_probe(1);
        CHECK(one.bounded_bytes_max <= kContextBudgetBytes);
        CHECK(one.raw_history_bytes == serialize_turn(scripted_turn(0)).size());
        for (std::size_t t = 0; t < 50; ++t) {
            CHECK(serialize_turn(scripted_turn(t)).size() >= 1024);
        }
        const GrowthProbe big = context_growth_probe(1000);
        CHECK(big.bounded_bytes_max <= kContextBudgetBytes);
        CHECK(big.raw_history_bytes >= 250 * big.bounded_bytes_max);
        CHECK(big == context_growth_probe(1000));
    }

    TEST_CASE("worst-case context fits the budget")
    {
        std::vector<SpeakerProfile> speakers;
        for (int i = 0; i < 8; ++i) {
            speakers.push_back(speaker("spk" + std::string(12, '1') + std::to_string(i)));
        }
        DimMap global = global_instruct();
        std::string emoji;
        for (int i = 0; i < 500; ++i) emoji += "😀";
        global.at("global.style_tags").text = emoji;
        SessionState s = open_session("w", global, speakers);
        TurnRequest t;
        for (const auto& sp : speakers) {
            t.sentences.push_back({sp.speaker_id, "go"});
        }
        t.think_overrides = ThinkView{};
        for (std::size_t i = 0; i < speakers.size(); ++i) {
            t.think_overrides->sentences.push_back(
                {i, {{"sentence.tone", Caption{std::string(140, '"')}},
                     {"sentence.background_state", Caption{std::string(280, '\\')}}}, {}});
        }
        s = submit_turn(s, t).state;
        CHECK(serialize_context(s.context).size() <= kContextBudgetBytes);
    }

    TEST_CASE("script wire form")
    {
        SessionScript script{"scr", global_instruct(), {speaker("spk0")}, {say("spk0", "Hi."), scripted_turn(3)}};
        script.turns[1].sentences.resize(1);
        script.turns[1].sentences[0].speaker_id = "spk0";
        script.turns[1].think_overrides->sentences.resize(1);
        const std::string bytes = serialize_script(script);
        CHECK(parse_script(bytes) == script);
        CHECK(serialize_script(parse_script(bytes)) == bytes);
    }

    TEST_CASE("acoustic plan text escapes separators")
    {
        const AcousticPlan plan{{{0, "spk0", 420, "a|b", "x\\y\nz"}}};
        CHECK(format_acoustic_plan(3, plan) == "3|0|spk0|420|a\\|b|x\\\\y\\nz\n");
    }
}
