#include "gst/pipeline.hpp"

namespace gst::pipeline {

namespace {

using Contributions = std::vector<std::pair<std::string, Caption>>;

constexpr std::uint64_t kLivelyOverlap = 250'000;

Contributions scene_format(const CorpusRecord& rec)
{
    const auto& s = rec.signals;
    Contributions out;
    const char* format = s.speaker_count <= 1   ? "single-voice monologue or narration"
                         : s.speaker_count == 2 ? "two-person conversation"
                                                : "multi-speaker group discussion";
    out.emplace_back("global.show_format", Caption{format});

    std::string style = s.overlap_u > 0 ? "spontaneous, unscripted, with overlapping turns"
                                        : "measured, orderly turn-taking";
    if (s.wer_u > 150'000) {
        style += "; casual, loosely articulated delivery";
    }
    out.emplace_back("global.style_tags", Caption{std::move(style)});
    out.emplace_back("global.topic", Caption{"unspecified topic (raw segment, not yet transcribed)"});

    const char* atmosphere = s.overlap_u > kLivelyOverlap ? "heated, lively exchange"
                             : s.overlap_u > 0            ? "relaxed conversation with people talking over each other"
                                                          : "calm and composed";
    out.emplace_back("global.atmosphere", Caption{atmosphere});
    return out;
}

Contributions acoustic_rating(const CorpusRecord& rec)
{
    const auto dnsmos = rec.signals.dnsmos_u;
    const char* rating = dnsmos >= 4'000'000 ? "studio-clean recording, rated excellent"
                         : dnsmos >= 3'000'000 ? "clear recording with minor noise, rated good"
                         : dnsmos >= 2'500'000 ? "noticeably noisy recording, rated fair"
                                               : "heavily degraded recording, rated poor";
    return {{"global.acoustic_environment_rating", Caption{rating}}};
}

Contributions acoustic_scene(const CorpusRecord& rec)
{
    const auto& s = rec.signals;
    Contributions out;
    std::string environment;
    std::string background_state;
    switch (s.background) {
    case Background::Clean:
        environment = "quiet, clean background";
        background_state = "silent background";
        break;
    case Background::Music:
        environment = "music playing underneath the speech";
        background_state = "music bed continues";
        break;
    case Background::Babble:
        environment = s.overlap_u > kLivelyOverlap ? "lively overlapping chatter in the background"
                                                   : "background babble of distant voices";
        background_state = "crowd babble persists";
        break;
    case Background::Event:
        environment = "intermittent sound events behind the voices";
        background_state = "sporadic sound events";
        break;
    case Background::Mixed:
        environment = "layered music, voices and sound events";
        background_state = "dense mixed background";
        break;
    }
    out.emplace_back("global.acoustic_environment", Caption{std::move(environment)});
    if (s.background == Background::Event || s.background == Background::Mixed) {
        out.emplace_back("global.sound_events", Caption{"occasional distinct sound events (unidentified)"});
    }
    out.emplace_back("sentence.background_state", Caption{std::move(background_state)});
    return out;
}

Contributions speaker_profile(const CorpusRecord& rec)
{
    return {
        {"speaker.gender", Caption{"undetermined"}},
        {"speaker.age", Caption{"undetermined"}},
        {"speaker.vocal_personality", Caption{rec.signals.overlap_u > 0 ? "animated, readily talks over others"
                                                                        : "even, waits for their turn"}},
    };
}

}  // namespace

std::vector<Labeler> builtin_labelers()
{
    return {
        {"scene_format", scene_format},
        {"acoustic_rating", acoustic_rating},
        {"acoustic_scene", acoustic_scene},
        {"speaker_profile", speaker_profile},
    };
}

}  // namespace gst::pipeline
