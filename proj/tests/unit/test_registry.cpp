#include <doctest.h>

#include <set>

#include "gst/error.hpp"
#include "gst/registry.hpp"
#include "gst/streams.hpp"

using namespace gst;

TEST_SUITE("registry")
{
    TEST_CASE("table shape")
    {
        const auto& r = registry();
        CHECK(r.count() == 22);
        CHECK(r.keys(Stream::Instruct).size() == 7);
        CHECK(r.keys(Stream::Think).size() == 15);
        std::set<std::string_view> unique;
        for (const auto& d : r.descriptors()) {
            CHECK(unique.insert(d.key).second);
            if (d.stream == Stream::Instruct) {
                CHECK(d.layer == Layer::Global);
            }
        }
    }

    TEST_CASE("streams follow the layer lists")
    {
        CHECK(registry().lookup("sentence.tone").stream == Stream::Think);
        CHECK(registry().lookup("speaker.gender").stream == Stream::Instruct);
        const auto& sandhi = registry().lookup("token.tone_sandhi");
        CHECK(sandhi.layer == Layer::Token);
        CHECK(sandhi.stream == Stream::Think);
        CHECK(sandhi.caption_max == 140);
        const auto& format = registry().lookup("global.show_format");
        CHECK(format.layer == Layer::Global);
        CHECK(format.stream == Stream::Instruct);
        CHECK(registry().lookup("speaker.age").cardinality == Cardinality::PerSpeaker);
    }

    TEST_CASE("unknown keys")
    {
        CHECK(registry().find("sentence.color") == nullptr);
        CHECK_THROWS_AS((void)registry().lookup("sentence.color"), Error);
        try {
            (void)registry().lookup("sentence.color");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::NotFound);
        }
    }

    TEST_CASE("stream_of")
    {
        CHECK(stream_of("global.acoustic_environment_rating") == Stream::Instruct);
        CHECK(stream_of("token.liaison") == Stream::Think);
        CHECK_THROWS_AS(stream_of("bogus"), Error);
    }
}
