#include <doctest.h>

#include <set>

#include "generators.hpp"
#include "gst/error.hpp"
#include "gst/validate.hpp"
#include "mutations.hpp"

using namespace gst;
using gst::testing::minimal_document;

namespace {

std::set<std::string> codes_of(const ValidationReport& report)
{
    std::set<std::string> codes;
    for (const auto& v : report) {
        codes.insert(code_string(v.code));
    }
    return codes;
}

}  // namespace

TEST_SUITE("validate")
{
    TEST_CASE("minimal document is valid")
    {
        CHECK(validate(minimal_document()).empty());
        CHECK_NOTHROW(require_valid(minimal_document()));
    }

    TEST_CASE("missing Instruct dimension")
    {
        Document doc = minimal_document();
        doc.global_dims.erase("global.show_format");
        const auto report = validate(doc);
        REQUIRE(report.size() == 1);
        CHECK(code_string(report[0].code) == "E002");
        CHECK(report[0].path == "/global_dims/global.show_format");
        CHECK_THROWS_AS(require_valid(doc), Error);
    }

    TEST_CASE("all Think slots empty is valid")
    {
        gst::testing::Rng rng(7);
        Document doc = gst::testing::random_document(rng, {.rich = true});
        std::erase_if(doc.global_dims, [](const auto& kv) {
            return !kv.first.ends_with("show_format") && !kv.first.ends_with("style_tags") &&
                   !kv.first.ends_with("topic") && !kv.first.ends_with("rating");
        });
        for (auto& s : doc.sentences) {
            s.dims.clear();
            s.tokens.clear();
        }
        CHECK(validate(doc).empty());
    }

    TEST_CASE("inverted span")
    {
        Document doc = minimal_document();
        doc.sentences[0].tokens.push_back({5, 3, "token.stress", Caption{"heavy"}});
        const auto report = validate(doc);
        REQUIRE(report.size() == 1);
        CHECK(code_string(report[0].code) == "E003");
        CHECK(report[0].path == "/sentences/0/tokens/0");
    }

    TEST_CASE("overlap hidden behind a longer span is caught")
    {
        Document doc = minimal_document();
        doc.sentences[0].tokens = {
            {0, 10, "token.stress", Caption{"a"}},
            {2, 3, "token.stress", Caption{"b"}},
            {3, 4, "token.stress", Caption{"c"}},
            {3, 4, "token.liaison", Caption{"other key"}},
        };
        CHECK(codes_of(validate(doc)) == std::set<std::string>{"E008"});
        CHECK(validate(doc).size() == 2);
    }

    TEST_CASE("adjacent spans do not overlap")
    {
        Document doc = minimal_document();
        doc.sentences[0].tokens = {{0, 3, "token.stress", Caption{"a"}}, {3, 5, "token.stress", Caption{"b"}}};
        CHECK(validate(doc).empty());
    }

    TEST_CASE("captions")
    {
        CHECK(is_valid_caption("x", 1));
        CHECK_FALSE(is_valid_caption("xy", 1));
        CHECK(is_valid_caption("ωω", 2));
        CHECK_FALSE(is_valid_caption("", 10));
        CHECK_FALSE(is_valid_caption(" \t", 10));
        CHECK_FALSE(is_valid_caption("a\x1f", 10));
        CHECK_FALSE(is_valid_caption("a\xff", 10));
        CHECK(is_valid_caption(" padded ", 10));
    }

    TEST_CASE("mark rules")
    {
        Document doc = minimal_document();
        doc.sentences[0].marks = {{12, MarkKind::Interruption, std::nullopt},
                                  {0, MarkKind::TonalPivot, Caption{"cold"}},
                                  {0, MarkKind::Other, std::nullopt}};
        const auto report = validate(doc);
        REQUIRE(report.size() == 1);
        CHECK(report[0].path == "/sentences/0/marks/2");
    }

    TEST_CASE("identity")
    {
        Document doc = minimal_document();
        doc.version = 2;
        doc.doc_id = std::string(129, 'a');
        CHECK(codes_of(validate(doc)) == std::set<std::string>{"E010"});
        CHECK(validate(doc).size() == 2);
        CHECK(is_valid_doc_id(std::string(128, 'a')));
        CHECK_FALSE(is_valid_doc_id(""));
        CHECK_FALSE(is_valid_doc_id("a/b"));
        CHECK(is_valid_speaker_id("spk12"));
        CHECK_FALSE(is_valid_speaker_id("spk"));
        CHECK_FALSE(is_valid_speaker_id("SPK1"));
    }

    TEST_CASE("paths escape JSON pointer tokens")
    {
        CHECK(pointer_append("/a", "b/c~d") == "/a/b~1c~0d");
        Document doc = minimal_document();
        doc.global_dims.emplace("odd/key", Caption{"x"});
        const auto report = validate(doc);
        REQUIRE(report.size() == 1);
        CHECK(report[0].path == "/global_dims/odd~1key");
    }

    TEST_CASE("validation is pure")
    {
        gst::testing::Rng rng(11);
        for (int i = 0; i < 50; ++i) {
            Document doc = gst::testing::random_document(rng);
            const Document copy = doc;
            const auto first = validate(doc);
            CHECK(first == validate(doc));
            CHECK(doc == copy);
        }
    }

    TEST_CASE("mutation catalog yields exactly the expected code")
    {
        const auto& catalog = gst::testing::mutation_catalog();
        CHECK(catalog.size() == 25);
        gst::testing::Rng rng(2024);
        for (int round = 0; round < 20; ++round) {
            const Document base = gst::testing::random_document(rng, {.rich = true});
            REQUIRE(validate(base).empty());
            for (const auto& m : catalog) {
                CAPTURE(m.name);
                Document doc = base;
                REQUIRE(m.apply(doc));
                const auto report = validate(doc);
                REQUIRE_FALSE(report.empty());
                CHECK(codes_of(report) == std::set<std::string>{code_string(m.expected)});
            }
        }
    }
}
