#include <doctest.h>

#include <algorithm>

#include <cmath>
#include <json.hpp>

#include "generators.hpp"
#include "gst/dropout.hpp"
#include "gst/error.hpp"
#include "gst/streams.hpp"
#include "gst/wire/codec.hpp"
#include "oracles.hpp"

using namespace gst;

namespace {

std::vector<std::string> as_strings(const MaskPlan& plan)
{
    std::vector<std::string> out;
    for (const auto& slot : plan.slots) {
        out.push_back(slot.scope.to_string() + " " + slot.key);
    }
    std::ranges::sort(out);
    return out;
}

Document rich_doc(std::uint64_t seed)
{
    gst::testing::Rng rng(seed);
    Document doc;
    do {
        doc = gst::testing::random_document(rng, {.max_sentences = 6, .rich = true});
    } while (doc.sentences.size() < 3);
    return doc;
}

}  // namespace

TEST_SUITE("dropout")
{
    TEST_CASE("hash threshold is exact at the boundaries")
    {
        CHECK_FALSE(hash_below(0, 0));
        CHECK(hash_below(0, 1));
        CHECK(hash_below(~0ULL, kMicroOne));
        // 2^64 * 0.5 = 2^63: hashes below 2^63 pass, 2^63 itself does not.
        CHECK(hash_below((1ULL << 63) - 1, 500'000));
        CHECK_FALSE(hash_below(1ULL << 63, 500'000));
        // p = 1 micro: threshold is ceil(2^64 / 10^6) = 18446744073710.
        CHECK(hash_below(18446744073709ULL, 1));
        CHECK_FALSE(hash_below(18446744073710ULL, 1));
    }

    TEST_CASE("slot hash input layout")
    {
        const std::uint64_t h = slot_hash(42, "doc-1", Scope::of_token(2, 0), "token.stress");
        CHECK(h == gst::testing::oracle_fnv1a64("42\x1f" "doc-1\x1f" "t2.0\x1f" "token.stress"));
        CHECK(Scope::global().to_string() == "g");
        CHECK(Scope::of_sentence(12).to_string() == "s12");
    }

    TEST_CASE("p = 0 and p = 1")
    {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const Document doc = rich_doc(s);
            CHECK(plan_mask(doc, DropoutConfig{0, {}}, s).slots.empty());
            const MaskPlan all = plan_mask(doc, DropoutConfig{kMicroOne, {}}, s);
            CHECK(all.slots == think_slots(doc));
            const Document masked = apply_mask(doc, all);
            const Partition before = partition(doc);
            const Partition after = partition(masked);
            CHECK(dimension_count(after.think) == 0);
            CHECK(after.instruct == before.instruct);
        }
    }

    TEST_CASE("empty plan leaves bytes unchanged")
    {
        const Document doc = rich_doc(3);
        CHECK(wire::serialize_canonical(apply_mask(doc, MaskPlan{doc.doc_id, 9, {}})) ==
              wire::serialize_canonical(doc));
    }

    TEST_CASE("masking one slot changes exactly one key")
    {
        Document doc = rich_doc(8);
        doc.sentences[2].dims.insert_or_assign("sentence.tone", Caption{"wry"});
        const MaskPlan plan{doc.doc_id, 0, {{Scope::of_sentence(2), "sentence.tone"}}};
        const std::string after = wire::serialize_canonical(apply_mask(doc, plan));
        auto expected = nlohmann::json::parse(wire::serialize_canonical(doc));
        expected["sentences"][2]["dims"].erase("sentence.tone");
        CHECK(after == expected.dump() + "\n");
    }

    TEST_CASE("apply_mask errors")
    {
        const Document doc = rich_doc(4);
        auto code = [&](const MaskPlan& plan) {
            try {
                apply_mask(doc, plan);
            } catch (const Error& e) {
                return e.code();
            }
            return Errc::NotFound;
        };
        CHECK(code(MaskPlan{"other", 0, {}}) == Errc::DocIdMismatch);
        CHECK(code(MaskPlan{doc.doc_id, 0, {{Scope::of_sentence(99), "sentence.tone"}}}) == Errc::SlotNotFound);
        CHECK(code(MaskPlan{doc.doc_id, 0, {{Scope::global(), "global.topic"}}}) == Errc::SlotNotFound);
    }

    TEST_CASE("config checks")
    {
        CHECK_THROWS_AS((DropoutConfig{kMicroOne + 1, {}}.check()), Error);
        CHECK_THROWS_AS((DropoutConfig{0, {{"speaker.age", 5}}}.check()), Error);
        CHECK_THROWS_AS((DropoutConfig{0, {{"sentence.colour", 5}}}.check()), Error);
        const DropoutConfig cfg{100, {{"sentence.tone", 7}}};
        CHECK_NOTHROW(cfg.check());
        CHECK(cfg.probability("sentence.tone") == 7);
        CHECK(cfg.probability("token.stress") == 100);
        CHECK(parse_dropout_config(serialize_dropout_config(cfg)) == cfg);
        CHECK(parse_dropout_config("{\"default_p\":5}") == DropoutConfig{5, {}});
        CHECK_THROWS(parse_dropout_config("{\"default_p\":5,\"overrides\":{\"global.topic\":1}}"));
    }

    TEST_CASE("plans agree with the brute-force oracle")
    {
        for (std::uint64_t s = 0; s < 60; ++s) {
            const Document doc = rich_doc(100 + s);
            const std::string bytes = wire::serialize_canonical(doc);
            const DropoutConfig cfg{300'000, {{"sentence.tone", 900'000}, {"token.stress", 50'000}}};
            const MaskPlan plan = plan_mask(doc, cfg, s * 7919);
            CHECK(as_strings(plan) ==
                  gst::testing::oracle_masked_slots(bytes, s * 7919, 300'000,
                                                    {{"sentence.tone", 900'000}, {"token.stress", 50'000}}));
            CHECK(plan == plan_mask(doc, cfg, s * 7919));
            CHECK(std::ranges::is_sorted(plan.slots));
        }
    }

    TEST_CASE("mask stats")
    {
        std::vector<Document> docs;
        std::vector<MaskPlan> plans;
        gst::testing::Rng rng(1);
        std::size_t slots = 0;
        while (slots < 20'000) {
            docs.push_back(gst::testing::random_document(rng));
            plans.push_back(plan_mask(docs.back(), DropoutConfig{500'000, {}}, 77));
            slots += think_slots(docs.back()).size();
        }
        const MaskStats stats = mask_stats(plans, docs);
        for (const auto& [key, rate] : stats) {
            CAPTURE(key);
            CHECK(key.find("speaker.") == std::string::npos);
            CHECK(key != "global.topic");
            if (rate.eligible >= 1000) {
                // Three standard deviations of a binomial with p = 0.5.
                const double sigma = 0.5 / std::sqrt(static_cast<double>(rate.eligible));
                CHECK(std::abs(rate.rate_u / 1e6 - 0.5) <= 3 * sigma);
            }
        }
        const MaskStats zero = mask_stats(std::vector<MaskPlan>{plan_mask(docs[0], DropoutConfig{0, {}}, 1)},
                                          std::vector<Document>{docs[0]});
        for (const auto& [key, rate] : zero) {
            CHECK(rate.masked == 0);
            CHECK(rate.rate_u == 0);
        }
        CHECK_THROWS_AS(mask_stats(plans, std::span(docs).first(1)), Error);
    }

    TEST_CASE("mask plan wire form")
    {
        const MaskPlan plan{"d-1", 42, {{Scope::of_token(0, 1), "token.stress"}, {Scope::global(), "global.atmosphere"}}};
        CHECK(serialize_mask_plan(plan) ==
              "{\"doc_id\":\"d-1\",\"seed\":42,\"slots\":[{\"key\":\"token.stress\",\"scope\":\"t0.1\"},"
              "{\"key\":\"global.atmosphere\",\"scope\":\"g\"}]}\n");
    }
}
