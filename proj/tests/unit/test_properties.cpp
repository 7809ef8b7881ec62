#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "gst/dropout.hpp"
#include "gst/session.hpp"
#include "gst/streams.hpp"
#include "gst/validate.hpp"
#include "gst/wire/codec.hpp"
#include "oracles.hpp"

using namespace gst;
using gst::testing::Rng;

TEST_SUITE("properties")
{
    TEST_CASE("generated documents are valid and round-trip")
    {
        Rng rng(314);
        for (int i = 0; i < 500; ++i) {
            const Document doc = gst::testing::random_document(rng, {.rich = i % 2 == 0});
            REQUIRE(validate(doc).empty());
            const std::string bytes = wire::serialize_canonical(doc);
            CHECK(wire::parse(bytes) == doc);
            CHECK(wire::canonicalize(bytes) == bytes);
            CHECK(gst::testing::oracle_redump(bytes) == bytes);
        }
    }

    TEST_CASE("partition is a bijection that splits the dimension count")
    {
        Rng rng(271);
        for (int i = 0; i < 500; ++i) {
            const Document doc = gst::testing::random_document(rng);
            const Partition p = partition(doc);
            CHECK(merge(p.instruct, p.think) == doc);
            CHECK(dimension_count(p.instruct) + dimension_count(p.think) == dimension_count(doc));
            CHECK(dimension_count(p.think) == gst::testing::oracle_think_slot_count(wire::serialize_canonical(doc)));
        }
    }

    TEST_CASE("masking keeps documents valid and never touches Instruct")
    {
        Rng rng(161);
        for (int i = 0; i < 300; ++i) {
            const Document doc = gst::testing::random_document(rng);
            const DropoutConfig cfg{static_cast<std::uint32_t>(rng.below(kMicroOne + 1)), {}};
            const MaskPlan plan = plan_mask(doc, cfg, rng.next());
            const Document masked = apply_mask(doc, plan);
            CHECK(validate(masked).empty());
            CHECK(partition(masked).instruct == partition(doc).instruct);
            CHECK(think_slots(masked).size() + plan.slots.size() == think_slots(doc).size());
            for (const auto& slot : plan.slots) {
                CHECK(stream_of(slot.key) == Stream::Think);
            }
        }
    }

    TEST_CASE("planning is total and overrides are verbatim")
    {
        Rng rng(577);
        for (int i = 0; i < 100; ++i) {
            session::SessionState state = gst::testing::random_session(rng);
            for (int t = 0; t < 5; ++t) {
                const session::TurnRequest turn = gst::testing::random_turn(rng, state);
                const session::TurnResult r = session::submit_turn(state, turn);
                for (const auto& s : r.request.document.sentences) {
                    CHECK(s.dims.size() == 6);
                }
                if (turn.think_overrides) {
                    for (const auto& [key, caption] : turn.think_overrides->global_dims) {
                        CHECK(r.request.document.global_dims.at(key) == caption);
                    }
                    for (const auto& pinned : turn.think_overrides->sentences) {
                        const auto& target = r.request.document.sentences.at(pinned.index);
                        for (const auto& [key, caption] : pinned.dims) {
                            CHECK(target.dims.at(key) == caption);
                        }
                        for (const auto& token : pinned.tokens) {
                            CHECK(std::ranges::find(target.tokens, token) != target.tokens.end());
                        }
                    }
                }
                CHECK(session::serialize_context(r.state.context).size() <= session::kContextBudgetBytes);
                state = r.state;
            }
        }
    }
}
