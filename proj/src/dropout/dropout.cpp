#include "gst/dropout.hpp"

#include <algorithm>
#include <set>

#include "gst/error.hpp"
#include "gst/fnv.hpp"
#include "gst/registry.hpp"
#include "gst/validate.hpp"
#include "gst/wire/codec.hpp"
#include "gst/wire/value.hpp"

namespace gst {

void DropoutConfig::check() const
{
    if (default_p > kMicroOne) {
        throw Error(Errc::InvalidConfig, "default_p exceeds 1000000");
    }
    for (const auto& [key, p] : overrides) {
        const auto* d = registry().find(key);
        if (d == nullptr) {
            throw Error(Errc::InvalidConfig, "override for unknown key '" + key + "'");
        }
        if (d->stream != Stream::Think) {
            throw Error(Errc::InvalidConfig, "Instruct dimension '" + key + "' is never maskable");
        }
        if (p > kMicroOne) {
            throw Error(Errc::InvalidConfig, "override for '" + key + "' exceeds 1000000");
        }
    }
}

std::uint32_t DropoutConfig::probability(std::string_view key) const
{
    auto it = overrides.find(key);
    return it == overrides.end() ? default_p : it->second;
}

std::vector<SlotRef> think_slots(const Document& doc)
{
    std::vector<SlotRef> slots;
    for (const auto& [key, caption] : doc.global_dims) {
        const auto* d = registry().find(key);
        if (d != nullptr && d->stream == Stream::Think) {
            slots.push_back({Scope::global(), key});
        }
    }
    for (const auto& s : doc.sentences) {
        for (const auto& [key, caption] : s.dims) {
            slots.push_back({Scope::of_sentence(s.index), key});
        }
    }
    for (const auto& s : doc.sentences) {
        for (std::size_t j = 0; j < s.tokens.size(); ++j) {
            slots.push_back({Scope::of_token(s.index, j), s.tokens[j].key});
        }
    }
    std::ranges::sort(slots);
    return slots;
}

std::uint64_t slot_hash(std::uint64_t seed, std::string_view doc_id, const Scope& scope, std::string_view key)
{
    return Fnv1a64{}
        .update(std::to_string(seed))
        .update(kUnitSeparator)
        .update(doc_id)
        .update(kUnitSeparator)
        .update(scope.to_string())
        .update(kUnitSeparator)
        .update(key)
        .value();
}

MaskPlan plan_mask(const Document& doc, const DropoutConfig& cfg, std::uint64_t seed)
{
    require_valid(doc);
    cfg.check();
    MaskPlan plan{doc.doc_id, seed, {}};
    for (auto& slot : think_slots(doc)) {
        if (hash_below(slot_hash(seed, doc.doc_id, slot.scope, slot.key), cfg.probability(slot.key))) {
            plan.slots.push_back(std::move(slot));
        }
    }
    return plan;
}

Document apply_mask(const Document& doc, const MaskPlan& plan)
{
    if (plan.doc_id != doc.doc_id) {
        throw Error(Errc::DocIdMismatch, "plan for '" + plan.doc_id + "' applied to '" + doc.doc_id + "'");
    }
    Document out = doc;
    auto sentence_at = [&](std::size_t index) -> Sentence& {
        auto it = std::ranges::find(out.sentences, index, &Sentence::index);
        if (it == out.sentences.end()) {
            throw Error(Errc::SlotNotFound, "no sentence " + std::to_string(index));
        }
        return *it;
    };
    auto not_found = [](const SlotRef& slot) {
        return Error(Errc::SlotNotFound, slot.scope.to_string() + "/" + slot.key);
    };

    // Token removals are collected first so annotation indices stay stable.
    std::map<std::size_t, std::set<std::size_t>> token_drops;
    for (const auto& slot : plan.slots) {
        const auto* d = registry().find(slot.key);
        if (d == nullptr || d->stream != Stream::Think) {
            throw not_found(slot);
        }
        switch (slot.scope.kind) {
        case ScopeKind::Global:
            if (out.global_dims.erase(slot.key) == 0) throw not_found(slot);
            break;
        case ScopeKind::Sentence:
            if (sentence_at(slot.scope.sentence).dims.erase(slot.key) == 0) throw not_found(slot);
            break;
        case ScopeKind::Token: {
            const auto& tokens = sentence_at(slot.scope.sentence).tokens;
            if (slot.scope.annotation >= tokens.size() || tokens[slot.scope.annotation].key != slot.key ||
                !token_drops[slot.scope.sentence].insert(slot.scope.annotation).second) {
                throw not_found(slot);
            }
            break;
        }
        }
    }
    for (const auto& [index, drops] : token_drops) {
        auto& tokens = sentence_at(index).tokens;
        std::vector<TokenAnnotation> kept;
        for (std::size_t j = 0; j < tokens.size(); ++j) {
            if (!drops.contains(j)) {
                kept.push_back(std::move(tokens[j]));
            }
        }
        tokens = std::move(kept);
    }
    return out;
}

MaskStats mask_stats(std::span<const MaskPlan> plans, std::span<const Document> docs)
{
    if (plans.size() != docs.size()) {
        throw Error(Errc::Misaligned, std::to_string(plans.size()) + " plans for " +
                                          std::to_string(docs.size()) + " documents");
    }
    MaskStats stats;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (plans[i].doc_id != docs[i].doc_id) {
            throw Error(Errc::Misaligned, "plan " + std::to_string(i) + " is for '" + plans[i].doc_id +
                                              "', document is '" + docs[i].doc_id + "'");
        }
        const auto eligible = think_slots(docs[i]);
        for (const auto& slot : eligible) {
            ++stats[slot.key].eligible;
        }
        for (const auto& slot : plans[i].slots) {
            if (!std::ranges::binary_search(eligible, slot)) {
                throw Error(Errc::Misaligned, "plan slot " + slot.scope.to_string() + "/" + slot.key +
                                                  " not in document '" + docs[i].doc_id + "'");
            }
            ++stats[slot.key].masked;
        }
    }
    for (auto& [key, rate] : stats) {
        rate.rate_u = static_cast<std::uint32_t>(rate.masked * kMicroOne / rate.eligible);
    }
    return stats;
}

DropoutConfig parse_dropout_config(std::string_view bytes)
{
    using Kind = wire::Value::Kind;
    const wire::Value root = wire::parse_value(bytes);
    wire::ObjectReader r(root, bytes, "dropout config");
    DropoutConfig cfg;
    const auto& p = r.required("default_p", Kind::Integer);
    if (p.as_integer() > kMicroOne) {
        throw wire::ParseError::at(bytes, p.offset(), wire::ParseErrc::BadSyntax, "default_p exceeds 1000000");
    }
    cfg.default_p = static_cast<std::uint32_t>(p.as_integer());
    if (const auto* overrides = r.optional("overrides", Kind::Object)) {
        for (const auto& [key, value] : overrides->as_object()) {
            wire::expect_kind(value, Kind::Integer, bytes, "overrides." + key);
            if (value.as_integer() > kMicroOne) {
                throw wire::ParseError::at(bytes, value.offset(), wire::ParseErrc::BadSyntax,
                                           "override for '" + key + "' exceeds 1000000");
            }
            cfg.overrides.emplace(key, static_cast<std::uint32_t>(value.as_integer()));
        }
    }
    r.finish();
    cfg.check();
    return cfg;
}

std::string serialize_dropout_config(const DropoutConfig& cfg)
{
    wire::Value::Object overrides;
    for (const auto& [key, p] : cfg.overrides) {
        overrides.emplace(key, p);
    }
    return wire::to_canonical_file(wire::Value::Object{
        {"default_p", cfg.default_p},
        {"overrides", std::move(overrides)},
    });
}

std::string serialize_mask_plan(const MaskPlan& plan)
{
    wire::Value::Array slots;
    for (const auto& slot : plan.slots) {
        slots.push_back(wire::Value::Object{{"key", slot.key}, {"scope", slot.scope.to_string()}});
    }
    return wire::to_canonical_file(wire::Value::Object{
        {"doc_id", plan.doc_id},
        {"seed", plan.seed},
        {"slots", std::move(slots)},
    });
}

}  // namespace gst
