#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>

#include "gst/error.hpp"
#include "gst/pipeline.hpp"
#include "gst/wire/codec.hpp"
#include "gst/wire/value.hpp"

namespace gst::pipeline {

using wire::ParseErrc;
using wire::ParseError;
using wire::Value;
using Kind = wire::Value::Kind;

namespace {

// Upper bound on speakers per record; skeletons materialize one profile each.
constexpr std::uint64_t kMaxSpeakerCount = 64;

constexpr std::array<std::string_view, 5> kBackgroundNames{"clean", "music", "babble", "event", "mixed"};

std::uint64_t bounded(const Value& node, std::uint64_t max, std::string_view source, std::string_view field)
{
    if (node.as_integer() > max) {
        throw ParseError::at(source, node.offset(), ParseErrc::BadSyntax,
                             std::string(field) + " exceeds " + std::to_string(max));
    }
    return node.as_integer();
}

CorpusRecord record_from_value(const Value& root, std::string_view source)
{
    wire::ObjectReader r(root, source, "manifest record");
    CorpusRecord rec;
    const Value& background = r.required("background", Kind::String);
    auto parsed = background_from_string(background.as_string());
    if (!parsed) {
        throw ParseError::at(source, background.offset(), ParseErrc::BadSyntax,
                             "unknown background class '" + background.as_string() + "'");
    }
    rec.signals.background = *parsed;
    rec.signals.corrupt = r.boolean("corrupt");
    rec.signals.dnsmos_u = bounded(r.required("dnsmos_u", Kind::Integer), kDnsmosMax, source, "dnsmos_u");
    rec.duration_us = r.integer("duration_us");
    rec.signals.overlap_u = bounded(r.required("overlap_u", Kind::Integer), kMicroRatioMax, source, "overlap_u");
    const Value& id = r.required("record_id", Kind::String);
    if (!is_valid_doc_id(id.as_string())) {
        throw ParseError::at(source, id.offset(), ParseErrc::BadSyntax,
                             "record_id must be 1-128 characters from [A-Za-z0-9._-]");
    }
    rec.record_id = id.as_string();
    rec.signals.speaker_count =
        bounded(r.required("speaker_count", Kind::Integer), kMaxSpeakerCount, source, "speaker_count");
    rec.signals.wer_u = bounded(r.required("wer_u", Kind::Integer), kMicroRatioMax, source, "wer_u");
    r.finish();
    return rec;
}

Value to_value(const CorpusRecord& rec)
{
    return Value::Object{
        {"background", to_string(rec.signals.background)},
        {"corrupt", rec.signals.corrupt},
        {"dnsmos_u", rec.signals.dnsmos_u},
        {"duration_us", rec.duration_us},
        {"overlap_u", rec.signals.overlap_u},
        {"record_id", rec.record_id},
        {"speaker_count", rec.signals.speaker_count},
        {"wer_u", rec.signals.wer_u},
    };
}

}  // namespace

std::string_view to_string(Background background) noexcept
{
    return kBackgroundNames[static_cast<std::size_t>(background)];
}

std::optional<Background> background_from_string(std::string_view name) noexcept
{
    auto it = std::ranges::find(kBackgroundNames, name);
    if (it == kBackgroundNames.end()) {
        return std::nullopt;
    }
    return static_cast<Background>(it - kBackgroundNames.begin());
}

Execution Execution::from_env()
{
    const char* flag = std::getenv("GST_NO_PARALLEL");
    return Execution{flag == nullptr || std::string_view(flag) != "1"};
}

std::vector<CorpusRecord> ingest_manifest(std::string_view bytes)
{
    std::vector<CorpusRecord> records;
    std::set<std::string, std::less<>> ids;
    std::size_t line_start = 0;
    std::size_t line_number = 0;
    while (line_start < bytes.size()) {
        ++line_number;
        const std::size_t newline = bytes.find('\n', line_start);
        const std::size_t line_end = newline == std::string_view::npos ? bytes.size() : newline;
        const std::string_view line = bytes.substr(line_start, line_end - line_start);
        const bool blank = std::ranges::all_of(line, [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
        if (!blank) {
            try {
                records.push_back(record_from_value(wire::parse_value(line), line));
            } catch (const ParseError& e) {
                throw ParseError::at(bytes, line_start + e.byte_offset(), e.code(), e.detail());
            }
            if (!ids.insert(records.back().record_id).second) {
                throw Error(Errc::DuplicateRecordId,
                            "line " + std::to_string(line_number) + ": '" + records.back().record_id + "'");
            }
        }
        line_start = line_end + 1;
    }
    return records;
}

std::string serialize_manifest(std::span<const CorpusRecord> records)
{
    std::string out;
    for (const auto& rec : records) {
        out += wire::to_canonical_file(to_value(rec));
    }
    return out;
}

void FilterPolicy::check() const
{
    if (min_dnsmos_u > kDnsmosMax || max_wer_u > kMicroRatioMax || max_overlap_u > kMicroRatioMax) {
        throw Error(Errc::InvalidConfig, "filter threshold outside signal range");
    }
}

FilterPolicy default_filter_policy()
{
    return FilterPolicy{};
}

FilterPolicy parse_filter_policy(std::string_view bytes)
{
    const Value root = wire::parse_value(bytes);
    wire::ObjectReader r(root, bytes, "filter policy");
    FilterPolicy policy;
    policy.allowed_backgrounds.clear();
    for (const auto& node : r.required("allowed_backgrounds", Kind::Array).as_array()) {
        wire::expect_kind(node, Kind::String, bytes, "allowed_backgrounds[]");
        auto bg = background_from_string(node.as_string());
        if (!bg) {
            throw ParseError::at(bytes, node.offset(), ParseErrc::BadSyntax,
                                 "unknown background class '" + node.as_string() + "'");
        }
        policy.allowed_backgrounds.insert(*bg);
    }
    policy.max_overlap_u = bounded(r.required("max_overlap_u", Kind::Integer), kMicroRatioMax, bytes, "max_overlap_u");
    policy.max_speakers = r.integer("max_speakers");
    policy.max_wer_u = bounded(r.required("max_wer_u", Kind::Integer), kMicroRatioMax, bytes, "max_wer_u");
    policy.min_dnsmos_u = bounded(r.required("min_dnsmos_u", Kind::Integer), kDnsmosMax, bytes, "min_dnsmos_u");
    r.finish();
    return policy;
}

std::string serialize_filter_policy(const FilterPolicy& policy)
{
    Value::Array backgrounds;
    for (auto bg : policy.allowed_backgrounds) {
        backgrounds.push_back(to_string(bg));
    }
    return wire::to_canonical_file(Value::Object{
        {"allowed_backgrounds", std::move(backgrounds)},
        {"max_overlap_u", policy.max_overlap_u},
        {"max_speakers", policy.max_speakers},
        {"max_wer_u", policy.max_wer_u},
        {"min_dnsmos_u", policy.min_dnsmos_u},
    });
}

}  // namespace gst::pipeline
