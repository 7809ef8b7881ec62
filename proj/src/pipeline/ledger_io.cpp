#include <algorithm>

#include "gst/pipeline.hpp"
#include "gst/wire/codec.hpp"
#include "gst/wire/value.hpp"

namespace gst::pipeline {

using wire::ParseErrc;
using wire::ParseError;
using wire::Value;
using Kind = wire::Value::Kind;

namespace {

Value counts(const std::map<std::string, std::uint64_t>& histogram)
{
    Value::Object out;
    for (const auto& [reason, n] : histogram) {
        out.emplace(reason, n);
    }
    return out;
}

Value summary(const LedgerSummary& s)
{
    return Value::Object{
        {"kept", s.kept},
        {"retained_duration_u", s.retained_duration_u},
        {"retained_u", s.retained_u},
    };
}

// The wire grammar has no negative numbers; signed deltas carry a flag.
Value signed_delta(std::int64_t delta)
{
    const auto magnitude = static_cast<std::uint64_t>(delta < 0 ? -delta : delta);
    return Value::Object{{"negative", delta < 0}, {"u", magnitude}};
}

}  // namespace

std::string serialize_ledger(const RetentionLedger& ledger)
{
    Value::Array verdicts;
    for (const auto& v : ledger.verdicts) {
        Value::Array reasons;
        for (auto r : v.reasons) {
            reasons.push_back(to_string(r));
        }
        verdicts.push_back(Value::Object{
            {"duration_us", v.duration_us},
            {"kept", v.kept},
            {"overlapping", v.overlapping},
            {"reasons", std::move(reasons)},
            {"record_id", v.record_id},
        });
    }
    return wire::to_canonical_file(Value::Object{
        {"kept", ledger.kept},
        {"kept_duration_us", ledger.kept_duration_us},
        {"policy_name", ledger.policy_name},
        {"retained_duration_u", ledger.retained_duration_u},
        {"retained_u", ledger.retained_u},
        {"run_id", ledger.run_id},
        {"total", ledger.total},
        {"total_duration_us", ledger.total_duration_us},
        {"verdicts", std::move(verdicts)},
    });
}

RetentionLedger parse_ledger(std::string_view bytes)
{
    const Value root = wire::parse_value(bytes);
    wire::ObjectReader r(root, bytes, "ledger");
    RetentionLedger ledger;
    ledger.kept = r.integer("kept");
    ledger.kept_duration_us = r.integer("kept_duration_us");
    ledger.policy_name = r.string("policy_name");
    ledger.retained_duration_u = r.integer("retained_duration_u");
    ledger.retained_u = r.integer("retained_u");
    ledger.run_id = r.string("run_id");
    ledger.total = r.integer("total");
    ledger.total_duration_us = r.integer("total_duration_us");
    for (const auto& node : r.required("verdicts", Kind::Array).as_array()) {
        wire::ObjectReader vr(node, bytes, "verdict");
        Verdict v;
        v.duration_us = vr.integer("duration_us");
        v.kept = vr.boolean("kept");
        v.overlapping = vr.boolean("overlapping");
        for (const auto& reason : vr.required("reasons", Kind::Array).as_array()) {
            wire::expect_kind(reason, Kind::String, bytes, "reason");
            bool known = false;
            for (int i = 0; i <= static_cast<int>(Reason::Background); ++i) {
                if (to_string(static_cast<Reason>(i)) == reason.as_string()) {
                    v.reasons.push_back(static_cast<Reason>(i));
                    known = true;
                }
            }
            if (!known) {
                throw ParseError::at(bytes, reason.offset(), ParseErrc::BadSyntax,
                                     "unknown reason '" + reason.as_string() + "'");
            }
        }
        v.record_id = vr.string("record_id");
        vr.finish();
        ledger.verdicts.push_back(std::move(v));
    }
    r.finish();
    return ledger;
}

std::string serialize_report(const RetentionReport& report)
{
    return wire::to_canonical_file(Value::Object{
        {"baseline", summary(report.baseline)},
        {"baseline_drop_reasons", counts(report.baseline_drop_reasons)},
        {"expressiveness_loss_u", report.expressiveness_loss_u},
        {"gap", signed_delta(report.gap_u)},
        {"gap_duration", signed_delta(report.gap_duration_u)},
        {"labeling", summary(report.labeling)},
        {"labeling_drop_reasons", counts(report.labeling_drop_reasons)},
        {"overlapping_lost", report.overlapping_lost},
        {"overlapping_total", report.overlapping_total},
        {"total", report.total},
    });
}

}  // namespace gst::pipeline
