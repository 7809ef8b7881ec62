#include <cstdio>

#include "gst/cli.hpp"
#include "gst/wire/codec.hpp"
#include "gst/wire/value.hpp"

namespace gst::cli {

namespace {

using wire::Value;

// "0.190000" for 190000; locale independent.
std::string micro_decimal(std::uint64_t micro)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llu.%06llu", static_cast<unsigned long long>(micro / 1'000'000),
                  static_cast<unsigned long long>(micro % 1'000'000));
    return buf;
}

std::string signed_micro_decimal(std::int64_t micro)
{
    const std::uint64_t magnitude = micro < 0 ? 0 - static_cast<std::uint64_t>(micro) : static_cast<std::uint64_t>(micro);
    return (micro < 0 ? "-" : "") + micro_decimal(magnitude);
}

class HumanLines {
public:
    void integer(std::string_view name, std::uint64_t value)
    {
        line(name, std::to_string(value));
    }
    void micro(std::string_view name, std::uint64_t value)
    {
        line(name, std::to_string(value) + " (" + micro_decimal(value) + ")");
    }
    void signed_micro(std::string_view name, std::int64_t value)
    {
        line(name, std::to_string(value) + " (" + signed_micro_decimal(value) + ")");
    }
    void line(std::string_view name, std::string_view value)
    {
        out_.append(name).append(" ").append(value).append("\n");
    }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

void summary_lines(HumanLines& h, std::string_view prefix, const pipeline::LedgerSummary& s)
{
    const std::string p(prefix);
    h.integer(p + ".kept", s.kept);
    h.micro(p + ".retained_u", s.retained_u);
    h.micro(p + ".retained_duration_u", s.retained_duration_u);
}

}  // namespace

SessionSummary summarize(const session::SimulationResult& result)
{
    SessionSummary s;
    s.session_id = result.final_state.session_id;
    s.turns = result.turns.size();
    for (const auto& turn : result.turns) {
        s.sentences += turn.acoustic.lines.size();
        for (const auto& line : turn.acoustic.lines) {
            s.total_duration_ms += line.duration_ms;
        }
        s.context_bytes_max = std::max<std::uint64_t>(s.context_bytes_max,
                                                      session::serialize_context(turn.request.context).size());
        s.context_bytes_max =
            std::max<std::uint64_t>(s.context_bytes_max, session::serialize_context(turn.state.context).size());
    }
    return s;
}

std::string emit_report(const pipeline::RetentionReport& report, Format format)
{
    if (format == Format::Wire) {
        return pipeline::serialize_report(report);
    }
    HumanLines h;
    h.integer("total", report.total);
    summary_lines(h, "baseline", report.baseline);
    summary_lines(h, "labeling", report.labeling);
    h.signed_micro("gap_u", report.gap_u);
    h.signed_micro("gap_duration_u", report.gap_duration_u);
    for (const auto& [reason, n] : report.baseline_drop_reasons) {
        h.integer("baseline_drop." + reason, n);
    }
    for (const auto& [reason, n] : report.labeling_drop_reasons) {
        h.integer("labeling_drop." + reason, n);
    }
    h.integer("overlapping_total", report.overlapping_total);
    h.integer("overlapping_lost", report.overlapping_lost);
    h.micro("expressiveness_loss_u", report.expressiveness_loss_u);
    return h.take();
}

std::string emit_report(const MaskStats& stats, Format format)
{
    if (format == Format::Wire) {
        Value::Object keys;
        for (const auto& [key, rate] : stats) {
            keys.emplace(key, Value::Object{
                                  {"eligible", rate.eligible}, {"masked", rate.masked}, {"rate_u", rate.rate_u}});
        }
        return wire::to_canonical_file(Value::Object{{"keys", std::move(keys)}});
    }
    HumanLines h;
    for (const auto& [key, rate] : stats) {
        h.line(key, std::to_string(rate.masked) + "/" + std::to_string(rate.eligible) + " " +
                        std::to_string(rate.rate_u) + " (" + micro_decimal(rate.rate_u) + ")");
    }
    return h.take();
}

std::string emit_report(const SessionSummary& summary, Format format)
{
    if (format == Format::Wire) {
        return wire::to_canonical_file(Value::Object{
            {"context_bytes_max", summary.context_bytes_max},
            {"sentences", summary.sentences},
            {"session_id", summary.session_id},
            {"total_duration_ms", summary.total_duration_ms},
            {"turns", summary.turns},
        });
    }
    HumanLines h;
    h.line("session_id", summary.session_id);
    h.integer("turns", summary.turns);
    h.integer("sentences", summary.sentences);
    h.integer("context_bytes_max", summary.context_bytes_max);
    h.integer("total_duration_ms", summary.total_duration_ms);
    return h.take();
}

std::string emit_report(const session::GrowthProbe& probe, Format format)
{
    if (format == Format::Wire) {
        return wire::to_canonical_file(Value::Object{
            {"bounded_bytes_max", probe.bounded_bytes_max},
            {"context_budget_bytes", session::kContextBudgetBytes},
            {"raw_history_bytes", probe.raw_history_bytes},
        });
    }
    HumanLines h;
    h.integer("bounded_bytes_max", probe.bounded_bytes_max);
    h.integer("context_budget_bytes", session::kContextBudgetBytes);
    h.integer("raw_history_bytes", probe.raw_history_bytes);
    return h.take();
}

}  // namespace gst::cli
