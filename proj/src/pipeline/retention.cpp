#include <algorithm>
#include <array>
#include <cstdio>

#include "gst/error.hpp"
#include "gst/fnv.hpp"
#include "gst/registry.hpp"
#include "gst/validate.hpp"
#include "gst/pipeline.hpp"
#include "parallel.hpp"

namespace gst::pipeline {

namespace {

constexpr std::array<std::string_view, 6> kReasonNames{
    "corrupt", "low_dnsmos", "high_wer", "too_many_speakers", "overlap", "background",
};

std::uint64_t micro_fraction(std::uint64_t part, std::uint64_t whole)
{
    if (whole == 0) {
        return 0;
    }
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(part) * kMicroRatioMax / whole);
}

std::string make_run_id(std::string_view policy_name, std::span<const CorpusRecord> records)
{
    Fnv1a64 h;
    h.update(policy_name);
    for (const auto& rec : records) {
        h.update(kUnitSeparator).update(rec.record_id);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.value()));
    return std::string(policy_name) + "-" + buf;
}

Verdict verdict_for(const CorpusRecord& rec, std::vector<Reason> reasons)
{
    Verdict v;
    v.record_id = rec.record_id;
    v.kept = reasons.empty();
    v.reasons = std::move(reasons);
    v.duration_us = rec.duration_us;
    v.overlapping = rec.signals.overlap_u > 0;
    return v;
}

RetentionLedger assemble(std::string_view policy_name, std::span<const CorpusRecord> records,
                         std::vector<Verdict> verdicts)
{
    RetentionLedger ledger;
    ledger.run_id = make_run_id(policy_name, records);
    ledger.policy_name = std::string(policy_name);
    for (const auto& v : verdicts) {
        ++ledger.total;
        ledger.total_duration_us += v.duration_us;
        if (v.kept) {
            ++ledger.kept;
            ledger.kept_duration_us += v.duration_us;
        }
    }
    ledger.verdicts = std::move(verdicts);
    ledger.retained_u = micro_fraction(ledger.kept, ledger.total);
    ledger.retained_duration_u = micro_fraction(ledger.kept_duration_us, ledger.total_duration_us);
    return ledger;
}

Document label_record(const CorpusRecord& rec, std::span<const Labeler> labelers)
{
    Document doc;
    doc.doc_id = rec.record_id;
    const std::uint64_t speakers = std::max<std::uint64_t>(1, rec.signals.speaker_count);
    for (std::uint64_t i = 0; i < speakers; ++i) {
        doc.speakers.push_back({"spk" + std::to_string(i), {}});
    }
    doc.sentences.push_back({0, "spk0", std::string(kUnalignedText), {}, {}, {}});

    auto violation = [&](const Labeler& l, const std::string& what) {
        return Error(Errc::LabelerViolation, "labeler '" + l.name + "' on '" + rec.record_id + "': " + what);
    };
    for (const auto& labeler : labelers) {
        for (auto& [key, caption] : labeler.label(rec)) {
            const auto* d = registry().find(key);
            if (d == nullptr) {
                throw violation(labeler, "unknown key '" + key + "'");
            }
            DimMap* target = nullptr;
            switch (d->cardinality) {
            case Cardinality::PerDocument: target = &doc.global_dims; break;
            case Cardinality::PerSentence: target = &doc.sentences.front().dims; break;
            case Cardinality::PerSpeaker: break;
            case Cardinality::PerTokenSpan:
                throw violation(labeler, "token key '" + key + "' has no span on an unaligned skeleton");
            }
            if (d->cardinality == Cardinality::PerSpeaker) {
                for (auto& speaker : doc.speakers) {
                    if (!speaker.dims.emplace(key, caption).second) {
                        throw violation(labeler, "key '" + key + "' already labeled");
                    }
                }
            } else if (!target->emplace(key, std::move(caption)).second) {
                throw violation(labeler, "key '" + key + "' already labeled");
            }
        }
    }

    for (auto key : registry().keys(Stream::Instruct, Cardinality::PerDocument)) {
        doc.global_dims.try_emplace(std::string(key), Caption{std::string(kUnlabeledCaption)});
    }
    for (auto& speaker : doc.speakers) {
        for (auto key : registry().keys(Stream::Instruct, Cardinality::PerSpeaker)) {
            speaker.dims.try_emplace(std::string(key), Caption{std::string(kUnlabeledCaption)});
        }
    }

    auto report = validate(doc);
    if (!report.empty()) {
        throw Error(Errc::LabelerViolation, "skeleton '" + rec.record_id + "' invalid: " +
                                                code_string(report.front().code) + " " + report.front().path +
                                                " " + report.front().message);
    }
    return doc;
}

}  // namespace

std::string_view to_string(Reason reason) noexcept
{
    return kReasonNames[static_cast<std::size_t>(reason)];
}

std::vector<Reason> filter_reasons(const CorpusRecord& record, const FilterPolicy& policy)
{
    const auto& s = record.signals;
    std::vector<Reason> reasons;
    if (s.corrupt) reasons.push_back(Reason::Corrupt);
    if (s.dnsmos_u < policy.min_dnsmos_u) reasons.push_back(Reason::LowDnsmos);
    if (s.wer_u > policy.max_wer_u) reasons.push_back(Reason::HighWer);
    if (s.speaker_count > policy.max_speakers) reasons.push_back(Reason::TooManySpeakers);
    if (s.overlap_u > policy.max_overlap_u) reasons.push_back(Reason::Overlap);
    if (!policy.allowed_backgrounds.contains(s.background)) reasons.push_back(Reason::Background);
    return reasons;
}

RetentionLedger run_filter_baseline(std::span<const CorpusRecord> records, const FilterPolicy& policy,
                                    Execution exec)
{
    policy.check();
    std::vector<Verdict> verdicts(records.size());
    detail::parallel_for(records.size(), exec.parallel, [&](std::size_t i) {
        verdicts[i] = verdict_for(records[i], filter_reasons(records[i], policy));
    });
    return assemble("filter_baseline", records, std::move(verdicts));
}

LabelingResult run_labeling(std::span<const CorpusRecord> records, std::span<const Labeler> labelers,
                            Execution exec)
{
    std::vector<Verdict> verdicts(records.size());
    std::vector<std::optional<Document>> docs(records.size());
    detail::parallel_for(records.size(), exec.parallel, [&](std::size_t i) {
        const auto& rec = records[i];
        if (rec.signals.corrupt) {
            verdicts[i] = verdict_for(rec, {Reason::Corrupt});
            return;
        }
        docs[i] = label_record(rec, labelers);
        verdicts[i] = verdict_for(rec, {});
    });

    LabelingResult result;
    for (auto& doc : docs) {
        if (doc) {
            result.skeletons.push_back(std::move(*doc));
        }
    }
    result.ledger = assemble("label_all", records, std::move(verdicts));
    return result;
}

RetentionReport retention_report(const RetentionLedger& baseline, const RetentionLedger& labeling)
{
    const bool same_universe =
        baseline.verdicts.size() == labeling.verdicts.size() &&
        std::ranges::equal(baseline.verdicts, labeling.verdicts, {}, &Verdict::record_id, &Verdict::record_id);
    if (!same_universe) {
        throw Error(Errc::UniverseMismatch, "ledgers '" + baseline.run_id + "' and '" + labeling.run_id +
                                                "' cover different records");
    }

    RetentionReport report;
    report.total = baseline.total;
    report.baseline = {baseline.kept, baseline.retained_u, baseline.retained_duration_u};
    report.labeling = {labeling.kept, labeling.retained_u, labeling.retained_duration_u};
    report.gap_u = static_cast<std::int64_t>(labeling.retained_u) - static_cast<std::int64_t>(baseline.retained_u);
    report.gap_duration_u = static_cast<std::int64_t>(labeling.retained_duration_u) -
                            static_cast<std::int64_t>(baseline.retained_duration_u);

    for (std::size_t i = 0; i < baseline.verdicts.size(); ++i) {
        const auto& b = baseline.verdicts[i];
        const auto& l = labeling.verdicts[i];
        for (auto r : b.reasons) ++report.baseline_drop_reasons[std::string(to_string(r))];
        for (auto r : l.reasons) ++report.labeling_drop_reasons[std::string(to_string(r))];
        if (b.overlapping) {
            ++report.overlapping_total;
            if (!b.kept && l.kept) {
                ++report.overlapping_lost;
            }
        }
    }
    report.expressiveness_loss_u = micro_fraction(report.overlapping_lost, report.overlapping_total);
    return report;
}

}  // namespace gst::pipeline
