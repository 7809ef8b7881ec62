#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gst/document.hpp"

namespace gst::pipeline {

/// Micro-units: ratios over 10^6, DNSMOS over 10^6 (0..5'000'000).
inline constexpr std::uint64_t kMicroRatioMax = 1'000'000;
inline constexpr std::uint64_t kDnsmosMax = 5'000'000;

enum class Background { Clean, Music, Babble, Event, Mixed };

std::string_view to_string(Background background) noexcept;
std::optional<Background> background_from_string(std::string_view name) noexcept;

struct Signals {
    std::uint64_t dnsmos_u = 0;
    std::uint64_t wer_u = 0;
    std::uint64_t speaker_count = 0;
    std::uint64_t overlap_u = 0;
    Background background = Background::Clean;
    bool corrupt = false;

    friend bool operator==(const Signals&, const Signals&) = default;
};

/// One raw corpus segment with its precomputed quality signals.
struct CorpusRecord {
    std::string record_id;
    std::uint64_t duration_us = 0;
    Signals signals;

    friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

/// Thresholds of a conventional purity filter. A record passes when every
/// predicate holds.
struct FilterPolicy {
    std::uint64_t min_dnsmos_u = 3'000'000;
    std::uint64_t max_wer_u = 200'000;
    std::uint64_t max_speakers = 1;
    std::uint64_t max_overlap_u = kMicroRatioMax;
    std::set<Background> allowed_backgrounds{Background::Clean, Background::Music, Background::Babble,
                                             Background::Event, Background::Mixed};

    /// Throws Error{Errc::InvalidConfig} when a threshold is outside its
    /// signal range.
    void check() const;

    friend bool operator==(const FilterPolicy&, const FilterPolicy&) = default;
};

/// The purity filter used as the comparison baseline: DNSMOS >= 3.0,
/// WER <= 0.20, single speaker.
FilterPolicy default_filter_policy();

/// Drop reasons, in the order they are reported.
enum class Reason { Corrupt, LowDnsmos, HighWer, TooManySpeakers, Overlap, Background };

std::string_view to_string(Reason reason) noexcept;

struct Verdict {
    std::string record_id;
    bool kept = false;
    std::vector<Reason> reasons;
    std::uint64_t duration_us = 0;
    bool overlapping = false;  // overlap_u > 0 in the source record

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct RetentionLedger {
    std::string run_id;
    std::string policy_name;  // "filter_baseline" | "label_all"
    std::vector<Verdict> verdicts;
    std::uint64_t total = 0;
    std::uint64_t kept = 0;
    std::uint64_t total_duration_us = 0;
    std::uint64_t kept_duration_us = 0;
    std::uint64_t retained_u = 0;           // floor(kept * 10^6 / total)
    std::uint64_t retained_duration_u = 0;  // floor(kept_duration * 10^6 / total_duration)

    friend bool operator==(const RetentionLedger&, const RetentionLedger&) = default;
};

/// Maps a record onto (dimension key, caption) contributions. Must be pure.
struct Labeler {
    std::string name;
    std::function<std::vector<std::pair<std::string, Caption>>(const CorpusRecord&)> label;
};

/// The fixed lookup-table labelers shipped with the pipeline.
std::vector<Labeler> builtin_labelers();

/// Placeholder text of the single sentence of a labeled skeleton.
inline constexpr std::string_view kUnalignedText = "〈unaligned〉";
/// Caption given to an Instruct dimension no labeler supplied.
inline constexpr std::string_view kUnlabeledCaption = "unlabeled";

struct Execution {
    bool parallel = true;

    /// Sequential when GST_NO_PARALLEL=1 is set.
    static Execution from_env();
};

/// One record per non-blank manifest line, in file order. Throws
/// wire::ParseError (line numbers are manifest lines) or
/// Error{Errc::DuplicateRecordId}.
std::vector<CorpusRecord> ingest_manifest(std::string_view bytes);
std::string serialize_manifest(std::span<const CorpusRecord> records);

/// Evaluates every predicate; an empty result means the record is kept.
std::vector<Reason> filter_reasons(const CorpusRecord& record, const FilterPolicy& policy);

RetentionLedger run_filter_baseline(std::span<const CorpusRecord> records, const FilterPolicy& policy,
                                    Execution exec = Execution::from_env());

struct LabelingResult {
    RetentionLedger ledger;
    std::vector<Document> skeletons;  // kept records, manifest order
};

/// Keeps every record that is not corrupt and labels it into a valid
/// skeleton. Throws Error{Errc::LabelerViolation}.
LabelingResult run_labeling(std::span<const CorpusRecord> records, std::span<const Labeler> labelers,
                            Execution exec = Execution::from_env());

struct LedgerSummary {
    std::uint64_t kept = 0;
    std::uint64_t retained_u = 0;
    std::uint64_t retained_duration_u = 0;

    friend bool operator==(const LedgerSummary&, const LedgerSummary&) = default;
};

struct RetentionReport {
    std::uint64_t total = 0;
    LedgerSummary baseline;
    LedgerSummary labeling;
    std::int64_t gap_u = 0;  // labeling.retained_u - baseline.retained_u
    std::int64_t gap_duration_u = 0;
    std::map<std::string, std::uint64_t> baseline_drop_reasons;
    std::map<std::string, std::uint64_t> labeling_drop_reasons;
    std::uint64_t overlapping_total = 0;
    std::uint64_t overlapping_lost = 0;  // dropped by baseline, kept by labeling
    std::uint64_t expressiveness_loss_u = 0;  // overlapping_lost / overlapping_total

    friend bool operator==(const RetentionReport&, const RetentionReport&) = default;
};

/// Side-by-side comparison of two runs over the same records. Throws
/// Error{Errc::UniverseMismatch}.
RetentionReport retention_report(const RetentionLedger& baseline, const RetentionLedger& labeling);

/// Deterministic stand-in corpus; every field is drawn independently from
/// FNV-1a(decimal(seed) 0x1F decimal(index) 0x1F field_name).
std::vector<CorpusRecord> generate_synthetic_corpus(std::size_t n, std::uint64_t seed);

std::string serialize_ledger(const RetentionLedger& ledger);
std::string serialize_report(const RetentionReport& report);
RetentionLedger parse_ledger(std::string_view bytes);
FilterPolicy parse_filter_policy(std::string_view bytes);
std::string serialize_filter_policy(const FilterPolicy& policy);

}  // namespace gst::pipeline
