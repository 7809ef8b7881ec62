#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "gst/cli.hpp"
#include "gst/error.hpp"
#include "gst/streams.hpp"
#include "gst/validate.hpp"
#include "gst/wire/codec.hpp"
#include "gst/wire/value.hpp"

namespace gst::cli {

namespace {

namespace fs = std::filesystem;

// Input that cannot be read; the input is at fault.
struct InputFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Output that cannot be written; reported as an internal error.
struct OutputFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputFileError(path);
    }
    std::ostringstream bytes;
    bytes << in.rdbuf();
    if (in.bad()) {
        throw InputFileError(path);
    }
    return std::move(bytes).str();
}

std::string stem_of(const std::string& path)
{
    std::string name = fs::path(path).filename().string();
    if (name.ends_with(wire::kFileExtension)) {
        name.erase(name.size() - wire::kFileExtension.size());
    }
    return name;
}

/// Files produced by a command; nothing touches the disk until commit().
class Outputs {
public:
    void add(fs::path path, std::string bytes) { files_.push_back({std::move(path), std::move(bytes)}); }

    void commit() const
    {
        std::vector<fs::path> temps;
        auto cleanup = [&] {
            std::error_code ignored;
            for (const auto& t : temps) {
                fs::remove(t, ignored);
            }
        };
        const std::string suffix = ".tmp" + std::to_string(::getpid());
        for (const auto& [path, bytes] : files_) {
            std::error_code ec;
            if (path.has_parent_path()) {
                fs::create_directories(path.parent_path(), ec);
            }
            fs::path temp = path;
            temp += suffix;
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            if (ec || !out) {
                cleanup();
                throw OutputFileError(path.string());
            }
            temps.push_back(temp);
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            out.close();
            if (!out) {
                cleanup();
                throw OutputFileError(path.string());
            }
        }
        for (std::size_t i = 0; i < files_.size(); ++i) {
            std::error_code ec;
            fs::rename(temps[i], files_[i].path, ec);
            if (ec) {
                cleanup();
                throw OutputFileError(files_[i].path.string());
            }
        }
    }

private:
    struct File {
        fs::path path;
        std::string bytes;
    };
    std::vector<File> files_;
};

ExitStatus exit_for(Errc code)
{
    switch (code) {
    case Errc::LabelerViolation:
    case Errc::BackendFailure:
        return ExitStatus::InternalError;
    default:
        return ExitStatus::InputError;
    }
}

struct Options {
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string config;
    Format format = Format::Human;
    std::vector<std::string> inputs;
    std::string manifest;
    std::string policy;
    std::size_t synthetic = 0;
    bool skeletons = false;
    std::string script;
    std::size_t turns = 1000;
};

DropoutConfig load_dropout_config(const Options& o)
{
    return o.config.empty() ? DropoutConfig{} : parse_dropout_config(read_file(o.config));
}

ExitStatus run_validate(const Options& o, std::ostream&, std::ostream& err)
{
    const std::string bytes = read_file(o.inputs.front());
    const wire::Value root = wire::parse_value(bytes);
    const Document doc = wire::document_from_value(root, bytes);
    const auto report = validate(doc);
    for (const auto& v : report) {
        err << code_string(v.code) << ' ' << (v.path.empty() ? "/" : v.path) << ' ' << v.message << '\n';
    }
    return report.empty() ? ExitStatus::Ok : ExitStatus::InputError;
}

ExitStatus run_canonicalize(const Options& o, std::ostream& out, std::ostream&)
{
    const std::string canonical = wire::canonicalize(read_file(o.inputs.front()));
    if (o.out_dir.empty()) {
        out << canonical;
        return ExitStatus::Ok;
    }
    Outputs files;
    files.add(fs::path(o.out_dir) / (stem_of(o.inputs.front()) + std::string(wire::kFileExtension)), canonical);
    files.commit();
    return ExitStatus::Ok;
}

ExitStatus run_partition(const Options& o, std::ostream&, std::ostream&)
{
    const Partition parts = partition(wire::parse(read_file(o.inputs.front())));
    const std::string stem = stem_of(o.inputs.front());
    Outputs files;
    files.add(fs::path(o.out_dir) / (stem + ".instruct.gst"), serialize_view(parts.instruct));
    files.add(fs::path(o.out_dir) / (stem + ".think.gst"), serialize_view(parts.think));
    files.commit();
    return ExitStatus::Ok;
}

ExitStatus run_merge(const Options& o, std::ostream& out, std::ostream&)
{
    const InstructView instruct = parse_instruct_view(read_file(o.inputs.at(0)));
    const ThinkView think = parse_think_view(read_file(o.inputs.at(1)));
    const Document doc = merge(instruct, think);
    const std::string bytes = wire::serialize_canonical(doc);
    if (o.out_dir.empty()) {
        out << bytes;
        return ExitStatus::Ok;
    }
    Outputs files;
    files.add(fs::path(o.out_dir) / (doc.doc_id + std::string(wire::kFileExtension)), bytes);
    files.commit();
    return ExitStatus::Ok;
}

ExitStatus run_dropout(const Options& o, std::ostream&, std::ostream&)
{
    const DropoutConfig cfg = load_dropout_config(o);
    const Document doc = wire::parse(read_file(o.inputs.front()));
    const MaskPlan plan = plan_mask(doc, cfg, o.seed);
    const std::string stem = stem_of(o.inputs.front());
    Outputs files;
    files.add(fs::path(o.out_dir) / (stem + ".masked.gst"), wire::serialize_canonical(apply_mask(doc, plan)));
    files.add(fs::path(o.out_dir) / (stem + ".mask"), serialize_mask_plan(plan));
    files.commit();
    return ExitStatus::Ok;
}

ExitStatus run_stats(const Options& o, std::ostream& out, std::ostream&)
{
    const DropoutConfig cfg = load_dropout_config(o);
    std::vector<Document> docs;
    std::vector<MaskPlan> plans;
    for (const auto& path : o.inputs) {
        docs.push_back(wire::parse(read_file(path)));
        plans.push_back(plan_mask(docs.back(), cfg, o.seed));
    }
    out << emit_report(mask_stats(plans, docs), o.format);
    return ExitStatus::Ok;
}

ExitStatus run_pipeline(const Options& o, std::ostream& out, std::ostream&)
{
    using namespace pipeline;
    const std::vector<CorpusRecord> records =
        o.manifest.empty() ? generate_synthetic_corpus(o.synthetic, o.seed) : ingest_manifest(read_file(o.manifest));
    const FilterPolicy policy = o.policy.empty() ? default_filter_policy() : parse_filter_policy(read_file(o.policy));
    const auto exec = Execution::from_env();

    const RetentionLedger baseline = run_filter_baseline(records, policy, exec);
    const LabelingResult labeling = run_labeling(records, builtin_labelers(), exec);
    const RetentionReport report = retention_report(baseline, labeling.ledger);

    const fs::path dir(o.out_dir);
    Outputs files;
    files.add(dir / "baseline_ledger.json", serialize_ledger(baseline));
    files.add(dir / "labeling_ledger.json", serialize_ledger(labeling.ledger));
    files.add(dir / "retention_report.json", serialize_report(report));
    if (o.skeletons) {
        for (const auto& doc : labeling.skeletons) {
            files.add(dir / "skeletons" / (doc.doc_id + std::string(wire::kFileExtension)),
                      wire::serialize_canonical(doc));
        }
    }
    files.commit();
    out << emit_report(report, o.format);
    return ExitStatus::Ok;
}

ExitStatus run_simulate(const Options& o, std::ostream& out, std::ostream&)
{
    const session::SessionScript script = session::parse_script(read_file(o.script));
    session::MockRenderer mock;
    const session::SimulationResult result = session::simulate(script, mock);

    const fs::path dir(o.out_dir);
    Outputs files;
    std::string acoustic;
    for (std::size_t t = 0; t < result.turns.size(); ++t) {
        char name[32];
        std::snprintf(name, sizeof name, "turn-%04zu.gst", t + 1);
        files.add(dir / name, wire::serialize_canonical(result.turns[t].request.document));
        acoustic += session::format_acoustic_plan(t + 1, result.turns[t].acoustic);
    }
    files.add(dir / "acoustic_plan.txt", std::move(acoustic));
    files.commit();
    out << emit_report(summarize(result), o.format);
    return ExitStatus::Ok;
}

ExitStatus run_probe(const Options& o, std::ostream& out, std::ostream&)
{
    out << emit_report(session::context_growth_probe(o.turns), o.format);
    return ExitStatus::Ok;
}

using Handler = ExitStatus (*)(const Options&, std::ostream&, std::ostream&);

ExitStatus guarded(Handler handler, const Options& o, std::ostream& out, std::ostream& err)
{
    const std::string source = o.inputs.empty() ? "-" : o.inputs.front();
    try {
        return handler(o, out, err);
    } catch (const wire::ParseError& e) {
        err << e.diagnostic() << '\n';
        return ExitStatus::InputError;
    } catch (const Error& e) {
        err << to_string(e.code()) << ' ' << source << ' ' << e.detail() << '\n';
        return exit_for(e.code());
    } catch (const InputFileError& e) {
        err << "NotFound " << e.what() << " cannot read file\n";
        return ExitStatus::InputError;
    } catch (const OutputFileError& e) {
        err << "WriteFailed " << e.what() << " cannot write file\n";
        return ExitStatus::InternalError;
    } catch (const std::exception& e) {
        err << "Internal - " << e.what() << '\n';
        return ExitStatus::InternalError;
    }
}

}  // namespace

ExitStatus dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    Handler handler = nullptr;

    CLI::App app{"Layered speech-annotation toolkit: documents, streams, dropout, corpus retention and sessions",
                 "gst"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    const std::map<std::string, Format> formats{{"wire", Format::Wire}, {"human", Format::Human}};
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "Report format: wire or human")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check a document; exit 1 and list violations if invalid");
    validate_cmd->add_option("file", o.inputs, "Document (.gst)")->required()->expected(1);
    validate_cmd->callback([&] { handler = run_validate; });

    auto* canon_cmd = app.add_subcommand("canonicalize", "Rewrite a document in canonical form");
    canon_cmd->add_option("file", o.inputs, "Document (.gst)")->required()->expected(1);
    canon_cmd->add_option("--out", o.out_dir, "Output directory (default: stdout)");
    canon_cmd->callback([&] { handler = run_canonicalize; });

    auto* part_cmd = app.add_subcommand("partition", "Split a document into its Instruct and Think views");
    part_cmd->add_option("file", o.inputs, "Document (.gst)")->required()->expected(1);
    part_cmd->add_option("--out", o.out_dir, "Output directory")->required();
    part_cmd->callback([&] { handler = run_partition; });

    auto* merge_cmd = app.add_subcommand("merge", "Join an Instruct view and a Think view into a document");
    merge_cmd->add_option("views", o.inputs, "Instruct view, then Think view")->required()->expected(2);
    merge_cmd->add_option("--out", o.out_dir, "Output directory (default: stdout)");
    merge_cmd->callback([&] { handler = run_merge; });

    auto* drop_cmd = app.add_subcommand("dropout", "Mask Think slots of a document");
    drop_cmd->add_option("file", o.inputs, "Document (.gst)")->required()->expected(1);
    drop_cmd->add_option("--seed", o.seed, "Mask seed")->required();
    drop_cmd->add_option("--config", o.config, "Dropout config (default: p=0.2 for every key)");
    drop_cmd->add_option("--out", o.out_dir, "Output directory")->required();
    drop_cmd->callback([&] { handler = run_dropout; });

    auto* stats_cmd = app.add_subcommand("stats", "Per-key mask rates over a set of documents");
    stats_cmd->add_option("files", o.inputs, "Documents (.gst)")->required();
    stats_cmd->add_option("--seed", o.seed, "Mask seed")->required();
    stats_cmd->add_option("--config", o.config, "Dropout config");
    add_format(stats_cmd);
    stats_cmd->callback([&] { handler = run_stats; });

    auto* pipeline_cmd = app.add_subcommand("pipeline", "Corpus retention runs");
    pipeline_cmd->require_subcommand(1);
    auto* run_cmd = pipeline_cmd->add_subcommand("run", "Compare filter-based and label-all curation");
    auto* source = run_cmd->add_option_group("source");
    source->add_option("--manifest", o.manifest, "Corpus manifest, one record object per line");
    source->add_option("--synthetic", o.synthetic, "Generate N synthetic records instead");
    source->require_option(1);
    o.seed = 42;
    run_cmd->add_option("--seed", o.seed, "Synthetic corpus seed")->capture_default_str();
    run_cmd->add_option("--policy,--config", o.policy, "Filter policy (default: built-in policy)");
    run_cmd->add_option("--out", o.out_dir, "Output directory")->required();
    run_cmd->add_flag("--skeletons", o.skeletons, "Also write the labeled skeleton documents");
    add_format(run_cmd);
    run_cmd->callback([&] { handler = run_pipeline; });

    auto* session_cmd = app.add_subcommand("session", "Session protocol");
    session_cmd->require_subcommand(1);
    auto* sim_cmd = session_cmd->add_subcommand("simulate", "Replay a session script against the mock renderer");
    sim_cmd->add_option("--script", o.script, "Session script")->required();
    sim_cmd->add_option("--out", o.out_dir, "Output directory")->required();
    add_format(sim_cmd);
    sim_cmd->callback([&] { handler = run_simulate; });
    auto* probe_cmd = session_cmd->add_subcommand("probe", "Context size of the built-in scripted session");
    probe_cmd->add_option("--turns", o.turns, "Number of turns")->capture_default_str();
    add_format(probe_cmd);
    probe_cmd->callback([&] { handler = run_probe; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitStatus::Ok : ExitStatus::UsageError;
    }
    if (handler == nullptr) {
        return ExitStatus::UsageError;
    }
    return guarded(handler, o, out, err);
}

}  // namespace gst::cli
