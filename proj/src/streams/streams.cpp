#include "gst/streams.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gst/error.hpp"
#include "gst/validate.hpp"
#include "gst/wire/codec.hpp"

namespace gst {

namespace {

using wire::Value;
using Kind = wire::Value::Kind;

void check_stream(const DimMap& dims, Stream expected, std::string_view where)
{
    for (const auto& [key, caption] : dims) {
        const auto* d = registry().find(key);
        if (d != nullptr && d->stream != expected) {
            throw Error(Errc::StreamViolation, "'" + key + "' in " + std::string(where) + " belongs to the " +
                                                   std::string(to_string(d->stream)) + " stream");
        }
    }
}

void check_stream(const std::vector<TokenAnnotation>& tokens, Stream expected, std::string_view where)
{
    for (const auto& t : tokens) {
        const auto* d = registry().find(t.key);
        if (d != nullptr && d->stream != expected) {
            throw Error(Errc::StreamViolation, "token key '" + t.key + "' in " + std::string(where));
        }
    }
}

}  // namespace

Stream stream_of(std::string_view key)
{
    return registry().lookup(key).stream;
}

Partition partition(const Document& doc)
{
    require_valid(doc);
    Partition out;
    out.instruct.doc_id = doc.doc_id;
    out.think.doc_id = doc.doc_id;
    for (const auto& [key, caption] : doc.global_dims) {
        auto& target = stream_of(key) == Stream::Instruct ? out.instruct.global_dims : out.think.global_dims;
        target.emplace(key, caption);
    }
    out.instruct.speakers = doc.speakers;
    for (const auto& s : doc.sentences) {
        out.instruct.sentences.push_back({s.index, s.speaker_id, s.text, s.marks});
        out.think.sentences.push_back({s.index, s.dims, s.tokens});
    }
    return out;
}

Document merge(const InstructView& instruct, const ThinkView& think)
{
    if (instruct.doc_id != think.doc_id) {
        throw Error(Errc::DocIdMismatch, "'" + instruct.doc_id + "' vs '" + think.doc_id + "'");
    }
    check_stream(instruct.global_dims, Stream::Instruct, "InstructView");
    for (const auto& s : instruct.speakers) {
        check_stream(s.dims, Stream::Instruct, "InstructView speaker");
    }
    check_stream(think.global_dims, Stream::Think, "ThinkView");

    Document doc;
    doc.doc_id = instruct.doc_id;
    doc.global_dims = instruct.global_dims;
    for (const auto& [key, caption] : think.global_dims) {
        if (!doc.global_dims.emplace(key, caption).second) {
            throw Error(Errc::DuplicateDimension, "global '" + key + "' present in both views");
        }
    }
    doc.speakers = instruct.speakers;

    std::map<std::size_t, std::size_t> position;  // sentence index -> slot in doc.sentences
    for (const auto& skel : instruct.sentences) {
        position.emplace(skel.index, doc.sentences.size());
        doc.sentences.push_back({skel.index, skel.speaker_id, skel.text, skel.marks, {}, {}});
    }

    std::set<std::size_t> planned;
    for (const auto& plan : think.sentences) {
        auto it = position.find(plan.index);
        if (it == position.end()) {
            throw Error(Errc::DanglingSentenceIndex,
                        "ThinkView references sentence " + std::to_string(plan.index));
        }
        if (!planned.insert(plan.index).second) {
            throw Error(Errc::DuplicateDimension,
                        "sentence " + std::to_string(plan.index) + " planned twice");
        }
        check_stream(plan.dims, Stream::Think, "ThinkView sentence");
        check_stream(plan.tokens, Stream::Think, "ThinkView sentence");
        auto& sentence = doc.sentences[it->second];
        sentence.dims = plan.dims;
        sentence.tokens = plan.tokens;
    }
    require_valid(doc);
    return doc;
}

std::size_t dimension_count(const InstructView& view) noexcept
{
    std::size_t n = view.global_dims.size();
    for (const auto& s : view.speakers) {
        n += s.dims.size();
    }
    return n;
}

std::size_t dimension_count(const ThinkView& view) noexcept
{
    std::size_t n = view.global_dims.size();
    for (const auto& s : view.sentences) {
        n += s.dims.size() + s.tokens.size();
    }
    return n;
}

std::string serialize_view(const InstructView& view)
{
    Value::Array speakers;
    for (const auto& s : view.speakers) {
        speakers.push_back(wire::to_value(s));
    }
    Value::Array sentences;
    for (const auto& s : view.sentences) {
        Value::Array marks;
        for (const auto& m : s.marks) {
            marks.push_back(wire::to_value(m));
        }
        sentences.push_back(Value::Object{
            {"index", s.index},
            {"marks", std::move(marks)},
            {"speaker_id", s.speaker_id},
            {"text", s.text},
        });
    }
    return wire::to_canonical_file(Value::Object{
        {"doc_id", view.doc_id},
        {"global_dims", wire::to_value(view.global_dims)},
        {"sentences", std::move(sentences)},
        {"speakers", std::move(speakers)},
        {"version", kSchemaVersion},
        {"view", "instruct"},
    });
}

std::string serialize_view(const ThinkView& view)
{
    Value::Array sentences;
    for (const auto& s : view.sentences) {
        Value::Array tokens;
        for (const auto& t : s.tokens) {
            tokens.push_back(wire::to_value(t));
        }
        sentences.push_back(Value::Object{
            {"dims", wire::to_value(s.dims)},
            {"index", s.index},
            {"tokens", std::move(tokens)},
        });
    }
    return wire::to_canonical_file(Value::Object{
        {"doc_id", view.doc_id},
        {"global_dims", wire::to_value(view.global_dims)},
        {"sentences", std::move(sentences)},
        {"version", kSchemaVersion},
        {"view", "think"},
    });
}

namespace {

void read_header(wire::ObjectReader& r, std::string_view source, std::string_view expected_view)
{
    const Value& version = r.required("version", Kind::Integer);
    if (version.as_integer() != kSchemaVersion) {
        throw wire::ParseError::at(source, version.offset(), wire::ParseErrc::BadVersion,
                                   "unsupported version " + std::to_string(version.as_integer()));
    }
    const Value& view = r.required("view", Kind::String);
    if (view.as_string() != expected_view) {
        throw wire::ParseError::at(source, view.offset(), wire::ParseErrc::BadSyntax,
                                   "expected view '" + std::string(expected_view) + "'");
    }
}

void require_stream(const DimMap& dims, Stream stream)
{
    for (const auto& [key, caption] : dims) {
        const auto* d = registry().find(key);
        if (d == nullptr || d->stream != stream) {
            throw Error(Errc::StreamViolation,
                        "'" + key + "' is not " + (stream == Stream::Instruct ? "an Instruct" : "a Think") +
                            " dimension");
        }
    }
}

}  // namespace

InstructView parse_instruct_view(std::string_view bytes)
{
    const Value root = wire::parse_value(bytes);
    wire::ObjectReader r(root, bytes, "instruct view");
    read_header(r, bytes, "instruct");
    InstructView view;
    view.doc_id = r.string("doc_id");
    view.global_dims = wire::dims_from_value(r.required("global_dims", Kind::Object), bytes, "global_dims");
    for (const auto& node : r.required("sentences", Kind::Array).as_array()) {
        wire::ObjectReader s(node, bytes, "sentence");
        SentenceSkeleton skel;
        skel.index = s.integer("index");
        for (const auto& m : s.required("marks", Kind::Array).as_array()) {
            skel.marks.push_back(wire::mark_from_value(m, bytes));
        }
        skel.speaker_id = s.string("speaker_id");
        skel.text = s.string("text");
        s.finish();
        view.sentences.push_back(std::move(skel));
    }
    for (const auto& node : r.required("speakers", Kind::Array).as_array()) {
        view.speakers.push_back(wire::speaker_from_value(node, bytes));
        require_stream(view.speakers.back().dims, Stream::Instruct);
    }
    r.finish();
    require_stream(view.global_dims, Stream::Instruct);
    return view;
}

ThinkView parse_think_view(std::string_view bytes)
{
    const Value root = wire::parse_value(bytes);
    wire::ObjectReader r(root, bytes, "think view");
    read_header(r, bytes, "think");
    ThinkView view;
    view.doc_id = r.string("doc_id");
    view.global_dims = wire::dims_from_value(r.required("global_dims", Kind::Object), bytes, "global_dims");
    for (const auto& node : r.required("sentences", Kind::Array).as_array()) {
        wire::ObjectReader s(node, bytes, "sentence");
        SentencePlan plan;
        plan.dims = wire::dims_from_value(s.required("dims", Kind::Object), bytes, "sentence.dims");
        plan.index = s.integer("index");
        for (const auto& t : s.required("tokens", Kind::Array).as_array()) {
            plan.tokens.push_back(wire::token_from_value(t, bytes));
        }
        s.finish();
        require_stream(plan.dims, Stream::Think);
        for (const auto& t : plan.tokens) {
            require_stream(DimMap{{t.key, t.caption}}, Stream::Think);
        }
        view.sentences.push_back(std::move(plan));
    }
    r.finish();
    require_stream(view.global_dims, Stream::Think);
    return view;
}

}  // namespace gst
