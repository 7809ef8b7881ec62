#include "gst/wire/codec.hpp"

#include "gst/error.hpp"
#include "gst/validate.hpp"

namespace gst::wire {

using Kind = Value::Kind;

Value to_value(const DimMap& dims)
{
    Value::Object out;
    for (const auto& [key, caption] : dims) {
        out.emplace(key, caption.text);
    }
    return out;
}

Value to_value(const Mark& mark)
{
    Value::Object out;
    if (mark.caption) {
        out.emplace("caption", mark.caption->text);
    }
    out.emplace("kind", to_string(mark.kind));
    out.emplace("position", mark.position);
    return out;
}

Value to_value(const TokenAnnotation& token)
{
    return Value::Object{
        {"caption", token.caption.text},
        {"key", token.key},
        {"span_end", token.span_end},
        {"span_start", token.span_start},
    };
}

Value to_value(const SpeakerProfile& speaker)
{
    return Value::Object{{"dims", to_value(speaker.dims)}, {"speaker_id", speaker.speaker_id}};
}

Value to_value(const Document& doc)
{
    Value::Array speakers;
    for (const auto& s : doc.speakers) {
        speakers.push_back(to_value(s));
    }
    Value::Array sentences;
    for (const auto& s : doc.sentences) {
        Value::Array marks;
        for (const auto& m : s.marks) {
            marks.push_back(to_value(m));
        }
        Value::Array tokens;
        for (const auto& t : s.tokens) {
            tokens.push_back(to_value(t));
        }
        sentences.push_back(Value::Object{
            {"dims", to_value(s.dims)},
            {"index", s.index},
            {"marks", std::move(marks)},
            {"speaker_id", s.speaker_id},
            {"text", s.text},
            {"tokens", std::move(tokens)},
        });
    }
    return Value::Object{
        {"doc_id", doc.doc_id},
        {"global_dims", to_value(doc.global_dims)},
        {"sentences", std::move(sentences)},
        {"speakers", std::move(speakers)},
        {"version", doc.version},
    };
}

std::string to_canonical_file(const Value& value)
{
    std::string out;
    write_canonical(value, out);
    out.push_back('\n');
    return out;
}

std::string serialize_canonical(const Document& doc)
{
    require_valid(doc);
    return to_canonical_file(to_value(doc));
}

DimMap dims_from_value(const Value& node, std::string_view source, std::string_view what)
{
    expect_kind(node, Kind::Object, source, what);
    DimMap dims;
    for (const auto& [key, caption] : node.as_object()) {
        expect_kind(caption, Kind::String, source, std::string(what) + "." + key);
        dims.emplace(key, Caption{caption.as_string()});
    }
    return dims;
}

Mark mark_from_value(const Value& node, std::string_view source)
{
    ObjectReader r(node, source, "mark");
    Mark mark;
    if (const Value* caption = r.optional("caption", Kind::String)) {
        mark.caption = Caption{caption->as_string()};
    }
    const Value& kind = r.required("kind", Kind::String);
    auto parsed = mark_kind_from_string(kind.as_string());
    if (!parsed) {
        throw ParseError::at(source, kind.offset(), ParseErrc::BadSyntax,
                             "unknown mark kind '" + kind.as_string() + "'");
    }
    mark.kind = *parsed;
    mark.position = r.integer("position");
    r.finish();
    return mark;
}

TokenAnnotation token_from_value(const Value& node, std::string_view source)
{
    ObjectReader r(node, source, "token");
    TokenAnnotation token;
    token.caption = Caption{r.string("caption")};
    token.key = r.string("key");
    token.span_end = r.integer("span_end");
    token.span_start = r.integer("span_start");
    r.finish();
    return token;
}

SpeakerProfile speaker_from_value(const Value& node, std::string_view source)
{
    ObjectReader r(node, source, "speaker");
    SpeakerProfile speaker;
    speaker.dims = dims_from_value(r.required("dims", Kind::Object), source, "speaker.dims");
    speaker.speaker_id = r.string("speaker_id");
    r.finish();
    return speaker;
}

namespace {

Sentence sentence_from_value(const Value& node, std::string_view source)
{
    ObjectReader r(node, source, "sentence");
    Sentence s;
    s.dims = dims_from_value(r.required("dims", Kind::Object), source, "sentence.dims");
    s.index = r.integer("index");
    for (const auto& m : r.required("marks", Kind::Array).as_array()) {
        s.marks.push_back(mark_from_value(m, source));
    }
    s.speaker_id = r.string("speaker_id");
    s.text = r.string("text");
    for (const auto& t : r.required("tokens", Kind::Array).as_array()) {
        s.tokens.push_back(token_from_value(t, source));
    }
    r.finish();
    return s;
}

}  // namespace

Document document_from_value(const Value& root, std::string_view source)
{
    ObjectReader r(root, source, "document");
    Document doc;
    doc.doc_id = r.string("doc_id");
    doc.global_dims = dims_from_value(r.required("global_dims", Kind::Object), source, "global_dims");
    for (const auto& s : r.required("sentences", Kind::Array).as_array()) {
        doc.sentences.push_back(sentence_from_value(s, source));
    }
    for (const auto& s : r.required("speakers", Kind::Array).as_array()) {
        doc.speakers.push_back(speaker_from_value(s, source));
    }
    const Value& version = r.required("version", Kind::Integer);
    if (version.as_integer() != kSchemaVersion) {
        throw ParseError::at(source, version.offset(), ParseErrc::BadVersion,
                             "unsupported version " + std::to_string(version.as_integer()));
    }
    doc.version = version.as_integer();
    r.finish();
    return doc;
}

Document parse(std::string_view bytes)
{
    const Value root = parse_value(bytes);
    Document doc = document_from_value(root, bytes);
    auto report = validate(doc);
    if (!report.empty()) {
        const auto& v = report.front();
        throw ParseError::at(bytes, resolve_pointer(root, v.path), ParseErrc::SchemaViolation,
                             v.path + " " + v.message, code_string(v.code));
    }
    return doc;
}

std::string canonicalize(std::string_view bytes)
{
    return serialize_canonical(parse(bytes));
}

}  // namespace gst::wire
