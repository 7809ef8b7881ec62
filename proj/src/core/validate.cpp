#include "gst/validate.hpp"

#include <algorithm>
#include <set>

#include "gst/error.hpp"
#include "gst/registry.hpp"
#include "gst/utf8.hpp"

namespace gst {

std::string code_string(ViolationCode code)
{
    const int n = static_cast<int>(code);
    return n < 10 ? "E00" + std::to_string(n) : "E0" + std::to_string(n);
}

std::string pointer_append(std::string path, std::string_view token)
{
    path.push_back('/');
    for (char c : token) {
        if (c == '~') {
            path += "~0";
        } else if (c == '/') {
            path += "~1";
        } else {
            path.push_back(c);
        }
    }
    return path;
}

bool is_valid_caption(std::string_view text, std::size_t caption_max) noexcept
{
    if (!utf8::is_valid(text)) {
        return false;
    }
    if (std::ranges::any_of(text, [](char c) { return static_cast<unsigned char>(c) < 0x20; })) {
        return false;
    }
    return !utf8::trim(text).empty() && utf8::scalar_count(text) <= caption_max;
}

namespace {

class Validator {
public:
    explicit Validator(const Document& doc) : doc_(doc) {}

    ValidationReport run()
    {
        check_identity();
        check_global();
        check_speakers();
        check_sentences();
        return std::move(report_);
    }

private:
    void add(ViolationCode code, std::string path, std::string message)
    {
        report_.push_back({code, std::move(path), std::move(message)});
    }

    void check_caption(const Caption& caption, std::size_t max, const std::string& path)
    {
        if (!is_valid_caption(caption.text, max)) {
            add(ViolationCode::BadCaption, path,
                "caption must be non-empty, free of control characters and at most " +
                    std::to_string(max) + " scalars");
        }
    }

    // Reports keys outside `allowed` as E001 and checks the remaining captions.
    void check_dims(const DimMap& dims, Cardinality allowed, const std::string& base)
    {
        for (const auto& [key, caption] : dims) {
            const auto path = pointer_append(base, key);
            const auto* d = registry().find(key);
            if (d == nullptr) {
                add(ViolationCode::UnknownKey, path, "unknown dimension key '" + key + "'");
                continue;
            }
            if (d->cardinality != allowed) {
                add(ViolationCode::UnknownKey, path,
                    "key '" + key + "' is " + std::string(to_string(d->cardinality)) +
                        ", not allowed here");
                continue;
            }
            check_caption(caption, d->caption_max, path);
        }
    }

    void require_instruct(const DimMap& dims, Cardinality cardinality, const std::string& base)
    {
        for (auto key : registry().keys(Stream::Instruct, cardinality)) {
            if (!dims.contains(key)) {
                add(ViolationCode::MissingInstruct, pointer_append(base, key),
                    "missing Instruct dimension '" + std::string(key) + "'");
            }
        }
    }

    void check_identity()
    {
        if (doc_.version != kSchemaVersion) {
            add(ViolationCode::BadIdentity, "/version",
                "unsupported version " + std::to_string(doc_.version));
        }
        if (!is_valid_doc_id(doc_.doc_id)) {
            add(ViolationCode::BadIdentity, "/doc_id",
                "doc_id must be 1-128 characters from [A-Za-z0-9._-]");
        }
    }

    void check_global()
    {
        check_dims(doc_.global_dims, Cardinality::PerDocument, "/global_dims");
        require_instruct(doc_.global_dims, Cardinality::PerDocument, "/global_dims");
    }

    void check_speakers()
    {
        std::set<std::string_view> seen;
        for (std::size_t i = 0; i < doc_.speakers.size(); ++i) {
            const auto& speaker = doc_.speakers[i];
            const auto base = "/speakers/" + std::to_string(i);
            if (!is_valid_speaker_id(speaker.speaker_id)) {
                add(ViolationCode::BadSpeaker, base + "/speaker_id",
                    "speaker_id must match spk[0-9]+");
            } else if (!seen.insert(speaker.speaker_id).second) {
                add(ViolationCode::BadSpeaker, base + "/speaker_id",
                    "duplicate speaker_id '" + speaker.speaker_id + "'");
            }
            check_dims(speaker.dims, Cardinality::PerSpeaker, base + "/dims");
            require_instruct(speaker.dims, Cardinality::PerSpeaker, base + "/dims");
        }
        declared_ = std::move(seen);
    }

    void check_sentences()
    {
        for (std::size_t i = 0; i < doc_.sentences.size(); ++i) {
            check_sentence(i, doc_.sentences[i]);
        }
    }

    void check_sentence(std::size_t i, const Sentence& s)
    {
        const auto base = "/sentences/" + std::to_string(i);
        if (s.index != i) {
            add(ViolationCode::BadIndexSequence, base + "/index",
                "expected index " + std::to_string(i) + ", found " + std::to_string(s.index));
        }
        if (!declared_.contains(s.speaker_id)) {
            add(ViolationCode::DanglingSpeaker, base + "/speaker_id",
                "undeclared speaker '" + s.speaker_id + "'");
        }

        const bool text_ok = !s.text.empty() && utf8::is_valid(s.text);
        if (!text_ok) {
            add(ViolationCode::BadCaption, base + "/text", "text must be non-empty UTF-8");
        }
        const std::size_t length = text_ok ? utf8::scalar_count(s.text) : 0;

        for (std::size_t j = 0; j < s.marks.size(); ++j) {
            check_mark(s.marks[j], length, base + "/marks/" + std::to_string(j));
        }
        check_dims(s.dims, Cardinality::PerSentence, base + "/dims");
        check_tokens(s, length, base);
    }

    void check_mark(const Mark& mark, std::size_t length, const std::string& path)
    {
        if (mark.position > length) {
            add(ViolationCode::BadMark, path, "mark position beyond end of text");
        }
        const bool wants_caption = mark.kind != MarkKind::Interruption;
        if (wants_caption != mark.caption.has_value()) {
            add(ViolationCode::BadMark, path,
                wants_caption ? "mark requires a caption" : "interruption marks carry no caption");
        } else if (mark.caption) {
            check_caption(*mark.caption, kSentenceCaptionMax, path + "/caption");
        }
    }

    void check_tokens(const Sentence& s, std::size_t length, const std::string& base)
    {
        // (key, start, end, position in list) for spans that are themselves valid
        std::vector<std::tuple<std::string_view, std::size_t, std::size_t, std::size_t>> spans;
        for (std::size_t j = 0; j < s.tokens.size(); ++j) {
            const auto& t = s.tokens[j];
            const auto path = base + "/tokens/" + std::to_string(j);
            const auto* d = registry().find(t.key);
            if (d == nullptr || d->layer != Layer::Token) {
                add(ViolationCode::UnknownKey, path + "/key",
                    "'" + t.key + "' is not a Token-layer dimension");
            }
            const bool span_ok = t.span_start < t.span_end && t.span_end <= length;
            if (!span_ok) {
                add(ViolationCode::BadSpan, path,
                    "span [" + std::to_string(t.span_start) + ", " + std::to_string(t.span_end) +
                        ") outside text of length " + std::to_string(length));
            }
            check_caption(t.caption, d ? d->caption_max : kTokenCaptionMax, path + "/caption");
            if (span_ok) {
                spans.emplace_back(t.key, t.span_start, t.span_end, j);
            }
        }

        std::ranges::sort(spans);
        std::size_t reach = 0;  // furthest end seen so far for the current key
        for (std::size_t k = 0; k < spans.size(); ++k) {
            const auto& [key, start, end, j] = spans[k];
            if (k > 0 && std::get<0>(spans[k - 1]) == key && start < reach) {
                add(ViolationCode::OverlappingSpans, base + "/tokens/" + std::to_string(j),
                    "overlapping spans for '" + std::string(key) + "'");
            }
            reach = (k > 0 && std::get<0>(spans[k - 1]) == key) ? std::max(reach, end) : end;
        }
    }

    const Document& doc_;
    std::set<std::string_view> declared_;
    ValidationReport report_;
};

}  // namespace

ValidationReport validate(const Document& doc)
{
    return Validator(doc).run();
}

void require_valid(const Document& doc)
{
    auto report = validate(doc);
    if (!report.empty()) {
        const auto& v = report.front();
        throw Error(Errc::InvalidDocument, code_string(v.code) + " " + v.path + " " + v.message);
    }
}

}  // namespace gst
