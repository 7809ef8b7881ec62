#include "gst/wire/marked_text.hpp"

#include <algorithm>

#include "gst/error.hpp"
#include "gst/utf8.hpp"
#include "gst/wire/value.hpp"

namespace gst::wire {

namespace {

class MarkedTextParser {
public:
    explicit MarkedTextParser(std::string_view src) : src_(src) {}

    MarkedText run()
    {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '\\' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == '[' || src_[pos_ + 1] == '\\')) {
                emit_byte(src_[pos_ + 1]);
                pos_ += 2;
            } else if (c == '[' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '[') {
                group();
            } else {
                emit_scalar();
            }
        }
        return std::move(out_);
    }

private:
    [[noreturn]] void fail(std::size_t at, std::string message) const
    {
        throw ParseError::at(src_, at, ParseErrc::BadSyntax, std::move(message));
    }

    void emit_byte(char c)
    {
        out_.plain.push_back(c);
        ++length_;
    }

    void emit_scalar()
    {
        const std::size_t start = pos_;
        if (!utf8::decode_one(src_, pos_)) {
            throw ParseError::at(src_, start, ParseErrc::BadUtf8, "ill-formed UTF-8");
        }
        out_.plain.append(src_.substr(start, pos_ - start));
        ++length_;
    }

    void group()
    {
        const std::size_t open = pos_;
        pos_ += 2;
        std::size_t kind_end = pos_;
        while (kind_end < src_.size() && src_[kind_end] != '|' && src_.substr(kind_end, 2) != "]]") {
            ++kind_end;
        }
        if (kind_end >= src_.size()) {
            fail(open, "unterminated '[['");
        }
        const std::string_view name = src_.substr(pos_, kind_end - pos_);
        auto kind = mark_kind_from_string(name);
        if (!kind) {
            fail(pos_, "unknown mark kind '" + std::string(name) + "'");
        }

        Mark mark{length_, *kind, std::nullopt};
        pos_ = kind_end;
        if (src_[pos_] == '|') {
            ++pos_;
            mark.caption = Caption{caption(open)};
        }
        pos_ += 2;  // "]]"

        if (mark.kind == MarkKind::Interruption && mark.caption) {
            fail(open, "interruption marks take no caption");
        }
        if (mark.kind != MarkKind::Interruption && (!mark.caption || mark.caption->text.empty())) {
            fail(open, std::string(to_string(mark.kind)) + " mark requires a caption");
        }
        out_.marks.push_back(std::move(mark));
    }

    std::string caption(std::size_t open)
    {
        std::string text;
        while (pos_ < src_.size()) {
            if (src_.substr(pos_, 2) == "]]") {
                return text;
            }
            if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) {
                ++pos_;
            }
            const std::size_t start = pos_;
            if (!utf8::decode_one(src_, pos_)) {
                throw ParseError::at(src_, start, ParseErrc::BadUtf8, "ill-formed UTF-8");
            }
            text.append(src_.substr(start, pos_ - start));
        }
        fail(open, "unterminated '[['");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t length_ = 0;  // scalars emitted into plain
    MarkedText out_;
};

void render_mark(const Mark& mark, std::string& out)
{
    out += "[[";
    out += to_string(mark.kind);
    if (mark.caption) {
        out.push_back('|');
        for (char c : mark.caption->text) {
            if (c == '\\' || c == ']') {
                out.push_back('\\');
            }
            out.push_back(c);
        }
    }
    out += "]]";
}

}  // namespace

MarkedText parse_marked_text(std::string_view authored)
{
    return MarkedTextParser(authored).run();
}

std::string render_marked_text(std::string_view plain, std::span<const Mark> marks)
{
    const std::vector<char32_t> scalars = utf8::decode(plain);
    std::vector<Mark> sorted(marks.begin(), marks.end());
    std::ranges::stable_sort(sorted, {}, &Mark::position);
    for (const auto& m : sorted) {
        if (m.position > scalars.size()) {
            throw Error(Errc::BadMark, "mark position " + std::to_string(m.position) +
                                           " beyond text of length " + std::to_string(scalars.size()));
        }
        const bool wants_caption = m.kind != MarkKind::Interruption;
        if (wants_caption != m.caption.has_value() || (m.caption && m.caption->text.empty())) {
            throw Error(Errc::BadMark, "caption does not match mark kind " + std::string(to_string(m.kind)));
        }
    }

    std::string out;
    out.reserve(plain.size() + 16 * sorted.size());
    std::size_t next_mark = 0;
    auto marks_at = [&](std::size_t position) {
        return next_mark < sorted.size() && sorted[next_mark].position == position;
    };
    for (std::size_t i = 0; i <= scalars.size(); ++i) {
        while (marks_at(i)) {
            render_mark(sorted[next_mark++], out);
        }
        if (i == scalars.size()) {
            break;
        }
        const char32_t c = scalars[i];
        if (c == '\\') {
            out += "\\\\";
        } else if (c == '[') {
            // Escape a bracket whose next output byte is another bracket.
            const bool bracket_follows =
                marks_at(i + 1) || (i + 1 < scalars.size() && scalars[i + 1] == '[');
            out += bracket_follows ? "\\[" : "[";
        } else {
            utf8::append(out, c);
        }
    }
    return out;
}

}  // namespace gst::wire
