#include "gst/wire/value.hpp"

#include <algorithm>

#include "gst/utf8.hpp"

namespace gst::wire {

namespace {

constexpr std::size_t kMaxDepth = 64;

}  // namespace

std::string_view to_string(ParseErrc code) noexcept
{
    switch (code) {
    case ParseErrc::BadUtf8: return "BadUtf8";
    case ParseErrc::BadSyntax: return "BadSyntax";
    case ParseErrc::BadVersion: return "BadVersion";
    case ParseErrc::SchemaViolation: return "SchemaViolation";
    }
    return "?";
}

std::string_view to_string(Value::Kind kind) noexcept
{
    switch (kind) {
    case Value::Kind::Bool: return "boolean";
    case Value::Kind::Integer: return "integer";
    case Value::Kind::String: return "string";
    case Value::Kind::Array: return "array";
    case Value::Kind::Object: return "object";
    }
    return "?";
}

ParseError::ParseError(ParseErrc code, std::size_t byte_offset, std::size_t line, std::size_t column,
                       std::string message, std::string schema_code)
    : std::runtime_error(std::string(to_string(code)) + " at byte " + std::to_string(byte_offset) +
                         " (" + std::to_string(line) + ":" + std::to_string(column) + "): " + message),
      code_(code),
      byte_offset_(byte_offset),
      line_(line),
      column_(column),
      detail_(std::move(message)),
      schema_code_(std::move(schema_code))
{
}

ParseError ParseError::at(std::string_view source, std::size_t byte_offset, ParseErrc code,
                          std::string message, std::string schema_code)
{
    byte_offset = std::min(byte_offset, source.size());
    std::size_t line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < byte_offset; ++i) {
        if (source[i] == '\n') {
            ++line;
            line_start = i + 1;
        }
    }
    std::size_t column = 1;
    for (std::size_t i = line_start; i < byte_offset; ++i) {
        if ((static_cast<unsigned char>(source[i]) & 0xC0) != 0x80) {
            ++column;
        }
    }
    return ParseError(code, byte_offset, line, column, std::move(message), std::move(schema_code));
}

std::string ParseError::diagnostic() const
{
    const std::string code = schema_code_.empty() ? std::string(to_string(code_)) : schema_code_;
    return code + " " + std::to_string(line_) + ":" + std::to_string(column_) + " " + detail_;
}

std::size_t Value::key_offset(std::string_view key) const
{
    auto it = key_offsets_.find(key);
    return it == key_offsets_.end() ? offset_ : it->second;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Value run()
    {
        skip_ws();
        if (pos_ >= src_.size()) {
            fail(ParseErrc::BadSyntax, "expected a value");
        }
        Value v = value(0);
        skip_ws();
        if (pos_ != src_.size()) {
            fail(ParseErrc::BadSyntax, "trailing bytes after top-level value");
        }
        return v;
    }

private:
    [[noreturn]] void fail(ParseErrc code, std::string message) const
    {
        throw ParseError::at(src_, pos_, code, std::move(message));
    }

    [[noreturn]] void fail_at(std::size_t offset, ParseErrc code, std::string message) const
    {
        throw ParseError::at(src_, offset, code, std::move(message));
    }

    void skip_ws() noexcept
    {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
                break;
            }
            ++pos_;
        }
    }

    Value value(std::size_t depth)
    {
        if (depth > kMaxDepth) {
            fail(ParseErrc::BadSyntax, "nesting too deep");
        }
        const std::size_t start = pos_;
        Value v;
        switch (pos_ < src_.size() ? src_[pos_] : '\0') {
        case '{': v = object(depth); break;
        case '[': v = array(depth); break;
        case '"': v = Value(string()); break;
        case 't': literal("true"); v = Value(true); break;
        case 'f': literal("false"); v = Value(false); break;
        default:
            if (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
                v = Value(number());
                break;
            }
            if (pos_ >= src_.size()) {
                fail(ParseErrc::BadSyntax, "unexpected end of input");
            }
            if (std::size_t probe = pos_; static_cast<unsigned char>(src_[pos_]) >= 0x80 &&
                                          !utf8::decode_one(src_, probe)) {
                fail(ParseErrc::BadUtf8, "ill-formed UTF-8");
            }
            fail(ParseErrc::BadSyntax, "unexpected character");
        }
        v.offset_ = start;
        return v;
    }

    void literal(std::string_view word)
    {
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (pos_ >= src_.size() || src_[pos_] != word[i]) {
                fail(ParseErrc::BadSyntax, "invalid literal");
            }
            ++pos_;
        }
    }

    std::uint64_t number()
    {
        const std::size_t start = pos_;
        std::uint64_t n = 0;
        while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
            const auto digit = static_cast<std::uint64_t>(src_[pos_] - '0');
            if (pos_ > start && src_[start] == '0') {
                fail_at(start, ParseErrc::BadSyntax, "leading zero");
            }
            if (n > (UINT64_MAX - digit) / 10) {
                fail_at(start, ParseErrc::BadSyntax, "integer out of range");
            }
            n = n * 10 + digit;
            ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
            fail(ParseErrc::BadSyntax, "only non-negative integers are allowed");
        }
        return n;
    }

    unsigned hex4()
    {
        unsigned v = 0;
        for (int i = 0; i < 4; ++i) {
            if (pos_ >= src_.size()) {
                fail(ParseErrc::BadSyntax, "truncated \\u escape");
            }
            const char c = src_[pos_];
            unsigned d = 0;
            if (c >= '0' && c <= '9') d = static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f') d = static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') d = static_cast<unsigned>(c - 'A' + 10);
            else fail(ParseErrc::BadSyntax, "bad hex digit in \\u escape");
            v = v * 16 + d;
            ++pos_;
        }
        return v;
    }

    std::string string()
    {
        ++pos_;  // opening quote
        std::string out;
        while (true) {
            if (pos_ >= src_.size()) {
                fail(ParseErrc::BadSyntax, "unterminated string");
            }
            const auto c = static_cast<unsigned char>(src_[pos_]);
            if (c == '"') {
                ++pos_;
                return out;
            }
            if (c < 0x20) {
                fail(ParseErrc::BadSyntax, "raw control character in string");
            }
            if (c == '\\') {
                escape(out);
                continue;
            }
            if (c < 0x80) {
                out.push_back(static_cast<char>(c));
                ++pos_;
                continue;
            }
            const std::size_t start = pos_;
            if (!utf8::decode_one(src_, pos_)) {
                fail(ParseErrc::BadUtf8, "ill-formed UTF-8");
            }
            out.append(src_.substr(start, pos_ - start));
        }
    }

    void escape(std::string& out)
    {
        const std::size_t start = pos_;
        ++pos_;
        if (pos_ >= src_.size()) {
            fail(ParseErrc::BadSyntax, "unterminated escape");
        }
        const char e = src_[pos_++];
        switch (e) {
        case '"': out.push_back('"'); return;
        case '\\': out.push_back('\\'); return;
        case '/': out.push_back('/'); return;
        case 'b': out.push_back('\b'); return;
        case 'f': out.push_back('\f'); return;
        case 'n': out.push_back('\n'); return;
        case 'r': out.push_back('\r'); return;
        case 't': out.push_back('\t'); return;
        case 'u': break;
        default: fail_at(start, ParseErrc::BadSyntax, "unknown escape");
        }
        char32_t cp = hex4();
        if (cp >= 0xDC00 && cp <= 0xDFFF) {
            fail_at(start, ParseErrc::BadSyntax, "lone low surrogate");
        }
        if (cp >= 0xD800 && cp <= 0xDBFF) {
            if (src_.substr(pos_, 2) != "\\u") {
                fail_at(start, ParseErrc::BadSyntax, "lone high surrogate");
            }
            pos_ += 2;
            const unsigned low = hex4();
            if (low < 0xDC00 || low > 0xDFFF) {
                fail_at(start, ParseErrc::BadSyntax, "invalid surrogate pair");
            }
            cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
        }
        utf8::append(out, cp);
    }

    Value array(std::size_t depth)
    {
        ++pos_;
        Value::Array items;
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == ']') {
            ++pos_;
            return Value(std::move(items));
        }
        while (true) {
            skip_ws();
            items.push_back(value(depth + 1));
            skip_ws();
            if (pos_ < src_.size() && src_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (pos_ < src_.size() && src_[pos_] == ']') {
                ++pos_;
                return Value(std::move(items));
            }
            fail(ParseErrc::BadSyntax, "expected ',' or ']'");
        }
    }

    Value object(std::size_t depth)
    {
        ++pos_;
        Value result{Value::Object{}};
        auto& members = result.as_object();
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '}') {
            ++pos_;
            return result;
        }
        while (true) {
            skip_ws();
            if (pos_ >= src_.size() || src_[pos_] != '"') {
                fail(ParseErrc::BadSyntax, "expected a string key");
            }
            const std::size_t key_start = pos_;
            std::string key = string();
            if (members.contains(key)) {
                fail_at(key_start, ParseErrc::BadSyntax, "duplicate key '" + key + "'");
            }
            skip_ws();
            if (pos_ >= src_.size() || src_[pos_] != ':') {
                fail(ParseErrc::BadSyntax, "expected ':'");
            }
            ++pos_;
            skip_ws();
            result.key_offsets_.emplace(key, key_start);
            members.emplace(std::move(key), value(depth + 1));
            skip_ws();
            if (pos_ < src_.size() && src_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (pos_ < src_.size() && src_[pos_] == '}') {
                ++pos_;
                return result;
            }
            fail(ParseErrc::BadSyntax, "expected ',' or '}'");
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

Value parse_value(std::string_view bytes)
{
    return Parser(bytes).run();
}

void write_string(std::string_view text, std::string& out)
{
    static constexpr char kHex[] = "0123456789abcdef";
    out.push_back('"');
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c < 0x20) {
                out += "\\u00";
                out.push_back(kHex[c >> 4]);
                out.push_back(kHex[c & 0xF]);
            } else {
                out.push_back(ch);
            }
        }
    }
    out.push_back('"');
}

void write_canonical(const Value& value, std::string& out)
{
    switch (value.kind()) {
    case Value::Kind::Bool:
        out += value.as_bool() ? "true" : "false";
        break;
    case Value::Kind::Integer:
        out += std::to_string(value.as_integer());
        break;
    case Value::Kind::String:
        write_string(value.as_string(), out);
        break;
    case Value::Kind::Array: {
        out.push_back('[');
        bool first = true;
        for (const auto& item : value.as_array()) {
            if (!first) out.push_back(',');
            first = false;
            write_canonical(item, out);
        }
        out.push_back(']');
        break;
    }
    case Value::Kind::Object: {
        // std::map orders keys bytewise, which for UTF-8 is scalar order.
        out.push_back('{');
        bool first = true;
        for (const auto& [key, member] : value.as_object()) {
            if (!first) out.push_back(',');
            first = false;
            write_string(key, out);
            out.push_back(':');
            write_canonical(member, out);
        }
        out.push_back('}');
        break;
    }
    }
}

std::string to_canonical(const Value& value)
{
    std::string out;
    write_canonical(value, out);
    return out;
}

void expect_kind(const Value& node, Value::Kind kind, std::string_view source, std::string_view what)
{
    if (!node.is(kind)) {
        throw ParseError::at(source, node.offset(), ParseErrc::BadSyntax,
                             std::string(what) + " must be " + std::string(to_string(kind)));
    }
}

ObjectReader::ObjectReader(const Value& value, std::string_view source, std::string_view what)
    : value_(value), source_(source), what_(what)
{
    expect_kind(value, Value::Kind::Object, source, what);
}

const Value* ObjectReader::optional(std::string_view key, Value::Kind kind)
{
    const auto& members = value_.as_object();
    auto it = members.find(key);
    if (it == members.end()) {
        return nullptr;
    }
    seen_.push_back(it->first);
    expect_kind(it->second, kind, source_, what_ + "." + std::string(key));
    return &it->second;
}

const Value& ObjectReader::required(std::string_view key, Value::Kind kind)
{
    const Value* v = optional(key, kind);
    if (v == nullptr) {
        throw ParseError::at(source_, value_.offset(), ParseErrc::BadSyntax,
                             what_ + " is missing field '" + std::string(key) + "'");
    }
    return *v;
}

void ObjectReader::finish()
{
    std::size_t first = SIZE_MAX;
    std::string_view name;
    for (const auto& [key, member] : value_.as_object()) {
        if (std::ranges::find(seen_, std::string_view(key)) == seen_.end()) {
            const std::size_t at = value_.key_offset(key);
            if (at < first) {
                first = at;
                name = key;
            }
        }
    }
    if (first != SIZE_MAX) {
        throw ParseError::at(source_, first, ParseErrc::BadSyntax,
                             what_ + " has unknown field '" + std::string(name) + "'");
    }
}

std::size_t resolve_pointer(const Value& root, std::string_view pointer)
{
    const Value* node = &root;
    std::size_t offset = root.offset();
    while (!pointer.empty() && pointer.front() == '/') {
        pointer.remove_prefix(1);
        const std::size_t cut = std::min(pointer.find('/'), pointer.size());
        std::string token;
        for (std::size_t i = 0; i < cut; ++i) {
            if (pointer[i] == '~' && i + 1 < cut) {
                token.push_back(pointer[i + 1] == '1' ? '/' : '~');
                ++i;
            } else {
                token.push_back(pointer[i]);
            }
        }
        pointer.remove_prefix(cut);

        if (node->is(Value::Kind::Object)) {
            const auto& members = node->as_object();
            auto it = members.find(token);
            if (it == members.end()) {
                break;
            }
            offset = node->key_offset(token);
            node = &it->second;
        } else if (node->is(Value::Kind::Array)) {
            const auto& items = node->as_array();
            std::size_t index = 0;
            bool numeric = !token.empty();
            for (char c : token) {
                numeric = numeric && c >= '0' && c <= '9';
                index = index * 10 + static_cast<std::size_t>(c - '0');
            }
            if (!numeric || index >= items.size()) {
                break;
            }
            node = &items[index];
            offset = node->offset();
        } else {
            break;
        }
    }
    return offset;
}

}  // namespace gst::wire
