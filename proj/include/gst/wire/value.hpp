#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gst::wire {

enum class ParseErrc { BadUtf8, BadSyntax, BadVersion, SchemaViolation };

std::string_view to_string(ParseErrc code) noexcept;

/// First failure found while reading wire bytes. Positions are 1-based
/// line/column (column counts Unicode scalars) plus a 0-based byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrc code, std::size_t byte_offset, std::size_t line, std::size_t column,
               std::string message, std::string schema_code = {});

    /// Derives line and column from `source`.
    static ParseError at(std::string_view source, std::size_t byte_offset, ParseErrc code,
                         std::string message, std::string schema_code = {});

    [[nodiscard]] ParseErrc code() const noexcept { return code_; }
    [[nodiscard]] std::size_t byte_offset() const noexcept { return byte_offset_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }
    /// "E00x" for SchemaViolation, empty otherwise.
    [[nodiscard]] const std::string& schema_code() const noexcept { return schema_code_; }
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

    /// "<code> <line>:<column> <message>" where code is the schema code when
    /// present and the ParseErrc name otherwise.
    [[nodiscard]] std::string diagnostic() const;

private:
    ParseErrc code_;
    std::size_t byte_offset_;
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
    std::string schema_code_;
};

/// A node of the JSON subset used on the wire: booleans, non-negative
/// integers, strings, arrays and objects. Parsed nodes remember where they
/// started in the source.
class Value {
public:
    using Array = std::vector<Value>;
    using Object = std::map<std::string, Value, std::less<>>;
    enum class Kind { Bool, Integer, String, Array, Object };

    Value() : data_(Object{}) {}
    Value(bool b) : data_(b) {}
    template <std::unsigned_integral T>
        requires(!std::same_as<T, bool>)
    Value(T n) : data_(static_cast<std::uint64_t>(n))
    {
    }
    Value(std::string s) : data_(std::move(s)) {}
    Value(std::string_view s) : data_(std::string(s)) {}
    Value(const char* s) : data_(std::string(s)) {}
    Value(Array a) : data_(std::move(a)) {}
    Value(Object o) : data_(std::move(o)) {}

    [[nodiscard]] Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }
    [[nodiscard]] bool is(Kind k) const noexcept { return kind() == k; }

    [[nodiscard]] bool as_bool() const { return std::get<bool>(data_); }
    [[nodiscard]] std::uint64_t as_integer() const { return std::get<std::uint64_t>(data_); }
    [[nodiscard]] const std::string& as_string() const { return std::get<std::string>(data_); }
    [[nodiscard]] const Array& as_array() const { return std::get<Array>(data_); }
    [[nodiscard]] const Object& as_object() const { return std::get<Object>(data_); }
    [[nodiscard]] Array& as_array() { return std::get<Array>(data_); }
    [[nodiscard]] Object& as_object() { return std::get<Object>(data_); }

    /// Byte offset of the node's first byte in the parsed source.
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }
    /// Byte offset of the member's key string; the node's own offset when
    /// the key was not parsed.
    [[nodiscard]] std::size_t key_offset(std::string_view key) const;

    friend bool operator==(const Value& a, const Value& b) { return a.data_ == b.data_; }

private:
    friend class Parser;

    std::variant<bool, std::uint64_t, std::string, Array, Object> data_;
    std::size_t offset_ = 0;
    std::map<std::string, std::size_t, std::less<>> key_offsets_;
};

std::string_view to_string(Value::Kind kind) noexcept;

/// Parses exactly one value surrounded by optional insignificant whitespace.
Value parse_value(std::string_view bytes);

/// Canonical form: sorted keys, no whitespace, minimal escapes. No trailing
/// newline; callers writing files append one.
void write_canonical(const Value& value, std::string& out);
std::string to_canonical(const Value& value);

/// Escapes and quotes a string exactly as write_canonical does.
void write_string(std::string_view text, std::string& out);

/// Field access with positioned errors, for decoding typed records from a
/// parsed object. Call finish() to reject fields that were never read.
class ObjectReader {
public:
    ObjectReader(const Value& value, std::string_view source, std::string_view what);

    const Value& required(std::string_view key, Value::Kind kind);
    const Value* optional(std::string_view key, Value::Kind kind);

    std::uint64_t integer(std::string_view key) { return required(key, Value::Kind::Integer).as_integer(); }
    const std::string& string(std::string_view key) { return required(key, Value::Kind::String).as_string(); }
    bool boolean(std::string_view key) { return required(key, Value::Kind::Bool).as_bool(); }

    void finish();

    [[nodiscard]] const Value& value() const noexcept { return value_; }

private:
    const Value& value_;
    std::string_view source_;
    std::string what_;
    std::vector<std::string_view> seen_;
};

/// Raises BadSyntax at `node` unless it has the expected kind.
void expect_kind(const Value& node, Value::Kind kind, std::string_view source, std::string_view what);

/// Offset of the node addressed by a JSON pointer, falling back to the
/// deepest existing ancestor (object members resolve to their key).
std::size_t resolve_pointer(const Value& root, std::string_view pointer);

}  // namespace gst::wire
