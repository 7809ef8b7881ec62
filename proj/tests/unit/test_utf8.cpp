#include <doctest.h>

#include "gst/fnv.hpp"
#include "gst/utf8.hpp"

using namespace gst;

TEST_SUITE("utf8")
{
    TEST_CASE("well-formedness")
    {
        CHECK(utf8::is_valid(""));
        CHECK(utf8::is_valid("plain ascii"));
        CHECK(utf8::is_valid("café テンポ 😀"));
        CHECK(utf8::first_invalid("ab\xff") == 2);
        CHECK(utf8::first_invalid("\xc0\xaf") == 0);          // overlong '/'
        CHECK(utf8::first_invalid("x\xed\xa0\x80") == 1);     // surrogate U+D800
        CHECK(utf8::first_invalid("\xf4\x90\x80\x80") == 0);  // above U+10FFFF
        CHECK(utf8::first_invalid("ok\xe3\x83") == 2);        // truncated
    }

    TEST_CASE("scalar arithmetic")
    {
        const std::string text = "a😀bテ";
        CHECK(utf8::scalar_count(text) == 4);
        CHECK(utf8::byte_offset(text, 0) == 0);
        CHECK(utf8::byte_offset(text, 1) == 1);
        CHECK(utf8::byte_offset(text, 2) == 5);
        CHECK(utf8::byte_offset(text, 4) == text.size());
        CHECK(utf8::head(text, 2) == "a😀");
        CHECK(utf8::head(text, 10) == text);
        CHECK(utf8::tail(text, 2) == "bテ");
        CHECK(utf8::tail(text, 0).empty());
        CHECK(utf8::encode(utf8::decode(text)) == text);
    }

    TEST_CASE("trim uses Unicode white space")
    {
        CHECK(utf8::trim("  x y\t\n") == "x y");
        CHECK(utf8::trim("　 x ") == "x");
        CHECK(utf8::trim(" 　 ").empty());
        CHECK_FALSE(utf8::is_white_space(U'x'));
        CHECK(utf8::is_white_space(U'\u0085'));
    }
}

TEST_SUITE("utf8")
{
    TEST_CASE("FNV-1a 64 reference vectors")
    {
        CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
        CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
        CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    }

    TEST_CASE("scale_hash stays in range")
    {
        CHECK(scale_hash(0, 10) == 0);
        CHECK(scale_hash(~0ULL, 10) == 9);
        CHECK(scale_hash(1ULL << 63, 10) == 5);
    }
}
