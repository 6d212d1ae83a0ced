#include <doctest.h>

#include "coword/text.hpp"

using namespace coword;

TEST_CASE("utf8 validation") {
  CHECK(text::is_valid_utf8("plain ascii"));
  CHECK(text::is_valid_utf8("兩岸關係 café"));
  CHECK(text::is_valid_utf8(""));
  CHECK_FALSE(text::is_valid_utf8("\xff\xfe"));
  CHECK_FALSE(text::is_valid_utf8("\xc3"));          // truncated sequence
  CHECK_FALSE(text::is_valid_utf8("\xc0\xaf"));      // overlong
  CHECK_FALSE(text::is_valid_utf8("\xed\xa0\x80"));  // surrogate
}

TEST_CASE("decode/encode round trip") {
  std::string s = "WTO加入之後 café 123";
  CHECK(text::encode_utf8(text::decode_utf8(s)) == s);
}

TEST_CASE("nfc merges composed and decomposed forms") {
  std::string composed = "caf\xc3\xa9";          // é
  std::string decomposed = "cafe\xcc\x81";       // e + combining acute
  CHECK(composed != decomposed);
  CHECK(text::nfc(decomposed) == composed);
  CHECK(text::nfc(composed) == composed);
  CHECK(text::nfc("兩岸關係") == "兩岸關係");
}

TEST_CASE("script classification") {
  CHECK(text::classify(U'a') == text::Script::kLatin);
  CHECK(text::classify(U'Z') == text::Script::kLatin);
  CHECK(text::classify(U'é') == text::Script::kLatin);
  CHECK(text::classify(U'中') == text::Script::kCjk);
  CHECK(text::classify(U'が') == text::Script::kCjk);   // hiragana
  CHECK(text::classify(U'한') == text::Script::kCjk);   // hangul
  CHECK(text::classify(U'7') == text::Script::kDigit);
  CHECK(text::classify(U'α') == text::Script::kOther);  // greek
  CHECK(text::classify(U'ж') == text::Script::kOther);  // cyrillic
  CHECK_FALSE(text::is_word_cp(U'!'));
  CHECK_FALSE(text::is_word_cp(U' '));
  CHECK(text::is_word_cp(U'中'));
}

TEST_CASE("trim and ascii_lower") {
  CHECK(text::trim("  a b \t\r\n") == "a b");
  CHECK(text::trim("") == "");
  CHECK(text::trim(" \t ") == "");
  CHECK(text::ascii_lower("TiTLe") == "title");
}
