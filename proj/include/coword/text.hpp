#ifndef COWORD_TEXT_HPP
#define COWORD_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coword::text {

// Script class of a single code point. Only letters and digits are
// classified; separators never reach these values.
enum class Script { kLatin, kCjk, kDigit, kOther };

bool is_valid_utf8(std::string_view s);

// Decodes valid UTF-8. Throws Error(kInternal) on invalid input; callers
// validate raw input first and report the offending row themselves.
std::vector<char32_t> decode_utf8(std::string_view s);

std::string encode_utf8(const std::vector<char32_t>& cps);
void append_utf8(std::string& out, char32_t cp);

// Canonical composition (NFC). Input must be valid UTF-8.
std::string nfc(std::string_view s);

std::string trim(std::string_view s);

// ASCII only; used for case-insensitive header/key matching.
std::string ascii_lower(std::string_view s);

bool is_word_cp(char32_t cp);   // letter or digit
Script classify(char32_t cp);   // pre: is_word_cp(cp)
char32_t to_lower(char32_t cp);

}  // namespace coword::text

#endif  // COWORD_TEXT_HPP
