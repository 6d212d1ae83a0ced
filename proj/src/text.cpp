#include "coword/text.hpp"

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/uscript.h>
#include <unicode/utypes.h>

#include "coword/error.hpp"

namespace coword::text {

namespace {

// Returns the number of continuation bytes expected after a lead byte,
// or -1 for an invalid lead.
int utf8_trail_count(unsigned char lead) {
  if (lead < 0x80) return 0;
  if ((lead & 0xE0) == 0xC0) return 1;
  if ((lead & 0xF0) == 0xE0) return 2;
  if ((lead & 0xF8) == 0xF0) return 3;
  return -1;
}

bool decode_one(std::string_view s, std::size_t& i, char32_t& out) {
  unsigned char lead = static_cast<unsigned char>(s[i]);
  int trail = utf8_trail_count(lead);
  if (trail < 0 || i + static_cast<std::size_t>(trail) >= s.size()) return false;
  char32_t cp = 0;
  switch (trail) {
    case 0: cp = lead; break;
    case 1: cp = lead & 0x1F; break;
    case 2: cp = lead & 0x0F; break;
    case 3: cp = lead & 0x07; break;
  }
  for (int k = 1; k <= trail; ++k) {
    unsigned char c = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
    if ((c & 0xC0) != 0x80) return false;
    cp = (cp << 6) | (c & 0x3F);
  }
  // Reject overlong forms, surrogates and out-of-range values.
  static constexpr char32_t kMin[4] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[trail] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
  i += static_cast<std::size_t>(trail) + 1;
  out = cp;
  return true;
}

}  // namespace

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  char32_t cp;
  while (i < s.size()) {
    if (!decode_one(s, i, cp)) return false;
  }
  return true;
}

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  char32_t cp;
  while (i < s.size()) {
    if (!decode_one(s, i, cp)) {
      throw Error(ErrorCode::kInternal, "decode_utf8 called on invalid UTF-8");
    }
    out.push_back(cp);
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size() * 3);
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

std::string nfc(std::string_view s) {
  UErrorCode ec = U_ZERO_ERROR;
  const UNormalizer2* norm = unorm2_getNFCInstance(&ec);
  if (U_FAILURE(ec)) throw Error(ErrorCode::kInternal, "ICU NFC instance unavailable");

  // UTF-8 -> UTF-16
  std::vector<UChar> u16;
  u16.reserve(s.size());
  std::size_t i = 0;
  char32_t cp;
  while (i < s.size()) {
    if (!decode_one(s, i, cp)) {
      throw Error(ErrorCode::kInternal, "nfc called on invalid UTF-8");
    }
    if (cp < 0x10000) {
      u16.push_back(static_cast<UChar>(cp));
    } else {
      cp -= 0x10000;
      u16.push_back(static_cast<UChar>(0xD800 + (cp >> 10)));
      u16.push_back(static_cast<UChar>(0xDC00 + (cp & 0x3FF)));
    }
  }

  std::vector<UChar> out(u16.size() + 16);
  int32_t n = unorm2_normalize(norm, u16.data(), static_cast<int32_t>(u16.size()),
                               out.data(), static_cast<int32_t>(out.size()), &ec);
  if (ec == U_BUFFER_OVERFLOW_ERROR) {
    ec = U_ZERO_ERROR;
    out.resize(static_cast<std::size_t>(n) + 1);
    n = unorm2_normalize(norm, u16.data(), static_cast<int32_t>(u16.size()),
                         out.data(), static_cast<int32_t>(out.size()), &ec);
  }
  if (U_FAILURE(ec)) throw Error(ErrorCode::kInternal, "ICU normalization failed");

  // UTF-16 -> UTF-8
  std::string res;
  res.reserve(s.size());
  for (int32_t k = 0; k < n; ++k) {
    char32_t c = out[static_cast<std::size_t>(k)];
    if (c >= 0xD800 && c <= 0xDBFF && k + 1 < n) {
      char32_t lo = out[static_cast<std::size_t>(k + 1)];
      if (lo >= 0xDC00 && lo <= 0xDFFF) {
        c = 0x10000 + ((c - 0xD800) << 10) + (lo - 0xDC00);
        ++k;
      }
    }
    append_utf8(res, c);
  }
  return res;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  auto is_space = [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
  };
  while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_word_cp(char32_t cp) {
  auto c = static_cast<UChar32>(cp);
  return u_isalpha(c) || u_isdigit(c);
}

Script classify(char32_t cp) {
  auto c = static_cast<UChar32>(cp);
  if (u_isdigit(c)) return Script::kDigit;
  UErrorCode ec = U_ZERO_ERROR;
  UScriptCode sc = uscript_getScript(c, &ec);
  if (U_FAILURE(ec)) return Script::kOther;
  switch (sc) {
    case USCRIPT_LATIN:
      return Script::kLatin;
    case USCRIPT_HAN:
    case USCRIPT_HIRAGANA:
    case USCRIPT_KATAKANA:
    case USCRIPT_HANGUL:
    case USCRIPT_BOPOMOFO:
      return Script::kCjk;
    default:
      return Script::kOther;
  }
}

char32_t to_lower(char32_t cp) {
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

}  // namespace coword::text
