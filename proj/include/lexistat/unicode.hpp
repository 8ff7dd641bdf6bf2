#pragma once

#include <string>
#include <string_view>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "lexistat/error.hpp"

// Thin wrappers over ICU: UTF-8 validation, canonical composition, case
// folding and code point conversion.
namespace lexistat::unicode {

inline bool is_valid_utf8(std::string_view text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

inline void require_utf8(std::string_view text, std::size_t line = 0) {
  if (!is_valid_utf8(text)) fail(ErrorKind::Encoding, "input is not valid UTF-8", line);
}

inline std::u32string to_code_points(const icu::UnicodeString& s) {
  std::u32string out;
  out.reserve(static_cast<std::size_t>(s.length()));
  for (int32_t i = 0; i < s.length(); i = s.moveIndex32(i, 1)) {
    out.push_back(static_cast<char32_t>(s.char32At(i)));
  }
  return out;
}

inline std::u32string to_code_points(std::string_view utf8) {
  require_utf8(utf8);
  return to_code_points(icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size()))));
}

inline std::string to_utf8(std::u32string_view code_points) {
  icu::UnicodeString s;
  for (char32_t c : code_points) s.append(static_cast<UChar32>(c));
  std::string out;
  s.toUTF8String(out);
  return out;
}

inline bool is_hyphen(char32_t c) {
  switch (c) {
    case U'-':
    case U'\u00AD':  // soft hyphen
    case U'\u2010':
    case U'\u2011':
      return true;
    default:
      return false;
  }
}

inline bool is_space_or_control(char32_t c) {
  const auto cp = static_cast<UChar32>(c);
  return u_isUWhiteSpace(cp) || u_charType(cp) == U_CONTROL_CHAR;
}

/// NFC, then full case folding, then NFC again (folding can decompose).
inline icu::UnicodeString fold_and_compose(const icu::UnicodeString& in) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) fail(ErrorKind::Encoding, "ICU NFC normalizer unavailable");
  icu::UnicodeString s = nfc->normalize(in, status);
  s.foldCase(U_FOLD_CASE_DEFAULT);
  s = nfc->normalize(s, status);
  if (U_FAILURE(status)) fail(ErrorKind::Encoding, u_errorName(status));
  return s;
}

}  // namespace lexistat::unicode
