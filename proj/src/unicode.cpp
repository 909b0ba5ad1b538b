#include "idiomcraft/unicode.hpp"

namespace idiomcraft::unicode {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

}  // namespace

Decoded decode(std::string_view text, std::size_t offset) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[offset + i]);
  };
  const std::size_t remaining = text.size() - offset;
  const unsigned char lead = byte(0);
  if (lead < 0x80) return {lead, 1};

  std::size_t length = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    cp = lead & 0x07;
  } else {
    return {kReplacement, 1};
  }
  if (remaining < length) return {kReplacement, 1};
  for (std::size_t i = 1; i < length; ++i) {
    const unsigned char b = byte(i);
    if ((b & 0xC0) != 0x80) return {kReplacement, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  // reject overlong forms and surrogates
  if ((length == 2 && cp < 0x80) || (length == 3 && cp < 0x800) ||
      (length == 4 && (cp < 0x10000 || cp > 0x10FFFF)) || in(cp, 0xD800, 0xDFFF)) {
    return {kReplacement, 1};
  }
  return {cp, length};
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

bool is_space(char32_t cp) {
  switch (cp) {
    case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000: case 0xFEFF:
      return true;
    default:
      return in(cp, 0x2000, 0x200B);
  }
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return in(cp, 0x21, 0x2F) || in(cp, 0x3A, 0x40) || in(cp, 0x5B, 0x60) ||
           in(cp, 0x7B, 0x7E);
  }
  switch (cp) {
    case 0x00A1: case 0x00A7: case 0x00AB: case 0x00B6: case 0x00B7:
    case 0x00BB: case 0x00BF: case 0x037E: case 0x0387: case 0x2E2E:
      return true;
    default:
      break;
  }
  return in(cp, 0x2010, 0x2027) || in(cp, 0x2030, 0x205E) || in(cp, 0x3001, 0x3003) ||
         in(cp, 0x3008, 0x3011) || in(cp, 0xFF01, 0xFF0F);
}

char32_t to_lower(char32_t cp, std::string_view language) {
  if (cp < 0x80) {
    if (cp == 'I' && language == "tr") return 0x0131;  // dotless ı
    if (in(cp, 'A', 'Z')) return cp + 0x20;
    return cp;
  }
  if (cp == 0x0130) return 'i';  // İ
  if (in(cp, 0x00C0, 0x00DE) && cp != 0x00D7) return cp + 0x20;
  if (in(cp, 0x0100, 0x0137) || in(cp, 0x014A, 0x0177)) return cp | 1;
  if (in(cp, 0x0139, 0x0148) || in(cp, 0x0179, 0x017E)) {
    return (cp % 2 == 1) ? cp + 1 : cp;
  }
  if (cp == 0x0178) return 0x00FF;
  if (in(cp, 0x0391, 0x03A9) && cp != 0x03A2) return cp + 0x20;
  if (in(cp, 0x0410, 0x042F)) return cp + 0x20;
  if (in(cp, 0x0400, 0x040F)) return cp + 0x50;
  return cp;
}

std::string to_lower(std::string_view text, std::string_view language) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const auto d = decode(text, i);
    append_utf8(out, to_lower(d.code_point, language));
    i += d.length;
  }
  return out;
}

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end) {
    const auto d = decode(text, begin);
    if (!is_space(d.code_point)) break;
    begin += d.length;
  }
  // walk back over trailing whitespace by re-scanning forward
  std::size_t last_non_space = begin;
  for (std::size_t i = begin; i < end;) {
    const auto d = decode(text, i);
    i += d.length;
    if (!is_space(d.code_point)) last_non_space = i;
  }
  return std::string(text.substr(begin, last_non_space - begin));
}

}  // namespace idiomcraft::unicode
