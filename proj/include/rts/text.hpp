#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rts::text {

/// Decodes UTF-8 into code points. Invalid bytes decode as U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(char32_t cp);
std::string encode_utf8(std::u32string_view s);

bool is_space(char32_t c);
bool is_punct(char32_t c);
/// Letters or digits in any script we recognize (ASCII, Latin-1, CJK).
bool is_word_char(char32_t c);
bool is_cjk(char32_t c);
/// 。！？.!? and their full-width forms.
bool is_sentence_terminal(char32_t c);
/// 、，；,; and full-width forms.
bool is_clause_separator(char32_t c);

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace rts::text
