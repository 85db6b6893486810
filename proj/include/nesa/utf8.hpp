#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nesa::utf8 {

// Invalid byte sequences decode to kInvalid, one per offending byte.
inline constexpr char32_t kInvalid = 0xFFFFFFFF;

std::vector<char32_t> decode(std::string_view text);
void append(std::string& out, char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

}  // namespace nesa::utf8
