#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace majscope {

/* Input arrays come either as text (one token per line) or as binary
   (magic "RARR", u32 count, then count little-endian u32 values). Text
   tokens are mapped to dense integer ids in first-appearance order unless
   numeric parsing is requested; either way equal tokens stay equal, which
   is all the structure ever relies on. */
struct ArrayFile {
    std::vector<std::int64_t> values;
};

ArrayFile load_array(const std::string& path, bool parse_numeric = false);
void save_array_binary(const std::string& path, const std::vector<std::int64_t>& values);

std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<uint8_t>& bytes);

}  // namespace majscope
