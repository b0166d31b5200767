#include "majscope/arrayfile.hpp"

#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

#include "majscope/io.hpp"

namespace majscope {

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                                std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

ArrayFile load_array(const std::string& path, bool parse_numeric) {
    std::vector<uint8_t> bytes = read_file(path);
    ArrayFile out;

    if (bytes.size() >= 8 && std::memcmp(bytes.data(), "RARR", 4) == 0) {
        ByteReader r(bytes.data(), bytes.size());
        r.expect_magic("RARR", "array file");
        uint32_t count = r.get_u32();
        if (r.remaining() != size_t(count) * 4)
            throw format_error("array file count does not match payload");
        out.values.reserve(count);
        for (uint32_t i = 0; i < count; ++i) out.values.push_back(std::int64_t(r.get_u32()));
        return out;
    }

    // text: one token per line, blank lines ignored
    std::string text(bytes.begin(), bytes.end());
    std::map<std::string, std::int64_t> ids;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string tok = text.substr(pos, eol - pos);
        if (!tok.empty() && tok.back() == '\r') tok.pop_back();
        pos = eol + 1;
        if (tok.empty()) continue;
        if (parse_numeric) {
            size_t used = 0;
            std::int64_t v = 0;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                throw std::runtime_error("not an integer token: " + tok);
            }
            if (used != tok.size()) throw std::runtime_error("not an integer token: " + tok);
            out.values.push_back(v);
        } else {
            auto [it, fresh] = ids.try_emplace(tok, std::int64_t(ids.size()) + 1);
            (void)fresh;
            out.values.push_back(it->second);
        }
    }
    return out;
}

void save_array_binary(const std::string& path, const std::vector<std::int64_t>& values) {
    ByteWriter w;
    w.put_magic("RARR");
    w.put_u32(uint32_t(values.size()));
    for (std::int64_t v : values) {
        if (v < 0 || v > 0xffffffffll)
            throw std::runtime_error("binary array files hold u32 values only");
        w.put_u32(uint32_t(v));
    }
    write_file(path, w.take());
}

}  // namespace majscope
