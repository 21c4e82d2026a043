#include "semacc/digest.hpp"

#include <fstream>
#include <sstream>

#include "semacc/error.hpp"

namespace semacc {

std::string digest_to_string(std::uint64_t h) {
    static const char* hex = "0123456789abcdef";
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) {
        out.push_back(hex[(h >> shift) & 0xF]);
    }
    return out;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::MissingFile, "cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return digest_to_string(fnv1a64(buf.str()));
}

}  // namespace semacc
