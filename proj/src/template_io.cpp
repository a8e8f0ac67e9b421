#include "groupsketch/template_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace groupsketch {

namespace {

std::uint32_t to_little(std::uint32_t v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) |
               ((v >> 8) & 0xff00u) | (v >> 24);
    }
}

}  // namespace

void write_templates(const std::string& path, const TemplateMatrix& templates) {
    if (templates.dim < 1) {
        throw std::invalid_argument("dimension must be positive");
    }
    for (const auto& row : templates.rows) {
        if (row.size() != static_cast<std::size_t>(templates.dim)) {
            throw std::invalid_argument("ragged template matrix");
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    const nlohmann::json header = {{"dim", templates.dim},
                                   {"count", templates.rows.size()}};
    out << header.dump() << '\n';
    for (const auto& row : templates.rows) {
        for (double v : row) {
            const float f = static_cast<float>(v);
            std::uint32_t bits;
            std::memcpy(&bits, &f, sizeof bits);
            bits = to_little(bits);
            out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
        }
    }
    if (!out) {
        throw std::runtime_error("failed writing " + path);
    }
}

TemplateMatrix read_templates(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::string header_line;
    if (!std::getline(in, header_line)) {
        throw std::runtime_error("missing template header in " + path);
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(header_line);
    } catch (const nlohmann::json::exception&) {
        throw std::runtime_error("malformed template header in " + path);
    }
    if (!header.contains("dim") || !header.contains("count")) {
        throw std::runtime_error("template header must carry dim and count");
    }
    TemplateMatrix templates;
    templates.dim = header["dim"].get<int>();
    const auto count = header["count"].get<std::size_t>();
    if (templates.dim < 1) {
        throw std::runtime_error("invalid template dimension");
    }
    templates.rows.assign(count,
                          std::vector<double>(static_cast<std::size_t>(templates.dim)));
    for (auto& row : templates.rows) {
        for (auto& v : row) {
            std::uint32_t bits;
            if (!in.read(reinterpret_cast<char*>(&bits), sizeof bits)) {
                throw std::runtime_error("truncated template payload in " + path);
            }
            bits = to_little(bits);
            float f;
            std::memcpy(&f, &bits, sizeof f);
            v = static_cast<double>(f);
        }
    }
    return templates;
}

}  // namespace groupsketch
