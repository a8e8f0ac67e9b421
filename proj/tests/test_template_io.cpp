#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "groupsketch/rng.hpp"
#include "groupsketch/template_io.hpp"

using namespace groupsketch;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("templates survive a write/read roundtrip at float precision") {
    TemplateMatrix matrix;
    matrix.dim = 24;
    rng::Stream stream(321);
    for (int i = 0; i < 17; ++i) {
        std::vector<double> row(24);
        double norm = 0.0;
        for (auto& v : row) {
            v = stream.next_normal();
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (auto& v : row) v /= norm;
        matrix.rows.push_back(std::move(row));
    }

    TempFile file("groupsketch-templates-roundtrip.bin");
    write_templates(file.path, matrix);
    const auto loaded = read_templates(file.path);

    REQUIRE(loaded.dim == matrix.dim);
    REQUIRE(loaded.rows.size() == matrix.rows.size());
    for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
        for (int j = 0; j < matrix.dim; ++j) {
            const double v = matrix.rows[i][j];
            CHECK(loaded.rows[i][j] ==
                  doctest::Approx(v).epsilon(1e-6).scale(1.0));
            CHECK(loaded.rows[i][j] ==
                  static_cast<double>(static_cast<float>(v)));
        }
    }
}

TEST_CASE("file layout is a JSON header line plus packed float payload") {
    TemplateMatrix matrix;
    matrix.dim = 2;
    matrix.rows = {{1.0, 0.0}, {0.0, -1.0}};
    TempFile file("groupsketch-templates-layout.bin");
    write_templates(file.path, matrix);

    std::ifstream in(file.path, std::ios::binary);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header.find("\"dim\"") != std::string::npos);
    CHECK(header.find("\"count\"") != std::string::npos);
    std::vector<char> payload(16);
    REQUIRE(in.read(payload.data(), 16));
    char extra;
    CHECK_FALSE(in.read(&extra, 1));
    // 1.0f little endian
    CHECK(static_cast<unsigned char>(payload[3]) == 0x3f);
    CHECK(static_cast<unsigned char>(payload[2]) == 0x80);
}

TEST_CASE("writer rejects malformed matrices") {
    TempFile file("groupsketch-templates-bad.bin");
    TemplateMatrix empty_dim;
    empty_dim.dim = 0;
    CHECK_THROWS_AS(write_templates(file.path, empty_dim),
                    std::invalid_argument);

    TemplateMatrix ragged;
    ragged.dim = 3;
    ragged.rows = {{1.0, 0.0, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(write_templates(file.path, ragged), std::invalid_argument);
}

TEST_CASE("reader reports unusable files") {
    CHECK_THROWS_AS(read_templates("/tmp/groupsketch-no-such-file.bin"),
                    std::runtime_error);

    TempFile garbled("groupsketch-templates-garbled.bin");
    {
        std::ofstream out(garbled.path, std::ios::binary);
        out << "not json\n";
    }
    CHECK_THROWS_AS(read_templates(garbled.path), std::runtime_error);

    TempFile truncated("groupsketch-templates-truncated.bin");
    {
        std::ofstream out(truncated.path, std::ios::binary);
        out << "{\"dim\": 4, \"count\": 2}\n";
        out << "xy";
    }
    CHECK_THROWS_AS(read_templates(truncated.path), std::runtime_error);
}
