#pragma once

#include <string>
#include <vector>

namespace groupsketch {

// Row-major matrix of unit-norm template vectors, stored on disk as one JSON
// header line {"dim": d, "count": c} followed by count*dim little-endian
// 32-bit floats.
struct TemplateMatrix {
    int dim = 0;
    std::vector<std::vector<double>> rows;
};

void write_templates(const std::string& path, const TemplateMatrix& templates);
TemplateMatrix read_templates(const std::string& path);

}  // namespace groupsketch
