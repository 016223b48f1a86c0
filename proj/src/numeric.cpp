#include "arp/numeric.hpp"

#include <algorithm>
#include <cctype>

namespace arp {

namespace {

constexpr std::array<std::string_view, 16> kLabels = {
    "Id", "A1", "A2", "A3", "P12", "P13", "P21", "P23", "P31", "P32",
    "H12", "H13", "H21", "H23", "H31", "H32"};

Mat3i from_rows(std::array<long long, 9> rows) {
    Mat3i m;
    m.e = rows;
    return m;
}

}  // namespace

std::string_view matrix_label(MatName name) { return kLabels[static_cast<std::size_t>(name)]; }

MatName parse_matrix_label(std::string_view label) {
    std::string up(label);
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "ID") return MatName::Id;
    for (std::size_t i = 0; i < kLabels.size(); ++i)
        if (up == kLabels[i]) return static_cast<MatName>(i);
    throw UnknownLabel("unknown matrix label: " + std::string(label));
}

Mat3i named_matrix(MatName name) {
    switch (name) {
        case MatName::Id:  return Mat3i::identity();
        case MatName::A1:  return from_rows({1, 1, 1,  0, 1, 0,  0, 0, 1});
        case MatName::A2:  return from_rows({1, 0, 0,  1, 1, 1,  0, 0, 1});
        case MatName::A3:  return from_rows({1, 0, 0,  0, 1, 0,  1, 1, 1});
        case MatName::P21: return from_rows({1, 1, 1,  0, 1, 1,  0, 0, 1});
        case MatName::P31: return from_rows({1, 1, 1,  0, 1, 0,  0, 1, 1});
        case MatName::P12: return from_rows({1, 0, 1,  1, 1, 1,  0, 0, 1});
        case MatName::P32: return from_rows({1, 0, 0,  1, 1, 1,  1, 0, 1});
        case MatName::P13: return from_rows({1, 1, 0,  0, 1, 0,  1, 1, 1});
        case MatName::P23: return from_rows({1, 0, 0,  1, 1, 0,  1, 1, 1});
        case MatName::H21: return from_rows({1, 0, 0,  0, 1, 0,  1, 0, 1});
        case MatName::H31: return from_rows({1, 0, 0,  1, 1, 0,  0, 0, 1});
        case MatName::H12: return from_rows({1, 0, 0,  0, 1, 0,  0, 1, 1});
        case MatName::H32: return from_rows({1, 1, 0,  0, 1, 0,  0, 0, 1});
        case MatName::H13: return from_rows({1, 0, 0,  0, 1, 1,  0, 0, 1});
        case MatName::H23: return from_rows({1, 0, 1,  0, 1, 0,  0, 0, 1});
    }
    throw UnknownLabel("unknown matrix name");
}

Mat3i named_matrix(std::string_view label) { return named_matrix(parse_matrix_label(label)); }

}  // namespace arp
