#include "arp/simplex.hpp"

#include <sstream>

namespace arp {

SimplexVector SimplexVector::make(Scalar a, Scalar b, Scalar c, unsigned bits) {
    SimplexVector v{{std::move(a), std::move(b), std::move(c)}, false};
    for (const auto& s : v.x)
        if (s.sign(bits) < 0) throw ParseError("simplex coordinates must be nonnegative");
    Scalar sum = v.x[0] + v.x[1] + v.x[2];
    if (sum.sign(bits) <= 0) throw ParseError("simplex coordinate sum must be positive");
    if (sum.is_rational() && v.x[0].is_rational() && v.x[1].is_rational() && v.x[2].is_rational()) {
        Rat inv = Rat(1) / sum.as_rational();
        for (auto& s : v.x) s = inv * s;
        v.exact_rational = true;
    }
    return v;
}

SimplexVector SimplexVector::parse(std::string_view text, unsigned bits) {
    std::array<Scalar, 3> coords;
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        std::size_t comma = i < 2 ? text.find(',', start) : std::string_view::npos;
        if (i < 2 && comma == std::string_view::npos)
            throw ParseError("expected three comma-separated coordinates");
        coords[static_cast<std::size_t>(i)] =
            Scalar::parse(text.substr(start, comma == std::string_view::npos ? text.size() - start
                                                                             : comma - start));
        start = comma + 1;
    }
    return make(coords[0], coords[1], coords[2], bits);
}

std::array<std::string, 3> SimplexVector::decimal(int digits) const {
    if (exact_rational) {
        return {x[0].decimal(digits), x[1].decimal(digits), x[2].decimal(digits)};
    }
    // Projective representation: normalize the approximations.
    Scalar sum = x[0] + x[1] + x[2];
    double s = sum.approx();
    std::array<std::string, 3> out;
    for (int i = 0; i < 3; ++i) {
        double v = x[static_cast<std::size_t>(i)].approx() / s;
        std::ostringstream os;
        os.setf(std::ios::fixed);
        os.precision(digits);
        os << v;
        out[static_cast<std::size_t>(i)] = os.str();
    }
    return out;
}

std::string SimplexVector::to_string() const {
    return x[0].to_string() + ", " + x[1].to_string() + ", " + x[2].to_string();
}

PartitionCell ar_cell(int k) { return PartitionCell{CellKind::AR, k, 0}; }
PartitionCell p_cell(int j, int k) { return PartitionCell{CellKind::P, k, j}; }

MatName PartitionCell::matrix() const {
    switch (kind) {
        case CellKind::AR:
            return k == 1 ? MatName::A1 : k == 2 ? MatName::A2 : MatName::A3;
        case CellKind::P: {
            static constexpr MatName p[3][3] = {
                {MatName::Id, MatName::P12, MatName::P13},
                {MatName::P21, MatName::Id, MatName::P23},
                {MatName::P31, MatName::P32, MatName::Id}};
            return p[j - 1][k - 1];
        }
        case CellKind::Degenerate:
            break;
    }
    throw DegenerateVector("degenerate cell has no matrix");
}

std::string PartitionCell::to_string() const {
    switch (kind) {
        case CellKind::AR: return "AR(" + std::to_string(k) + ")";
        case CellKind::P: return "P(" + std::to_string(j) + "," + std::to_string(k) + ")";
        case CellKind::Degenerate: break;
    }
    return "Degenerate";
}

namespace {

std::array<Scalar, 3> apply_int_matrix(const Mat3i& m, const std::array<Scalar, 3>& v) {
    std::array<Scalar, 3> out;
    for (int r = 0; r < 3; ++r) {
        Scalar acc;
        for (int c = 0; c < 3; ++c) acc += Rat(m(r, c)) * v[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

}  // namespace

PartitionCell classify(const SimplexVector& x, unsigned bits) {
    for (const auto& c : x.x)
        if (c.sign(bits) <= 0) return PartitionCell{};  // boundary of the simplex

    // AR cone membership: A_k^-1 x has components (x_k - x_i - x_j, x_i, x_j)
    // up to order, so for a positive vector it reduces to x_k >= x_i + x_j.
    // Two such inequalities cannot hold at once.
    for (int k = 1; k <= 3; ++k) {
        Scalar excess = x.x[static_cast<std::size_t>(k - 1)];
        for (int o = 1; o <= 3; ++o)
            if (o != k) excess -= x.x[static_cast<std::size_t>(o - 1)];
        if (excess.sign(bits) >= 0) return ar_cell(k);
    }

    static constexpr std::pair<int, int> kPairs[6] = {{1, 2}, {1, 3}, {2, 1},
                                                      {2, 3}, {3, 1}, {3, 2}};
    for (auto [j, k] : kPairs) {
        PartitionCell cell = p_cell(j, k);
        Mat3i h = named_matrix(cell.matrix()) *
                  named_matrix("H" + std::to_string(j) + std::to_string(k));
        auto y = apply_int_matrix(h.unimodular_inverse(), x.x);
        bool inside = true;
        for (const auto& s : y)
            if (s.sign(bits) <= 0) {
                inside = false;
                break;
            }
        if (inside) return cell;
    }
    return PartitionCell{};
}

std::pair<MatName, SimplexVector> step(const SimplexVector& x, unsigned bits) {
    PartitionCell cell = classify(x, bits);
    if (cell.kind == CellKind::Degenerate)
        throw DegenerateVector("vector lies on a partition boundary: " + x.to_string());
    MatName m = cell.matrix();
    auto y = apply_int_matrix(named_matrix(m).unimodular_inverse(), x.x);
    SimplexVector out{{std::move(y[0]), std::move(y[1]), std::move(y[2])}, false};
    if (x.exact_rational) {
        Scalar sum = out.x[0] + out.x[1] + out.x[2];
        Rat inv = Rat(1) / sum.as_rational();
        for (auto& s : out.x) s = inv * s;
        out.exact_rational = true;
    }
    return {m, std::move(out)};
}

Orbit orbit(const SimplexVector& x, std::size_t n, unsigned bits) {
    Orbit out;
    SimplexVector cur = x;
    for (std::size_t i = 0; i < n; ++i) {
        PartitionCell cell = classify(cur, bits);
        if (cell.kind == CellKind::Degenerate) {
            out.hit_boundary = true;
            return out;
        }
        auto [m, next] = step(cur, bits);
        out.steps.push_back(OrbitEntry{cell, m, next});
        cur = std::move(next);
    }
    return out;
}

}  // namespace arp
