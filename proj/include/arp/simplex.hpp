#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "arp/numeric.hpp"
#include "arp/scalar.hpp"

namespace arp {

/// A point of the standard 2-simplex. All-rational vectors are normalized
/// exactly to unit coordinate sum; vectors with irrational coordinates are
/// kept projectively (every membership test below is scale-invariant).
struct SimplexVector {
    std::array<Scalar, 3> x;
    bool exact_rational = false;

    static SimplexVector make(Scalar a, Scalar b, Scalar c, unsigned bits = Scalar::kDefaultBitCap);
    static SimplexVector parse(std::string_view text, unsigned bits = Scalar::kDefaultBitCap);

    std::array<std::string, 3> decimal(int digits = 12) const;  // normalized approximation
    std::string to_string() const;
};

enum class CellKind { AR, P, Degenerate };

struct PartitionCell {
    CellKind kind = CellKind::Degenerate;
    int k = 0;  // AR(k); P(j,k)
    int j = 0;

    MatName matrix() const;  // A_k or P_jk; throws DegenerateVector for Degenerate
    std::string to_string() const;
    friend bool operator==(const PartitionCell&, const PartitionCell&) = default;
};

PartitionCell ar_cell(int k);
PartitionCell p_cell(int j, int k);

/// Locates the partition cell containing x. The three Arnoux-Rauzy cones are
/// probed first (closed membership; at most one can contain a positive
/// vector), then the six Poincare cones with strict membership in
/// lexicographic (j,k) order. Vectors with a nonpositive coordinate, or
/// vectors on the remaining cell boundaries, are Degenerate.
PartitionCell classify(const SimplexVector& x, unsigned bits = Scalar::kDefaultBitCap);

/// One step of the renormalized map: returns (M(x), M(x)^-1 x / || . ||_1).
std::pair<MatName, SimplexVector> step(const SimplexVector& x,
                                       unsigned bits = Scalar::kDefaultBitCap);

struct OrbitEntry {
    PartitionCell cell;
    MatName matrix;
    SimplexVector value;  // the image T(x) at this step
};

struct Orbit {
    std::vector<OrbitEntry> steps;
    bool hit_boundary = false;  // terminated on a Degenerate vector before N steps
};

Orbit orbit(const SimplexVector& x, std::size_t n, unsigned bits = Scalar::kDefaultBitCap);

}  // namespace arp
