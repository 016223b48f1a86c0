#pragma once

#include <array>
#include <optional>
#include <vector>

#include "arp/language.hpp"
#include "arp/sadic.hpp"
#include "arp/simplex.hpp"

namespace arp {

/// Running product M_0 ... M_n of partition matrices, in exact integers.
struct ConeProduct {
    Mat3z matrix = Mat3z::identity();
    std::size_t steps = 0;

    void absorb(MatName m) {
        matrix = matrix * named_matrix(m).cast<Int>();
        ++steps;
    }
    void absorb(Sub s) {
        matrix = matrix * incidence(s).cast<Int>();
        ++steps;
    }
};

/// Hilbert projective diameter of the column cone:
/// max over column pairs (u,v) of ln(max_i u_i/v_i * max_i v_i/u_i).
/// Returns +infinity while some entry is still zero (degenerate cone).
double cone_diameter(const Mat3z& m);

struct FrequencyReport {
    std::array<Rat, 3> frequencies;  // empirical letter frequencies, sum 1
    std::size_t length = 0;
    double max_deviation = 0.0;  // against the normalized target, approximate
};

FrequencyReport frequency_report(const SadicWordHandle& handle, std::size_t length,
                                 const SimplexVector& target);

/// Exact check that every |count_i/L - x_i| < bound, through the sign oracle
/// (the target may have irrational coordinates kept projectively).
bool deviation_below(const std::array<long long, 3>& counts, std::size_t length,
                     const SimplexVector& target, const Rat& bound,
                     unsigned bits = Scalar::kDefaultBitCap);

/// Same check with exact abelian counts coming from a matrix product column.
bool deviation_below(const std::array<Int, 3>& counts, const Int& length,
                     const SimplexVector& target, const Rat& bound,
                     unsigned bits = Scalar::kDefaultBitCap);

struct BalanceReport {
    std::array<long long, 3> max_imbalance{};            // per letter, over all n <= n_cap
    std::vector<std::array<long long, 3>> per_length;     // index n-1 for n = 1..n_cap
    std::size_t length = 0;
};

/// Sliding-window letter-count spreads: for each window length n <= n_cap the
/// per-letter difference between the largest and smallest count over all
/// windows of the prefix.
BalanceReport balance_report(const SadicWordHandle& handle, std::size_t length, int n_cap);
BalanceReport balance_report(const Word& text, int n_cap);

}  // namespace arp
