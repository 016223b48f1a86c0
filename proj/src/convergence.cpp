#include "arp/convergence.hpp"

#include <mpfr.h>

#include <limits>

namespace arp {

double cone_diameter(const Mat3z& m) {
    for (const auto& e : m.e)
        if (e == 0) return std::numeric_limits<double>::infinity();
    Rat worst = 1;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            Rat max_uv = 0, max_vu = 0;
            for (int r = 0; r < 3; ++r) {
                Rat uv(m(r, a), m(r, b));
                Rat vu(m(r, b), m(r, a));
                if (uv > max_uv) max_uv = uv;
                if (vu > max_vu) max_vu = vu;
            }
            Rat prod = max_uv * max_vu;
            if (prod > worst) worst = prod;
        }
    if (worst == 1) return 0.0;
    mpfr_t v;
    mpfr_init2(v, 256);
    mpfr_set_q(v, worst.backend().data(), MPFR_RNDN);
    mpfr_log(v, v, MPFR_RNDN);
    double out = mpfr_get_d(v, MPFR_RNDN);
    mpfr_clear(v);
    return out;
}

FrequencyReport frequency_report(const SadicWordHandle& handle, std::size_t length,
                                 const SimplexVector& target) {
    Word prefix = handle.prefix(length);
    Abelian counts = abelianize(prefix);
    FrequencyReport rep;
    rep.length = length;
    Scalar sum = target.x[0] + target.x[1] + target.x[2];
    double s = sum.approx();
    double dev = 0;
    for (int i = 0; i < 3; ++i) {
        rep.frequencies[static_cast<std::size_t>(i)] =
            Rat(counts[static_cast<std::size_t>(i)], static_cast<long long>(length));
        double emp = static_cast<double>(counts[static_cast<std::size_t>(i)]) /
                     static_cast<double>(length);
        double tgt = target.x[static_cast<std::size_t>(i)].approx() / s;
        dev = std::max(dev, std::abs(emp - tgt));
    }
    rep.max_deviation = dev;
    return rep;
}

bool deviation_below(const std::array<Int, 3>& counts, const Int& length,
                     const SimplexVector& target, const Rat& bound, unsigned bits) {
    // |c_i/L - x_i/S| < t  <=>  |c_i S - x_i L| < t L S, all linear in the x's
    Scalar sum = target.x[0] + target.x[1] + target.x[2];
    Rat len(length);
    for (int i = 0; i < 3; ++i) {
        Scalar diff = Rat(counts[static_cast<std::size_t>(i)]) * sum -
                      len * target.x[static_cast<std::size_t>(i)];
        Scalar margin = (bound * len) * sum;
        if ((margin - diff).sign(bits) <= 0) return false;
        if ((margin + diff).sign(bits) <= 0) return false;
    }
    return true;
}

bool deviation_below(const std::array<long long, 3>& counts, std::size_t length,
                     const SimplexVector& target, const Rat& bound, unsigned bits) {
    std::array<Int, 3> c{Int(counts[0]), Int(counts[1]), Int(counts[2])};
    return deviation_below(c, Int(static_cast<long long>(length)), target, bound, bits);
}

BalanceReport balance_report(const Word& text, int n_cap) {
    BalanceReport rep;
    rep.length = text.size();
    int len = static_cast<int>(text.size());
    n_cap = std::min(n_cap, len);
    rep.per_length.resize(static_cast<std::size_t>(n_cap));
    // prefix sums per letter
    std::array<std::vector<long long>, 3> pre;
    for (auto& v : pre) v.assign(static_cast<std::size_t>(len) + 1, 0);
    for (int p = 0; p < len; ++p) {
        for (int c = 0; c < 3; ++c)
            pre[static_cast<std::size_t>(c)][static_cast<std::size_t>(p + 1)] =
                pre[static_cast<std::size_t>(c)][static_cast<std::size_t>(p)] +
                (letter_index(text[static_cast<std::size_t>(p)]) == c ? 1 : 0);
    }
    for (int n = 1; n <= n_cap; ++n) {
        std::array<long long, 3> spread{};
        for (int c = 0; c < 3; ++c) {
            const auto& ps = pre[static_cast<std::size_t>(c)];
            long long mn = std::numeric_limits<long long>::max(), mx = 0;
            for (int p = 0; p + n <= len; ++p) {
                long long cnt = ps[static_cast<std::size_t>(p + n)] - ps[static_cast<std::size_t>(p)];
                mn = std::min(mn, cnt);
                mx = std::max(mx, cnt);
            }
            spread[static_cast<std::size_t>(c)] = mx - mn;
            rep.max_imbalance[static_cast<std::size_t>(c)] =
                std::max(rep.max_imbalance[static_cast<std::size_t>(c)], mx - mn);
        }
        rep.per_length[static_cast<std::size_t>(n - 1)] = spread;
    }
    return rep;
}

BalanceReport balance_report(const SadicWordHandle& handle, std::size_t length, int n_cap) {
    return balance_report(handle.prefix(length), n_cap);
}

}  // namespace arp
