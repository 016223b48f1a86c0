#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "arp/errors.hpp"

namespace arp {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// 3x3 matrix with exact integer entries, row-major.
template <typename T>
struct Mat3 {
    std::array<T, 9> e{};

    static Mat3 identity() {
        Mat3 m;
        m.e = {T(1), T(0), T(0), T(0), T(1), T(0), T(0), T(0), T(1)};
        return m;
    }

    T& operator()(int r, int c) { return e[static_cast<std::size_t>(3 * r + c)]; }
    const T& operator()(int r, int c) const { return e[static_cast<std::size_t>(3 * r + c)]; }

    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                T acc = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
                out(r, c) = acc;
            }
        return out;
    }

    friend bool operator==(const Mat3& a, const Mat3& b) { return a.e == b.e; }

    std::array<T, 3> apply(const std::array<T, 3>& v) const {
        return {(*this)(0, 0) * v[0] + (*this)(0, 1) * v[1] + (*this)(0, 2) * v[2],
                (*this)(1, 0) * v[0] + (*this)(1, 1) * v[1] + (*this)(1, 2) * v[2],
                (*this)(2, 0) * v[0] + (*this)(2, 1) * v[1] + (*this)(2, 2) * v[2]};
    }

    T det() const {
        const Mat3& m = *this;
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }

    /// Exact inverse for matrices with determinant +-1 (adjugate divided by det).
    Mat3 unimodular_inverse() const {
        const Mat3& m = *this;
        T d = det();
        if (d != T(1) && d != T(-1))
            throw std::domain_error("unimodular_inverse: determinant is not +-1");
        Mat3 adj;
        adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
        adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
        adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
        adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
        adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
        adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
        adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
        adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
        adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        if (d == T(-1))
            for (auto& x : adj.e) x = -x;
        return adj;
    }

    bool all_positive() const {
        for (const auto& x : e)
            if (x <= T(0)) return false;
        return true;
    }

    bool all_nonnegative() const {
        for (const auto& x : e)
            if (x < T(0)) return false;
        return true;
    }

    template <typename U>
    Mat3<U> cast() const {
        Mat3<U> out;
        for (std::size_t i = 0; i < 9; ++i) out.e[i] = U(e[i]);
        return out;
    }
};

using Mat3i = Mat3<long long>;
using Mat3z = Mat3<Int>;

/// The fifteen named partition matrices plus the identity.
enum class MatName : std::uint8_t {
    Id,
    A1, A2, A3,
    P12, P13, P21, P23, P31, P32,
    H12, H13, H21, H23, H31, H32,
};

Mat3i named_matrix(MatName name);
Mat3i named_matrix(std::string_view label);  // throws UnknownLabel
std::string_view matrix_label(MatName name);
MatName parse_matrix_label(std::string_view label);  // throws UnknownLabel

}  // namespace arp
