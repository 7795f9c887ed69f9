#pragma once

// 4-PSK signal set, bit labelling and the difference constellation, all in
// exact Gaussian-integer arithmetic.

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cubenc {

/// Complex number with integer parts, a + b*j.
struct GaussianInt {
    int re = 0;
    int im = 0;

    constexpr GaussianInt() = default;
    constexpr GaussianInt(int r, int i) : re(r), im(i) {}

    /// Squared magnitude.
    constexpr int norm() const { return re * re + im * im; }
    constexpr bool is_zero() const { return re == 0 && im == 0; }

    std::complex<double> to_complex() const { return {double(re), double(im)}; }

    constexpr GaussianInt operator-() const { return {-re, -im}; }
    friend constexpr GaussianInt operator+(GaussianInt x, GaussianInt y) { return {x.re + y.re, x.im + y.im}; }
    friend constexpr GaussianInt operator-(GaussianInt x, GaussianInt y) { return {x.re - y.re, x.im - y.im}; }
    friend constexpr GaussianInt operator*(GaussianInt x, GaussianInt y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }

    // Lexicographic on (re, im); used for canonical ordering only.
    friend constexpr bool operator==(GaussianInt, GaussianInt) = default;
    friend constexpr std::strong_ordering operator<=>(GaussianInt, GaussianInt) = default;

    friend std::ostream& operator<<(std::ostream& os, GaussianInt z) {
        return os << "(" << z.re << (z.im < 0 ? "" : "+") << z.im << "j)";
    }
};

inline constexpr GaussianInt kJ{0, 1};

/// One point of the 4-PSK alphabet {1, j, -1, -j}, identified by its index
/// 0..3 so that value(k) = j^k.
class PskSymbol {
public:
    constexpr PskSymbol() = default;
    constexpr explicit PskSymbol(int index) : index_(index) {
        if (index < 0 || index > 3) throw std::out_of_range("4-PSK index out of range: " + std::to_string(index));
    }

    constexpr int index() const { return index_; }

    constexpr GaussianInt value() const {
        constexpr std::array<GaussianInt, 4> points{GaussianInt{1, 0}, GaussianInt{0, 1}, GaussianInt{-1, 0},
                                                    GaussianInt{0, -1}};
        return points[static_cast<std::size_t>(index_)];
    }

    std::complex<double> complex_value() const { return value().to_complex(); }

    friend constexpr bool operator==(PskSymbol, PskSymbol) = default;
    friend constexpr auto operator<=>(PskSymbol, PskSymbol) = default;

private:
    int index_ = 0;
};

inline constexpr std::array<PskSymbol, 4> kPsk4{PskSymbol{0}, PskSymbol{1}, PskSymbol{2}, PskSymbol{3}};

/// Returns the 4-PSK symbol whose value is z, if z is a 4-PSK point.
constexpr bool psk_from_value(GaussianInt z, PskSymbol& out) {
    for (auto s : kPsk4) {
        if (s.value() == z) {
            out = s;
            return true;
        }
    }
    return false;
}

/// Two message bits, most significant first.
using BitPair = std::array<std::uint8_t, 2>;

/// Natural binary labelling: 00->1, 01->j, 10->-1, 11->-j.
constexpr PskSymbol mu(BitPair bits) {
    if (bits[0] > 1 || bits[1] > 1) throw std::domain_error("mu: bits must be 0 or 1");
    return PskSymbol{bits[0] * 2 + bits[1]};
}

constexpr BitPair mu_inverse(PskSymbol s) {
    return {static_cast<std::uint8_t>(s.index() >> 1), static_cast<std::uint8_t>(s.index() & 1)};
}

enum class DiffClass { Zero, D1, D2 };

/// The nine differences of 4-PSK points, sorted lexicographically.
constexpr std::array<GaussianInt, 9> diff_set() {
    return {GaussianInt{-2, 0}, GaussianInt{-1, -1}, GaussianInt{-1, 1}, GaussianInt{0, -2}, GaussianInt{0, 0},
            GaussianInt{0, 2},  GaussianInt{1, -1},  GaussianInt{1, 1},  GaussianInt{2, 0}};
}

constexpr bool in_diff_set(GaussianInt d) {
    for (auto x : diff_set())
        if (x == d) return true;
    return false;
}

/// Zero / D1 = {+-1+-j} / D2 = {+-2, +-2j}, by squared magnitude 0 / 2 / 4.
inline DiffClass classify_diff(GaussianInt d) {
    if (!in_diff_set(d)) {
        std::ostringstream os;
        os << "classify_diff: " << d << " is not a 4-PSK difference";
        throw std::domain_error(os.str());
    }
    switch (d.norm()) {
    case 0: return DiffClass::Zero;
    case 2: return DiffClass::D1;
    default: return DiffClass::D2;
    }
}

}  // namespace cubenc
