#include "afdm/dft.hpp"

#include <stdexcept>
#include <unordered_map>

namespace afdm {

namespace {

// Twiddle tables are cached per (length, sign) per thread; the hot loops
// (PAPR evaluation inside GPS) hit the same sizes millions of times.
const ComplexVec& twiddles(std::size_t n, int sign) {
    thread_local std::unordered_map<std::size_t, ComplexVec> cache;
    const std::size_t key = n * 2 + (sign > 0 ? 1 : 0);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ComplexVec w(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        w[k] = cis(sign * kTwoPi * static_cast<double>(k) / static_cast<double>(n));
    }
    return cache.emplace(key, std::move(w)).first->second;
}

ComplexVec direct_transform(const ComplexVec& x, int sign) {
    const std::size_t n = x.size();
    ComplexVec out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cd acc = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            acc += x[m] * cis(sign * kTwoPi * static_cast<double>(k * m % n) / static_cast<double>(n));
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace

void fft_pow2_inplace(ComplexVec& x, int sign) {
    const std::size_t n = x.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2_inplace: length must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    const ComplexVec& w = twiddles(n, sign);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = x[i + k];
                const cd v = x[i + k + len / 2] * w[k * step];
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
            }
        }
    }
}

ComplexVec dft_unitary(const ComplexVec& x) {
    if (x.empty()) throw std::invalid_argument("dft_unitary: empty input");
    const std::size_t n = x.size();
    ComplexVec out;
    if (is_pow2(n)) {
        out = x;
        fft_pow2_inplace(out, -1);
    } else {
        out = direct_transform(x, -1);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (cd& z : out) z *= scale;
    return out;
}

ComplexVec idft_unitary(const ComplexVec& x) {
    if (x.empty()) throw std::invalid_argument("idft_unitary: empty input");
    const std::size_t n = x.size();
    ComplexVec out;
    if (is_pow2(n)) {
        out = x;
        fft_pow2_inplace(out, +1);
    } else {
        out = direct_transform(x, +1);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (cd& z : out) z *= scale;
    return out;
}

}  // namespace afdm
