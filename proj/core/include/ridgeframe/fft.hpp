#pragma once

#include <complex>
#include <span>

namespace ridgeframe::fft {

enum class Sign { Forward = -1, Backward = +1 };

/// Unnormalized in-place DFT: out[k] = sum_j in[j] exp(sign * 2 pi i j k / n).
/// Thread-safe; plans are cached per (length, sign).
void transform(std::span<std::complex<double>> data, Sign sign);

}  // namespace ridgeframe::fft

#include <cstddef>
#include <vector>

namespace ridgeframe::fft {

/// Chirp-z transform out[k] = sum_j a[j] exp(-2 pi i w (p0 + k) j) for
/// k in [0, count), by Bluestein's algorithm. The chirp spectrum is computed
/// once, so one instance serves many input rows of the same length.
class ChirpZ {
public:
    ChirpZ(std::size_t in_len, double w, long p0, std::size_t count);

    std::size_t in_len() const { return in_len_; }
    std::size_t count() const { return count_; }

    /// a.size() == in_len(), out.size() == count().
    void apply(std::span<const std::complex<double>> a,
               std::span<std::complex<double>> out) const;

private:
    std::size_t in_len_;
    std::size_t count_;
    std::size_t fft_len_;
    std::vector<std::complex<double>> pre_;    // exp(-i pi w j^2)
    std::vector<std::complex<double>> post_;   // exp(-i pi w p^2)
    std::vector<std::complex<double>> kernel_; // FFT of the chirp, scaled by 1/fft_len
};

}  // namespace ridgeframe::fft
