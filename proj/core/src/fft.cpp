#include "ridgeframe/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace ridgeframe::fft {
namespace {

// fftw_plan_* and fftw_destroy_plan are not thread-safe; fftw_execute_dft is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        auto* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
        fftw_plan plan =
            fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void transform(std::span<std::complex<double>> data, Sign sign) {
    if (data.size() <= 1) return;
    const int n = static_cast<int>(data.size());
    const int s = sign == Sign::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(cache().get(n, s), p, p);
}

}  // namespace ridgeframe::fft

#include <cmath>

namespace ridgeframe::fft {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// exp(sign * i pi w d^2) with the phase reduced before the trig call.
std::complex<double> chirp(double w, long d, double sign) {
    const double dd = static_cast<double>(d);
    double turns = 0.5 * w * dd * dd;
    turns -= std::round(turns);
    return {std::cos(kTwoPi * turns), sign * std::sin(kTwoPi * turns)};
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

ChirpZ::ChirpZ(std::size_t in_len, double w, long p0, std::size_t count)
    : in_len_(in_len), count_(count) {
    const std::size_t span = in_len + count - 1;  // d = p - j ranges over span values
    fft_len_ = next_pow2(in_len + span - 1);
    pre_.resize(in_len);
    for (std::size_t j = 0; j < in_len; ++j) pre_[j] = chirp(w, static_cast<long>(j), -1.0);
    post_.resize(count);
    for (std::size_t k = 0; k < count; ++k) post_[k] = chirp(w, p0 + static_cast<long>(k), -1.0);
    kernel_.assign(fft_len_, {});
    const long d0 = p0 - static_cast<long>(in_len) + 1;
    for (std::size_t t = 0; t < span; ++t) kernel_[t] = chirp(w, d0 + static_cast<long>(t), 1.0);
    transform(kernel_, Sign::Forward);
    const double scale = 1.0 / static_cast<double>(fft_len_);
    for (auto& v : kernel_) v *= scale;
}

void ChirpZ::apply(std::span<const std::complex<double>> a,
                   std::span<std::complex<double>> out) const {
    std::vector<std::complex<double>> buf(fft_len_);
    for (std::size_t j = 0; j < in_len_; ++j) buf[j] = a[j] * pre_[j];
    transform(buf, Sign::Forward);
    for (std::size_t i = 0; i < fft_len_; ++i) buf[i] *= kernel_[i];
    transform(buf, Sign::Backward);
    for (std::size_t k = 0; k < count_; ++k) out[k] = post_[k] * buf[k + in_len_ - 1];
}

}  // namespace ridgeframe::fft
