#pragma once

// Thin RAII layer over FFTW3. Plans are created with FFTW_ESTIMATE, so the
// transform is deterministic for a given size; planning is serialized because
// the FFTW planner is not thread-safe, execution is not.

#include <complex>
#include <cstddef>
#include <cstring>
#include <memory>
#include <mutex>
#include <span>
#include <type_traits>
#include <vector>

#include <fftw3.h>

#include "error.hpp"

namespace hurst::fft {

namespace detail {

inline std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FreeDeleter {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

struct PlanDeleter {
    void operator()(fftw_plan p) const noexcept
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

using PlanHandle = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

template <typename T>
std::unique_ptr<T[], FreeDeleter> alloc(std::size_t n)
{
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * (n == 0 ? 1 : n)));
    if (p == nullptr) {
        throw Error("fftw_malloc failed");
    }
    return std::unique_ptr<T[], FreeDeleter>(p);
}

} // namespace detail

/// Forward real-to-complex DFT, X_m = sum_k x_k exp(-2 pi i m k / N), m = 0..N/2.
inline std::vector<std::complex<double>> forward_real(std::span<const double> x)
{
    const std::size_t n = x.size();
    const std::size_t bins = n / 2 + 1;
    auto in = detail::alloc<double>(n);
    auto out = detail::alloc<fftw_complex>(bins);
    detail::PlanHandle plan;
    {
        std::lock_guard lock(detail::planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    if (!plan) {
        throw Error("fftw r2c planning failed");
    }
    std::memcpy(in.get(), x.data(), sizeof(double) * n);
    fftw_execute(plan.get());

    std::vector<std::complex<double>> result(bins);
    for (std::size_t m = 0; m < bins; ++m) {
        result[m] = {out[m][0], out[m][1]};
    }
    return result;
}

/// Hermitian half-spectrum (N/2+1 bins) to real, unnormalized:
/// x_k = sum_{m=0}^{N-1} X_m exp(+2 pi i m k / N) with X_{N-m} = conj(X_m).
inline std::vector<double> inverse_real(std::span<const std::complex<double>> half, std::size_t n)
{
    if (half.size() != n / 2 + 1) {
        throw Error("half-spectrum size does not match transform length");
    }
    auto in = detail::alloc<fftw_complex>(half.size());
    auto out = detail::alloc<double>(n);
    detail::PlanHandle plan;
    {
        std::lock_guard lock(detail::planner_mutex());
        plan.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    if (!plan) {
        throw Error("fftw c2r planning failed");
    }
    for (std::size_t m = 0; m < half.size(); ++m) {
        in[m][0] = half[m].real();
        in[m][1] = half[m].imag();
    }
    fftw_execute(plan.get());
    return {out.get(), out.get() + n};
}

/// Reusable complex-to-complex transform of a fixed length.
class ComplexTransform {
public:
    enum class Direction { Forward, Backward };

    ComplexTransform(std::size_t n, Direction dir)
        : n_(n), in_(detail::alloc<fftw_complex>(n)), out_(detail::alloc<fftw_complex>(n))
    {
        std::lock_guard lock(detail::planner_mutex());
        plan_.reset(fftw_plan_dft_1d(static_cast<int>(n), in_.get(), out_.get(),
                                     dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                     FFTW_ESTIMATE));
        if (!plan_) {
            throw Error("fftw c2c planning failed");
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    /// Unnormalized transform of `input` (length n) into `output` (length n).
    void execute(std::span<const std::complex<double>> input, std::span<std::complex<double>> output)
    {
        if (input.size() != n_ || output.size() != n_) {
            throw Error("transform length mismatch");
        }
        std::memcpy(in_.get(), input.data(), sizeof(fftw_complex) * n_);
        fftw_execute(plan_.get());
        std::memcpy(static_cast<void*>(output.data()), out_.get(), sizeof(fftw_complex) * n_);
    }

private:
    std::size_t n_;
    std::unique_ptr<fftw_complex[], detail::FreeDeleter> in_;
    std::unique_ptr<fftw_complex[], detail::FreeDeleter> out_;
    detail::PlanHandle plan_;
};

inline std::size_t next_pow2(std::size_t n) noexcept
{
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

} // namespace hurst::fft
