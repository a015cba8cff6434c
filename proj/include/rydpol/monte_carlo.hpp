#ifndef RYDPOL_MONTE_CARLO_HPP
#define RYDPOL_MONTE_CARLO_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

#include "rydpol/random.hpp"

namespace rydpol {

struct McSettings {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

/// Sample mean of a complex observable with separate standard errors for the
/// real and imaginary parts.
struct McEstimate {
    std::complex<double> mean;
    double se_re = 0.0;
    double se_im = 0.0;

    double stat_error() const { return std::max(se_re, se_im); }
};

/// Samples are grouped into fixed-size blocks; block b always draws from
/// stream derive_stream_seed(stream_seed, b) and block sums are reduced in
/// block order, so results are identical for any thread count.
inline constexpr std::uint64_t kSamplesPerBlock = 4096;

namespace detail {

struct Moments {
    std::vector<double> re, im, re2, im2;
    explicit Moments(std::size_t k) : re(k), im(k), re2(k), im2(k) {}
    void add(std::size_t i, std::complex<double> z) {
        re[i] += z.real();
        im[i] += z.imag();
        re2[i] += z.real() * z.real();
        im2[i] += z.imag() * z.imag();
    }
};

}  // namespace detail

/// Runs `draw(rng, out)` for settings.samples samples; `out` has
/// `observables` entries. Returns one estimate per observable.
template <typename Draw>
std::vector<McEstimate> run_monte_carlo(const McSettings& settings, std::uint64_t stream,
                                        std::size_t observables, Draw&& draw) {
    const std::uint64_t n = settings.samples;
    const std::uint64_t blocks = (n + kSamplesPerBlock - 1) / kSamplesPerBlock;
    const std::uint64_t stream_seed = derive_stream_seed(settings.seed, stream);
    std::vector<detail::Moments> per_block(blocks, detail::Moments(observables));

    auto work = [&](unsigned worker, unsigned workers) {
        std::vector<std::complex<double>> out(observables);
        // Each worker owns a copy, so draws may keep mutable scratch space.
        std::decay_t<Draw> local(draw);
        for (std::uint64_t b = worker; b < blocks; b += workers) {
            Xoshiro256 rng(derive_stream_seed(stream_seed, b));
            const std::uint64_t count = std::min(kSamplesPerBlock, n - b * kSamplesPerBlock);
            auto& m = per_block[b];
            for (std::uint64_t s = 0; s < count; ++s) {
                local(rng, std::span<std::complex<double>>(out));
                for (std::size_t i = 0; i < observables; ++i) m.add(i, out[i]);
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(settings.threads, static_cast<unsigned>(blocks)));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    }

    detail::Moments total(observables);
    for (const auto& m : per_block) {
        for (std::size_t i = 0; i < observables; ++i) {
            total.re[i] += m.re[i];
            total.im[i] += m.im[i];
            total.re2[i] += m.re2[i];
            total.im2[i] += m.im2[i];
        }
    }

    std::vector<McEstimate> result(observables);
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < observables; ++i) {
        const double mr = total.re[i] / dn;
        const double mi = total.im[i] / dn;
        const double vr = std::max(0.0, total.re2[i] / dn - mr * mr) * dn / std::max(1.0, dn - 1.0);
        const double vi = std::max(0.0, total.im2[i] / dn - mi * mi) * dn / std::max(1.0, dn - 1.0);
        result[i] = {{mr, mi}, std::sqrt(vr / dn), std::sqrt(vi / dn)};
    }
    return result;
}

}  // namespace rydpol

#endif  // RYDPOL_MONTE_CARLO_HPP
