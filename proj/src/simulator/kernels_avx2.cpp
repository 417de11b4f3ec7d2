// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "hamsim/kernels.hpp"

#include <immintrin.h>

namespace hamsim::kernels {

namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d splat(cplx c) { return _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag()); }

// Lane-wise complex product.
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d ar = _mm256_movedup_pd(a);
    const __m256d ai = _mm256_permute_pd(a, 0xF);
    const __m256d bs = _mm256_permute_pd(b, 0x5);
    return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

void apply_1q(cplx* amps, int nq, int target, const Mat2& u) {
    const std::uint64_t dim = std::uint64_t{1} << nq;
    if (nq == 0)
        return;
    if (target == 0) {
        // Pair (a0, a1) sits in one register.
        const __m256d col0 = _mm256_setr_pd(u.m[0].real(), u.m[0].imag(), u.m[2].real(), u.m[2].imag());
        const __m256d col1 = _mm256_setr_pd(u.m[1].real(), u.m[1].imag(), u.m[3].real(), u.m[3].imag());
        for (std::uint64_t i = 0; i < dim; i += 2) {
            const __m256d x = load2(amps + i);
            const __m256d a0 = _mm256_permute2f128_pd(x, x, 0x00);
            const __m256d a1 = _mm256_permute2f128_pd(x, x, 0x11);
            store2(amps + i, _mm256_add_pd(cmul(col0, a0), cmul(col1, a1)));
        }
        return;
    }
    const std::uint64_t stride = std::uint64_t{1} << target;
    const __m256d m00 = splat(u.m[0]), m01 = splat(u.m[1]), m10 = splat(u.m[2]), m11 = splat(u.m[3]);
    for (std::uint64_t base = 0; base < dim; base += 2 * stride)
        for (std::uint64_t i = base; i < base + stride; i += 2) {
            const __m256d a0 = load2(amps + i);
            const __m256d a1 = load2(amps + i + stride);
            store2(amps + i, _mm256_add_pd(cmul(m00, a0), cmul(m01, a1)));
            store2(amps + i + stride, _mm256_add_pd(cmul(m10, a0), cmul(m11, a1)));
        }
}

void apply_diag(cplx* amps, int nq, std::uint64_t control_mask, int target, cplx d0, cplx d1) {
    const std::uint64_t dim = std::uint64_t{1} << nq;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    if (nq == 0)
        return;
    const bool pair_shares_factor = ((control_mask | tbit) & 1) == 0;
    if (pair_shares_factor) {
        const __m256d f0 = splat(d0), f1 = splat(d1);
        for (std::uint64_t i = 0; i < dim; i += 2)
            if ((i & control_mask) == control_mask)
                store2(amps + i, cmul((i & tbit) ? f1 : f0, load2(amps + i)));
        return;
    }
    const cplx one{1.0, 0.0};
    for (std::uint64_t i = 0; i < dim; i += 2) {
        const cplx fa = (i & control_mask) == control_mask ? ((i & tbit) ? d1 : d0) : one;
        const std::uint64_t k = i + 1;
        const cplx fb = (k & control_mask) == control_mask ? ((k & tbit) ? d1 : d0) : one;
        const __m256d f = _mm256_setr_pd(fa.real(), fa.imag(), fb.real(), fb.imag());
        store2(amps + i, cmul(f, load2(amps + i)));
    }
}

void apply_cnot(cplx* amps, int nq, int control, int target) {
    const std::uint64_t dim = std::uint64_t{1} << nq;
    const std::uint64_t cbit = std::uint64_t{1} << control;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    if (control > 0 && target > 0) {
        for (std::uint64_t i = 0; i < dim; i += 2)
            if ((i & cbit) && !(i & tbit)) {
                const __m256d a = load2(amps + i);
                const __m256d b = load2(amps + (i | tbit));
                store2(amps + i, b);
                store2(amps + (i | tbit), a);
            }
        return;
    }
    if (target == 0) {
        // Swap the two halves of each register whose control bit is set.
        for (std::uint64_t i = 0; i < dim; i += 2)
            if (i & cbit) {
                const __m256d a = load2(amps + i);
                store2(amps + i, _mm256_permute2f128_pd(a, a, 0x01));
            }
        return;
    }
    // control == 0: only odd indices move.
    for (std::uint64_t i = 1; i < dim; i += 2)
        if (!(i & tbit)) {
            const cplx t = amps[i];
            amps[i] = amps[i | tbit];
            amps[i | tbit] = t;
        }
}

} // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{"avx2", apply_1q, apply_diag, apply_cnot};
    return &table;
}

} // namespace hamsim::kernels
