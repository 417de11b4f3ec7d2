#pragma once

#include <complex>
#include <cstdint>

namespace hamsim::kernels {

using cplx = std::complex<double>;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
struct Mat2 {
    cplx m[4];
};

/// In-place gate kernels on a 2^nq amplitude array. Bit k of an index is
/// qubit k.
struct KernelTable {
    const char* name;
    void (*apply_1q)(cplx* amps, int nq, int target, const Mat2& u);
    /// Multiplies by d0 / d1 (target bit 0 / 1) where every bit of
    /// `control_mask` is set; other amplitudes are untouched.
    void (*apply_diag)(cplx* amps, int nq, std::uint64_t control_mask, int target, cplx d0, cplx d1);
    void (*apply_cnot)(cplx* amps, int nq, int control, int target);
};

const KernelTable& scalar_kernels();
/// nullptr unless the AVX2 variant was compiled in and the CPU supports it.
const KernelTable* avx2_kernels();
/// The table used by the simulator. AVX2 when available, unless the
/// HAMSIM_KERNELS environment variable is set to "scalar".
const KernelTable& active_kernels();

} // namespace hamsim::kernels
