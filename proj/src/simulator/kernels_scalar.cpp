#include "hamsim/kernels.hpp"

#include <utility>

namespace hamsim::kernels {

namespace {

// Plain multiply without the NaN/Inf recovery path of operator*.
inline cplx mul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void apply_1q(cplx* amps, int nq, int target, const Mat2& u) {
    const std::uint64_t dim = std::uint64_t{1} << nq;
    const std::uint64_t stride = std::uint64_t{1} << target;
    for (std::uint64_t base = 0; base < dim; base += 2 * stride)
        for (std::uint64_t i = base; i < base + stride; ++i) {
            const cplx a0 = amps[i], a1 = amps[i + stride];
            amps[i] = mul(u.m[0], a0) + mul(u.m[1], a1);
            amps[i + stride] = mul(u.m[2], a0) + mul(u.m[3], a1);
        }
}

void apply_diag(cplx* amps, int nq, std::uint64_t control_mask, int target, cplx d0, cplx d1) {
    const std::uint64_t dim = std::uint64_t{1} << nq;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & control_mask) == control_mask)
            amps[i] = mul(amps[i], (i & tbit) ? d1 : d0);
}

void apply_cnot(cplx* amps, int nq, int control, int target) {
    const std::uint64_t dim = std::uint64_t{1} << nq;
    const std::uint64_t cbit = std::uint64_t{1} << control;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & cbit) && !(i & tbit))
            std::swap(amps[i], amps[i | tbit]);
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", apply_1q, apply_diag, apply_cnot};
    return table;
}

} // namespace hamsim::kernels
