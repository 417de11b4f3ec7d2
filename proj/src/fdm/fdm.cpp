#include "hamsim/fdm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hamsim {

namespace {

struct Grid {
    int d;
    std::size_t nodes;       ///< per axis
    std::size_t total;
    std::size_t stride(int axis) const { // axis is 1-based, axis 1 outermost
        std::size_t s = 1;
        for (int a = axis; a < d; ++a)
            s *= nodes;
        return s;
    }
};

Grid make_grid(std::size_t total, int d) {
    if (d < 1 || d > 3)
        throw std::invalid_argument("fdm: dimension must be 1, 2 or 3");
    const auto per_axis = std::size_t(std::llround(std::pow(double(total), 1.0 / d)));
    std::size_t check = 1;
    for (int a = 0; a < d; ++a)
        check *= per_axis;
    if (total == 0 || check != total || (per_axis & (per_axis - 1)) != 0 || per_axis < 2)
        throw std::invalid_argument("fdm: " + std::to_string(total) + " nodes is not (2^n)^" + std::to_string(d));
    return {d, per_axis, total};
}

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x))
            throw std::invalid_argument(std::string("fdm: non-finite value in ") + what);
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x))
        throw std::invalid_argument(std::string("fdm: non-finite ") + what);
}

int step_count(double span, double dt, const char* what) {
    const double k = std::round(span / dt);
    if (std::abs(k * dt - span) > 1e-9 * std::max(1.0, std::abs(span)))
        throw std::invalid_argument(std::string("fdm: ") + what + " is not a multiple of dt");
    return int(k);
}

/// Steps at which to record, ascending.
std::vector<int> record_steps(const std::vector<double>& times, double dt, int total_steps) {
    std::vector<int> out;
    if (times.empty()) {
        for (int k = 0; k <= total_steps; ++k)
            out.push_back(k);
        return out;
    }
    for (double t : times) {
        require_finite(t, "record time");
        const int k = step_count(t, dt, "record time");
        if (k < 0 || k > total_steps)
            throw std::invalid_argument("fdm: record time outside [0, T]");
        out.push_back(k);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Value at node j + offset along one axis, padded by the boundary rule.
double at(const std::vector<double>& u, const Grid& g, std::size_t idx, int axis, long offset, BoundaryCondition bc) {
    const std::size_t s = g.stride(axis);
    const long nodes = long(g.nodes);
    const long j = long((idx / s) % g.nodes);
    const long jn = j + offset;
    const std::size_t base = idx - std::size_t(j) * s;
    if (jn >= 0 && jn < nodes)
        return u[base + std::size_t(jn) * s];
    switch (bc) {
    case BoundaryCondition::Dirichlet: return 0.0;
    case BoundaryCondition::Neumann: return u[base + std::size_t(jn < 0 ? 0 : nodes - 1) * s];
    case BoundaryCondition::Periodic: return u[base + std::size_t(((jn % nodes) + nodes) % nodes) * s];
    }
    return 0.0;
}

double central(const std::vector<double>& u, const Grid& g, std::size_t idx, int axis, double l, BoundaryCondition bc) {
    return (at(u, g, idx, axis, +1, bc) - at(u, g, idx, axis, -1, bc)) / (2.0 * l);
}

} // namespace

FdmTrajectory advect_fdm(const std::vector<double>& u0, const std::vector<double>& v, double l, double dt, double T,
                         BoundaryCondition bc, const std::vector<double>& record_times) {
    require_finite(u0, "u0");
    require_finite(v, "velocity");
    require_finite(l, "l");
    require_finite(dt, "dt");
    require_finite(T, "T");
    if (!(l > 0) || !(dt > 0) || !(T > 0))
        throw std::invalid_argument("fdm: l, dt and T must be positive");
    const Grid g = make_grid(u0.size(), int(v.size()));
    const int steps = step_count(T, dt, "T");
    const std::vector<int> rec = record_steps(record_times, dt, steps);

    FdmTrajectory tr;
    double vmax = 0.0;
    for (double x : v)
        vmax = std::max(vmax, std::abs(x));
    if (vmax > 0 && dt > l / vmax) {
        std::ostringstream os;
        os << "CFL: dt=" << dt << " exceeds l/max|v|=" << l / vmax;
        tr.warnings.push_back(os.str());
    }

    std::vector<double> u = u0, next(u0.size());
    std::size_t ri = 0;
    auto record = [&](int k) {
        while (ri < rec.size() && rec[ri] == k) {
            tr.times.push_back(k * dt);
            tr.u.push_back(u);
            ++ri;
        }
    };
    record(0);
    for (int k = 1; k <= steps; ++k) {
        for (std::size_t i = 0; i < g.total; ++i) {
            double flux = 0.0;
            for (int a = 1; a <= g.d; ++a)
                if (v[a - 1] != 0.0)
                    flux += v[a - 1] * central(u, g, i, a, l, bc);
            next[i] = u[i] - dt * flux;
        }
        u.swap(next);
        record(k);
    }
    return tr;
}

std::vector<double> wave_gradient(const std::vector<double>& u, int d, int axis, double l, WaveBoundary bc) {
    const Grid g = make_grid(u.size(), d);
    if (axis < 1 || axis > d)
        throw std::out_of_range("wave_gradient: axis out of range");
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < g.total; ++i) {
        if (bc == WaveBoundary::Periodic)
            out[i] = central(u, g, i, axis, l, BoundaryCondition::Periodic);
        else
            out[i] = (u[i] - at(u, g, i, axis, -1, BoundaryCondition::Dirichlet)) / l;
    }
    return out;
}

std::vector<double> wave_laplacian(const std::vector<double>& u, int d, double l, WaveBoundary bc, WaveLaplacian lap) {
    const Grid g = make_grid(u.size(), d);
    std::vector<double> out(u.size(), 0.0);
    if (lap == WaveLaplacian::CentralSquared) {
        if (bc != WaveBoundary::Periodic)
            throw std::invalid_argument("wave_laplacian: the squared central difference is defined for periodic bc");
        for (int a = 1; a <= d; ++a) {
            const std::vector<double> du = wave_gradient(u, d, a, l, bc);
            const std::vector<double> ddu = wave_gradient(du, d, a, l, bc);
            for (std::size_t i = 0; i < g.total; ++i)
                out[i] += ddu[i];
        }
        return out;
    }
    for (std::size_t i = 0; i < g.total; ++i)
        for (int a = 1; a <= d; ++a) {
            double left, right;
            if (bc == WaveBoundary::Periodic) {
                left = at(u, g, i, a, -1, BoundaryCondition::Periodic);
                right = at(u, g, i, a, +1, BoundaryCondition::Periodic);
            } else {
                left = at(u, g, i, a, -1, BoundaryCondition::Dirichlet);
                right = at(u, g, i, a, +1, BoundaryCondition::Neumann);
            }
            out[i] += (right - 2.0 * u[i] + left) / (l * l);
        }
    return out;
}

FdmTrajectory wave_fdm(const std::vector<double>& u0, const std::vector<double>& dudt0, int d, double c, double l,
                       double dt, double T, WaveBoundary bc, WaveLaplacian lap, const std::vector<double>& record_times) {
    require_finite(u0, "u0");
    require_finite(dudt0, "dudt0");
    require_finite(c, "c");
    require_finite(l, "l");
    require_finite(dt, "dt");
    require_finite(T, "T");
    if (!(l > 0) || !(dt > 0) || !(T > 0))
        throw std::invalid_argument("fdm: l, dt and T must be positive");
    if (u0.size() != dudt0.size())
        throw std::invalid_argument("fdm: u0 and dudt0 lengths differ");
    make_grid(u0.size(), d);
    const int steps = step_count(T, dt, "T");
    const std::vector<int> rec = record_steps(record_times, dt, steps);

    FdmTrajectory tr;
    if (c > 0 && dt > l / (c * std::sqrt(double(d)))) {
        std::ostringstream os;
        os << "CFL: dt=" << dt << " exceeds l/(c*sqrt(d))=" << l / (c * std::sqrt(double(d)));
        tr.warnings.push_back(os.str());
    }

    std::vector<double> u = u0, w = dudt0;
    std::size_t ri = 0;
    auto record = [&](int k) {
        while (ri < rec.size() && rec[ri] == k) {
            tr.times.push_back(k * dt);
            tr.u.push_back(u);
            tr.dudt.push_back(w);
            ++ri;
        }
    };
    record(0);
    const double c2 = c * c;
    for (int k = 1; k <= steps; ++k) {
        for (std::size_t i = 0; i < u.size(); ++i)
            u[i] += dt * w[i];
        if (c2 != 0.0) {
            const std::vector<double> lu = wave_laplacian(u, d, l, bc, lap);
            for (std::size_t i = 0; i < u.size(); ++i)
                w[i] += dt * c2 * lu[i];
        }
        record(k);
    }
    return tr;
}

} // namespace hamsim
