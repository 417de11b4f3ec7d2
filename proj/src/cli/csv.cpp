#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "hamsim/experiment.hpp"

namespace hamsim {

std::string csv_number(double x) {
    if (x == 0.0)
        return "0"; // folds -0 so that golden files do not depend on its sign
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

} // namespace

void write_report_csv(const std::filesystem::path& path, const std::vector<TrotterReport>& reports) {
    std::ofstream out = open_csv(path);
    out << "kind,d,n,order,tau,measured,bound,ratio,cnots_analytic,r_thm1,r_thm2,lambda,cnots_decomposed\n";
    for (const auto& r : reports)
        out << r.kind << ',' << r.d << ',' << r.n << ',' << (r.order == Order::First ? 1 : 2) << ','
            << csv_number(r.tau) << ',' << csv_number(r.measured_error) << ',' << csv_number(r.bound) << ','
            << csv_number(r.ratio()) << ',' << r.cnots_analytic << ',' << r.r_thm1 << ',' << r.r_thm2 << ','
            << (r.lambda ? csv_number(*r.lambda) : std::string()) << ',' << r.cnots_decomposed << '\n';
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

void write_commutator_csv(const std::filesystem::path& path, const std::vector<CommutatorReport>& reports) {
    std::ofstream out = open_csv(path);
    out << "n,lambda,identity,passed,max_deviation\n";
    for (const auto& rep : reports)
        for (const auto& c : rep.checks)
            out << rep.n << ',' << csv_number(rep.lambda) << ",\"" << c.name << "\"," << (c.passed ? 1 : 0) << ','
                << csv_number(c.max_deviation) << '\n';
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

} // namespace hamsim
