#include "doctest.h"

#include <string>

#include "hamsim/circuit.hpp"
#include "hamsim/statevector.hpp"
#include "oracles.hpp"

using namespace hamsim;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_qasm(text);
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return {};
}

const std::string kHeader = "OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit[2] q;\n";

} // namespace

TEST_CASE("export format") {
    CHECK(export_qasm(Circuit(2)) == kHeader);
    CHECK(export_qasm(Circuit(2).cx(1, 0)) == kHeader + "cx q[1], q[0];\n");
    CHECK(export_qasm(Circuit(2).rz(1, 0.5).h(0)) == kHeader + "rz(0.5) q[1];\nh q[0];\n");
    CHECK_THROWS_AS(export_qasm(Circuit(2).mcrz({0}, 1, 0.1)), std::invalid_argument);
}

TEST_CASE("round trip preserves gates and the unitary") {
    const Circuit cs[] = {decompose(trotter_step_first(3, 0.1, 0.0)), decompose(trotter_step_second(4, 0.2, 0.3)),
                          Circuit(3).h(0).x(1).phase(2, -1.0 / 3).rx(0, 1e-17).cx(2, 0)};
    for (const auto& c : cs) {
        const Circuit back = parse_qasm(export_qasm(c));
        CHECK(back == c); // %.17g round-trips doubles exactly
        CHECK(oracle::max_abs(materialize(back) - materialize(c)) < 1e-9);
    }
}

TEST_CASE("parser accepts comments and blank lines") {
    const auto c = parse_qasm("// generated\nOPENQASM 3.0;\n\nqubit[1] q; // one\n  h q[0];\n");
    CHECK(c.num_qubits() == 1);
    CHECK(c.size() == 1);
}

TEST_CASE("parse errors name the offending line") {
    CHECK(error_of("qubit[2] q;\n").find("line 1") != std::string::npos);
    CHECK(error_of(kHeader + "h q[0]\n").find("line 4: missing ';'") != std::string::npos);
    CHECK(error_of(kHeader + "h q[0];\nccx q[0], q[1];\n").find("line 5: unsupported gate") != std::string::npos);
    CHECK(error_of(kHeader + "rz(abc) q[0];\n").find("line 4: bad angle") != std::string::npos);
    CHECK(error_of(kHeader + "x q[7];\n").find("line 4") != std::string::npos);
    CHECK(error_of("OPENQASM 3;\nh q[0];\n").find("line 2: gate before qubit declaration") != std::string::npos);
    CHECK(error_of(kHeader + "qubit[2] q;\n").find("line 4") != std::string::npos);
    CHECK(error_of("").find("missing header") != std::string::npos);
}
