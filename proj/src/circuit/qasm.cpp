#include "hamsim/circuit.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hamsim {

namespace {

std::string fmt_angle(double a) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", a);
    return buf;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_error(int line, const std::string& msg) {
    throw std::invalid_argument("qasm line " + std::to_string(line) + ": " + msg);
}

int parse_int(std::string_view s, int line) {
    int v = 0;
    s = trim(s);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        parse_error(line, "bad integer '" + std::string(s) + "'");
    return v;
}

double parse_double(std::string_view s, int line) {
    double v = 0;
    s = trim(s);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        parse_error(line, "bad angle '" + std::string(s) + "'");
    return v;
}

// "q[3]" -> 3
int parse_qubit(std::string_view s, int line) {
    s = trim(s);
    if (s.size() < 4 || s.substr(0, 2) != "q[" || s.back() != ']')
        parse_error(line, "bad qubit operand '" + std::string(s) + "'");
    return parse_int(s.substr(2, s.size() - 3), line);
}

} // namespace

std::string export_qasm(const Circuit& c) {
    std::ostringstream os;
    os << "OPENQASM 3;\n"
       << "include \"stdgates.inc\";\n"
       << "qubit[" << c.num_qubits() << "] q;\n";
    for (const Gate& g : c.gates()) {
        const int t = g.targets[0];
        switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
            os << to_string(g.kind) << " q[" << t << "];\n";
            break;
        case GateKind::Phase:
        case GateKind::RZ:
        case GateKind::RX:
            os << to_string(g.kind) << '(' << fmt_angle(g.angle) << ") q[" << t << "];\n";
            break;
        case GateKind::CNOT:
            os << "cx q[" << g.controls[0] << "], q[" << t << "];\n";
            break;
        case GateKind::MCRZ:
            throw std::invalid_argument("export_qasm: circuit contains an undecomposed multi-controlled RZ");
        }
    }
    return os.str();
}

Circuit parse_qasm(std::string_view text) {
    Circuit c;
    bool have_header = false, have_register = false;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (auto cpos = line.find("//"); cpos != std::string_view::npos)
            line = line.substr(0, cpos);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.back() != ';')
            parse_error(line_no, "missing ';'");
        line = trim(line.substr(0, line.size() - 1));

        if (!have_header) {
            if (line != "OPENQASM 3" && line != "OPENQASM 3.0")
                parse_error(line_no, "expected 'OPENQASM 3;' header");
            have_header = true;
            continue;
        }
        if (line.substr(0, 7) == "include")
            continue;
        if (line.substr(0, 6) == "qubit[") {
            if (have_register)
                parse_error(line_no, "only one qubit register is supported");
            const auto close = line.find(']');
            if (close == std::string_view::npos || trim(line.substr(close + 1)) != "q")
                parse_error(line_no, "expected 'qubit[N] q;'");
            c = Circuit(parse_int(line.substr(6, close - 6), line_no));
            have_register = true;
            continue;
        }
        if (!have_register)
            parse_error(line_no, "gate before qubit declaration");

        std::size_t name_end = 0;
        while (name_end < line.size() && std::isalpha(static_cast<unsigned char>(line[name_end])))
            ++name_end;
        const std::string name(line.substr(0, name_end));
        std::string_view rest = trim(line.substr(name_end));
        double angle = 0.0;
        if (!rest.empty() && rest.front() == '(') {
            const auto close = rest.find(')');
            if (close == std::string_view::npos)
                parse_error(line_no, "unclosed '('");
            angle = parse_double(rest.substr(1, close - 1), line_no);
            rest = trim(rest.substr(close + 1));
        }
        try {
            if (name == "h") c.h(parse_qubit(rest, line_no));
            else if (name == "x") c.x(parse_qubit(rest, line_no));
            else if (name == "p") c.phase(parse_qubit(rest, line_no), angle);
            else if (name == "rz") c.rz(parse_qubit(rest, line_no), angle);
            else if (name == "rx") c.rx(parse_qubit(rest, line_no), angle);
            else if (name == "cx") {
                const auto comma = rest.find(',');
                if (comma == std::string_view::npos)
                    parse_error(line_no, "cx needs two operands");
                c.cx(parse_qubit(rest.substr(0, comma), line_no), parse_qubit(rest.substr(comma + 1), line_no));
            } else {
                parse_error(line_no, "unsupported gate '" + name + "'");
            }
        } catch (const std::out_of_range& e) {
            parse_error(line_no, e.what());
        }
    }
    if (!have_header)
        throw std::invalid_argument("qasm: missing header");
    return c;
}

} // namespace hamsim
