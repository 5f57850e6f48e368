#include "zxopt/circuit.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace zxopt {
namespace {

struct ParseState {
    int line = 0;
    [[noreturn]] void fail(const std::string& msg) const {
        throw ZxError("qasm parse error (line " + std::to_string(line) + "): " + msg);
    }
};

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// "q[3]" -> 3
int parse_operand(const std::string& tok, const std::string& reg, const ParseState& st) {
    std::string t = strip(tok);
    auto lb = t.find('[');
    auto rb = t.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        st.fail("malformed operand '" + t + "'");
    if (t.substr(0, lb) != reg)
        st.fail("unknown register '" + t.substr(0, lb) + "'");
    try {
        return std::stoi(t.substr(lb + 1, rb - lb - 1));
    } catch (const std::exception&) {
        st.fail("malformed index in '" + t + "'");
    }
}

// Exact rational multiple of pi: [-] [k '*'] pi [/ d] | [-] pi '*' k [/ d] | 0
Phase parse_angle(const std::string& expr, const ParseState& st) {
    std::string e;
    for (char c : expr)
        if (!std::isspace(static_cast<unsigned char>(c)))
            e += c;
    if (e.empty())
        st.fail("empty angle");
    bool neg = false;
    if (e[0] == '-') {
        neg = true;
        e = e.substr(1);
    }
    if (e == "0")
        return Phase::zero();
    std::int64_t num = 1, den = 1;
    auto slash = e.find('/');
    std::string head = slash == std::string::npos ? e : e.substr(0, slash);
    if (slash != std::string::npos) {
        try {
            den = std::stoll(e.substr(slash + 1));
        } catch (const std::exception&) {
            st.fail("malformed angle denominator in '" + expr + "'");
        }
    }
    auto star = head.find('*');
    if (star != std::string::npos) {
        std::string a = head.substr(0, star), b = head.substr(star + 1);
        if (a == "pi")
            std::swap(a, b);
        if (b != "pi")
            st.fail("angle must be a rational multiple of pi: '" + expr + "'");
        try {
            num = std::stoll(a);
        } catch (const std::exception&) {
            st.fail("malformed angle numerator in '" + expr + "'");
        }
    } else if (head != "pi") {
        st.fail("angle must be a rational multiple of pi: '" + expr + "'");
    }
    return Phase::of(neg ? -num : num, den);
}

// Standard 7-T Clifford+T expansion.
void expand_ccx(Circuit& c, int a, int b, int t) {
    c.push(Gate::h(t));
    c.push(Gate::cnot(b, t));
    c.push(Gate::tdg(t));
    c.push(Gate::cnot(a, t));
    c.push(Gate::t(t));
    c.push(Gate::cnot(b, t));
    c.push(Gate::tdg(t));
    c.push(Gate::cnot(a, t));
    c.push(Gate::t(b));
    c.push(Gate::t(t));
    c.push(Gate::h(t));
    c.push(Gate::cnot(a, b));
    c.push(Gate::t(a));
    c.push(Gate::tdg(b));
    c.push(Gate::cnot(a, b));
}

void expand_ccz(Circuit& c, int a, int b, int t) {
    c.push(Gate::cnot(b, t));
    c.push(Gate::tdg(t));
    c.push(Gate::cnot(a, t));
    c.push(Gate::t(t));
    c.push(Gate::cnot(b, t));
    c.push(Gate::tdg(t));
    c.push(Gate::cnot(a, t));
    c.push(Gate::t(b));
    c.push(Gate::t(t));
    c.push(Gate::cnot(a, b));
    c.push(Gate::t(a));
    c.push(Gate::tdg(b));
    c.push(Gate::cnot(a, b));
}

} // namespace

Circuit parse_qasm(const std::string& text) {
    Circuit circ;
    bool have_qreg = false;
    std::string reg = "q";
    ParseState st;

    std::istringstream in(text);
    std::string raw;
    std::string pending; // statements may span lines until ';'
    int pending_line = 0;
    while (std::getline(in, raw)) {
        ++st.line;
        auto comment = raw.find("//");
        if (comment != std::string::npos)
            raw = raw.substr(0, comment);
        std::string rest = raw;
        while (true) {
            auto semi = rest.find(';');
            if (semi == std::string::npos) {
                std::string frag = strip(rest);
                if (!frag.empty()) {
                    if (pending.empty())
                        pending_line = st.line;
                    pending += frag + " ";
                }
                break;
            }
            std::string stmt = strip(pending + rest.substr(0, semi));
            int stmt_line = pending.empty() ? st.line : pending_line;
            pending.clear();
            rest = rest.substr(semi + 1);
            if (stmt.empty())
                continue;

            ParseState stmt_st{stmt_line};
            // keyword = up to first space or '('
            auto sep = stmt.find_first_of(" \t(");
            std::string kw = sep == std::string::npos ? stmt : stmt.substr(0, sep);

            if (kw == "OPENQASM" || kw == "include" || kw == "creg" || kw == "barrier")
                continue;
            if (kw == "qreg") {
                if (have_qreg)
                    stmt_st.fail("multiple qreg declarations");
                std::string decl = strip(stmt.substr(sep));
                auto lb = decl.find('[');
                auto rb = decl.find(']');
                if (lb == std::string::npos || rb == std::string::npos)
                    stmt_st.fail("malformed qreg declaration");
                reg = strip(decl.substr(0, lb));
                circ.n_qubits = std::stoi(decl.substr(lb + 1, rb - lb - 1));
                have_qreg = true;
                continue;
            }
            if (!have_qreg)
                stmt_st.fail("gate before qreg declaration");

            std::string angle;
            std::string args = sep == std::string::npos ? "" : stmt.substr(sep);
            if (kw == "rz") {
                auto lp = stmt.find('(');
                auto rp = stmt.find(')');
                if (lp == std::string::npos || rp == std::string::npos || rp < lp)
                    stmt_st.fail("malformed rz angle");
                angle = stmt.substr(lp + 1, rp - lp - 1);
                args = stmt.substr(rp + 1);
            }

            std::vector<int> qs;
            std::stringstream as(args);
            std::string tok;
            while (std::getline(as, tok, ',')) {
                tok = strip(tok);
                if (!tok.empty())
                    qs.push_back(parse_operand(tok, reg, stmt_st));
            }
            for (int q : qs)
                if (q < 0 || q >= circ.n_qubits)
                    stmt_st.fail("qubit index out of range");

            auto need = [&](std::size_t n) {
                if (qs.size() != n)
                    stmt_st.fail("gate '" + kw + "' expects " + std::to_string(n) + " operand(s)");
            };
            try {
                if (kw == "h") { need(1); circ.push(Gate::h(qs[0])); }
                else if (kw == "x") { need(1); circ.push(Gate::x(qs[0])); }
                else if (kw == "y") { need(1); circ.push(Gate::z(qs[0])); circ.push(Gate::x(qs[0])); }
                else if (kw == "z") { need(1); circ.push(Gate::z(qs[0])); }
                else if (kw == "s") { need(1); circ.push(Gate::s(qs[0])); }
                else if (kw == "sdg") { need(1); circ.push(Gate::sdg(qs[0])); }
                else if (kw == "t") { need(1); circ.push(Gate::t(qs[0])); }
                else if (kw == "tdg") { need(1); circ.push(Gate::tdg(qs[0])); }
                else if (kw == "rz") { need(1); circ.push(Gate::rz(qs[0], parse_angle(angle, stmt_st))); }
                else if (kw == "cx" || kw == "cnot") { need(2); circ.push(Gate::cnot(qs[0], qs[1])); }
                else if (kw == "cz") { need(2); circ.push(Gate::cz(qs[0], qs[1])); }
                else if (kw == "ccx") { need(3); expand_ccx(circ, qs[0], qs[1], qs[2]); }
                else if (kw == "ccz") { need(3); expand_ccz(circ, qs[0], qs[1], qs[2]); }
                else stmt_st.fail("unknown gate '" + kw + "'");
            } catch (const ZxError& e) {
                if (std::string(e.what()).rfind("qasm parse error", 0) == 0)
                    throw;
                stmt_st.fail(e.what());
            }
        }
    }
    if (!strip(pending).empty())
        st.fail("unterminated statement");
    if (!have_qreg)
        st.fail("missing qreg declaration");
    return circ;
}

Circuit parse_qasm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ZxError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_qasm(ss.str());
}

std::string emit_qasm(const Circuit& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.n_qubits << "];\n";
    auto q = [](int i) { return "q[" + std::to_string(i) + "]"; };
    for (const Gate& g : c.gates) {
        switch (g.kind) {
        case GateKind::H: out << "h " << q(g.q0); break;
        case GateKind::X: out << "x " << q(g.q0); break;
        case GateKind::Z: out << "z " << q(g.q0); break;
        case GateKind::S: out << "s " << q(g.q0); break;
        case GateKind::Sdg: out << "sdg " << q(g.q0); break;
        case GateKind::T: out << "t " << q(g.q0); break;
        case GateKind::Tdg: out << "tdg " << q(g.q0); break;
        case GateKind::Rz: out << "rz(" << g.phase.qasm_str() << ") " << q(g.q0); break;
        case GateKind::Cnot: out << "cx " << q(g.q0) << "," << q(g.q1); break;
        case GateKind::Cz: out << "cz " << q(g.q0) << "," << q(g.q1); break;
        }
        out << ";\n";
    }
    return out.str();
}

} // namespace zxopt
