#include "flagft/circuit.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flagft {

bool operator==(const Instruction& a, const Instruction& b) {
    return a.kind == b.kind && a.q0 == b.q0 && a.q1 == b.q1 && a.outcome == b.outcome &&
           a.then_block == b.then_block && a.else_block == b.else_block;
}

bool operator==(const Circuit& a, const Circuit& b) {
    return a.num_data == b.num_data && a.has_syndrome == b.has_syndrome &&
           a.num_flags == b.num_flags && a.context == b.context &&
           a.instructions == b.instructions;
}

QubitRole Circuit::role_of(int qubit) const {
    if (qubit < num_data) return QubitRole::Data;
    if (has_syndrome && qubit == num_data) return QubitRole::Syndrome;
    return QubitRole::Flag;
}

std::string Circuit::qubit_name(int qubit) const {
    switch (role_of(qubit)) {
        case QubitRole::Data: return std::to_string(qubit + 1);
        case QubitRole::Syndrome: return "s0";
        case QubitRole::Flag:
            return "f" + std::to_string(qubit - num_data - (has_syndrome ? 1 : 0));
    }
    return "?";
}

int Circuit::qubit_from_name(const std::string& name) const {
    if (name.empty()) return -1;
    if (name == "s0") return has_syndrome ? syndrome_id() : -1;
    if (name[0] == 'f') {
        int j;
        try {
            j = std::stoi(name.substr(1));
        } catch (...) {
            return -1;
        }
        return (j >= 0 && j < num_flags) ? flag_id(j) : -1;
    }
    if (!std::isdigit(static_cast<unsigned char>(name[0]))) return -1;
    int i;
    try {
        i = std::stoi(name);
    } catch (...) {
        return -1;
    }
    return (i >= 1 && i <= num_data) ? data_id(i) : -1;
}

namespace {

void validate_block(const Circuit& c, const std::vector<Instruction>& block,
                    std::set<int>& outcomes_seen, std::set<int>& defined,
                    std::vector<bool>& measured) {
    auto check_qubit = [&](int q) {
        if (q < 0 || q >= c.num_qubits())
            throw std::invalid_argument("instruction references qubit id " + std::to_string(q) +
                                        " outside the declared register");
    };
    for (const Instruction& ins : block) {
        switch (ins.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX:
            case OpKind::Reset:
                check_qubit(ins.q0);
                measured[ins.q0] = false;
                break;
            case OpKind::Cnot:
                check_qubit(ins.q0);
                check_qubit(ins.q1);
                if (ins.q0 == ins.q1)
                    throw std::invalid_argument("cnot control equals target");
                if (measured[ins.q0] || measured[ins.q1])
                    throw std::invalid_argument("qubit used after measurement without reset");
                break;
            case OpKind::MeasZ:
            case OpKind::MeasX:
                check_qubit(ins.q0);
                if (measured[ins.q0])
                    throw std::invalid_argument("qubit measured twice without reset");
                if (ins.outcome < 0)
                    throw std::invalid_argument("measurement without outcome id");
                if (!outcomes_seen.insert(ins.outcome).second)
                    throw std::invalid_argument("duplicate outcome id o" +
                                                std::to_string(ins.outcome));
                defined.insert(ins.outcome);
                measured[ins.q0] = true;
                break;
            case OpKind::Branch: {
                if (!defined.count(ins.outcome))
                    throw std::invalid_argument(
                        "branch condition o" + std::to_string(ins.outcome) +
                        " is not measured on every path reaching it");
                std::set<int> def_then = defined, def_else = defined;
                std::vector<bool> meas_then = measured, meas_else = measured;
                validate_block(c, ins.then_block, outcomes_seen, def_then, meas_then);
                validate_block(c, ins.else_block, outcomes_seen, def_else, meas_else);
                defined.clear();
                for (int o : def_then)
                    if (def_else.count(o)) defined.insert(o);
                for (int q = 0; q < c.num_qubits(); ++q)
                    measured[q] = meas_then[q] || meas_else[q];
                break;
            }
        }
    }
}

}  // namespace

void Circuit::validate() const {
    if (num_data < 0 || num_flags < 0)
        throw std::invalid_argument("negative qubit counts");
    if (num_qubits() > kMaxQubits)
        throw std::invalid_argument("register exceeds " + std::to_string(kMaxQubits) + " qubits");
    std::set<int> outcomes_seen, defined;
    std::vector<bool> measured(num_qubits(), false);
    validate_block(*this, instructions, outcomes_seen, defined, measured);
}

PauliError PauliError::on_data(int n) const {
    PauliError e = *this;
    for (int i = n; i < kMaxQubits; ++i) {
        e.x.reset(i);
        e.z.reset(i);
    }
    return e;
}

int PauliError::x_weight(int n) const {
    return static_cast<int>(on_data(n).x.count());
}

int PauliError::z_weight(int n) const {
    return static_cast<int>(on_data(n).z.count());
}

std::string PauliError::str(int n) const {
    std::string sx, sz;
    for (int i = 0; i < n; ++i) {
        if (x.test(i)) sx += " " + std::to_string(i + 1);
        if (z.test(i)) sz += " " + std::to_string(i + 1);
    }
    if (sx.empty() && sz.empty()) return "I";
    std::string out;
    if (!sx.empty()) out += "X" + sx;
    if (!sz.empty()) out += (out.empty() ? "" : " ") + std::string("Z") + sz;
    return out;
}

PauliError PauliError::parse_pauli(const std::string& s, int n) {
    PauliError e;
    std::istringstream in(s);
    std::string tok;
    QubitMask* current = nullptr;
    while (in >> tok) {
        if (tok == "I") {
            current = nullptr;
        } else if (tok == "X") {
            current = &e.x;
        } else if (tok == "Z") {
            current = &e.z;
        } else {
            int i;
            try {
                i = std::stoi(tok);
            } catch (...) {
                throw std::invalid_argument("bad pauli token '" + tok + "'");
            }
            if (!current) throw std::invalid_argument("pauli index before X/Z marker");
            if (i < 1 || i > n)
                throw std::invalid_argument("pauli index " + tok + " outside data range");
            current->set(i - 1);
        }
    }
    return e;
}

bool PauliError::operator<(const PauliError& o) const {
    for (int i = kMaxQubits - 1; i >= 0; --i) {
        if (x.test(i) != o.x.test(i)) return x.test(i) < o.x.test(i);
    }
    for (int i = kMaxQubits - 1; i >= 0; --i) {
        if (z.test(i) != o.z.test(i)) return z.test(i) < o.z.test(i);
    }
    return false;
}

int PatternKey::surprise_weight() const {
    auto ones = [](const std::string& s) {
        int n = 0;
        for (char ch : s)
            if (ch == '1') ++n;
        return n;
    };
    return ones(branch) + ones(flags);
}

const PauliError* CorrectionTable::find(const PatternKey& k) const {
    auto it = entries.find(k);
    return it == entries.end() ? nullptr : &it->second;
}

std::string FaultLocation::str() const {
    static const char* names = "IXZY";
    std::string s = "site " + std::to_string(site);
    if (meas_flip) return s + " flip";
    s += " ";
    s += names[static_cast<int>(p0)];
    if (p1 != Pauli::I || p0 == Pauli::I) s += names[static_cast<int>(p1)];
    return s;
}

namespace {

void walk_sites(const std::vector<Instruction>& block, int& next,
                const std::function<void(const Instruction&, int)>& fn) {
    for (const Instruction& ins : block) {
        int site = next++;
        fn(ins, site);
        if (ins.kind == OpKind::Branch) {
            walk_sites(ins.then_block, next, fn);
            walk_sites(ins.else_block, next, fn);
        }
    }
}

}  // namespace

void for_each_site(const Circuit& c,
                   const std::function<void(const Instruction&, int site)>& fn) {
    int next = 0;
    walk_sites(c.instructions, next, fn);
}

int site_count(const Circuit& c) {
    int n = 0;
    for_each_site(c, [&](const Instruction&, int) { ++n; });
    return n;
}

std::vector<FaultLocation> enumerate_fault_locations(const Circuit& c) {
    c.validate();
    std::vector<FaultLocation> locs;
    const Pauli singles[] = {Pauli::X, Pauli::Z, Pauli::Y};
    const Pauli all[] = {Pauli::I, Pauli::X, Pauli::Z, Pauli::Y};
    for_each_site(c, [&](const Instruction& ins, int site) {
        switch (ins.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX:
            case OpKind::Reset:
                for (Pauli p : singles) locs.push_back({site, p, Pauli::I, false});
                break;
            case OpKind::Cnot:
                for (Pauli a : all)
                    for (Pauli b : all) {
                        if (a == Pauli::I && b == Pauli::I) continue;
                        locs.push_back({site, a, b, false});
                    }
                break;
            case OpKind::MeasZ:
            case OpKind::MeasX:
                locs.push_back({site, Pauli::I, Pauli::I, true});
                break;
            case OpKind::Branch:
                break;
        }
    });
    return locs;
}

namespace {

int depth_block(const std::vector<Instruction>& block, std::vector<int>& layer,
                const std::string& bits, size_t& cursor) {
    int maxl = 0;
    for (const Instruction& ins : block) {
        if (ins.kind == OpKind::Cnot) {
            int l = std::max(layer[ins.q0], layer[ins.q1]) + 1;
            layer[ins.q0] = layer[ins.q1] = l;
            maxl = std::max(maxl, l);
        } else if (ins.kind == OpKind::Branch) {
            if (cursor >= bits.size())
                throw std::invalid_argument(
                    "depth: adaptive circuit requires a branch path selection");
            bool taken = bits[cursor++] == '1';
            maxl = std::max(maxl, depth_block(taken ? ins.then_block : ins.else_block,
                                              layer, bits, cursor));
        }
    }
    return maxl;
}

}  // namespace

int depth(const Circuit& c, const std::string& branch_bits) {
    std::vector<int> layer(c.num_qubits(), 0);
    size_t cursor = 0;
    return depth_block(c.instructions, layer, branch_bits, cursor);
}

namespace {

void emit_block(const Circuit& c, const std::vector<Instruction>& block, int indent,
                std::string& out) {
    std::string pad(indent, ' ');
    for (const Instruction& ins : block) {
        switch (ins.kind) {
            case OpKind::PrepZ:
                out += pad + "prepz " + c.qubit_name(ins.q0) + "\n";
                break;
            case OpKind::PrepX:
                out += pad + "prepx " + c.qubit_name(ins.q0) + "\n";
                break;
            case OpKind::Reset:
                out += pad + "reset " + c.qubit_name(ins.q0) + "\n";
                break;
            case OpKind::Cnot:
                out += pad + "cnot " + c.qubit_name(ins.q0) + " " + c.qubit_name(ins.q1) + "\n";
                break;
            case OpKind::MeasZ:
                out += pad + "measz " + c.qubit_name(ins.q0) + " -> o" +
                       std::to_string(ins.outcome) + "\n";
                break;
            case OpKind::MeasX:
                out += pad + "measx " + c.qubit_name(ins.q0) + " -> o" +
                       std::to_string(ins.outcome) + "\n";
                break;
            case OpKind::Branch:
                out += pad + "if o" + std::to_string(ins.outcome) + " {\n";
                emit_block(c, ins.then_block, indent + 2, out);
                out += pad + "}\n";
                if (!ins.else_block.empty()) {
                    out += pad + "else {\n";
                    emit_block(c, ins.else_block, indent + 2, out);
                    out += pad + "}\n";
                }
                break;
        }
    }
}

const char* context_name(ContextKind k) {
    switch (k) {
        case ContextKind::None: return "none";
        case ContextKind::SyndromeXw: return "syndrome";
        case ContextKind::Cat: return "cat";
    }
    return "none";
}

}  // namespace

std::string serialize(const Circuit& c, const CorrectionTable& table, bool accept_all_zeros) {
    std::string out;
    out += std::string("context ") + context_name(c.context) + " " +
           std::to_string(c.num_data) + "\n";
    if (c.num_data > 0) out += "data 1.." + std::to_string(c.num_data) + "\n";
    if (c.has_syndrome) out += "syndrome s0\n";
    if (c.num_flags == 1)
        out += "flag f0\n";
    else if (c.num_flags > 1)
        out += "flag f0..f" + std::to_string(c.num_flags - 1) + "\n";
    emit_block(c, c.instructions, 0, out);
    for (const auto& [key, corr] : table.entries) {
        std::string bp = key.branch.empty() ? "-" : key.branch;
        out += "correct " + bp + "/" + key.flags + " : " + corr.str(c.num_data) + "\n";
    }
    if (accept_all_zeros) out += "accept all-zeros\n";
    return out;
}

namespace {

struct Token {
    std::string text;
    int col = 0;
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> toks;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        toks.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return toks;
}

[[noreturn]] void fail(int line, int col, const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line) + ", col " +
                                std::to_string(col) + ": " + msg);
}

struct Frame {
    Instruction branch;
    int state = 0;  // 0 filling then, 1 awaiting else, 2 filling else
};

}  // namespace

ParsedCircuit parse(const std::string& text) {
    ParsedCircuit result;
    Circuit& c = result.circuit;
    bool decls_done = false;
    bool context_seen = false;
    std::vector<Frame> stack;
    std::set<int> outcome_defined;

    auto active_block = [&]() -> std::vector<Instruction>* {
        if (stack.empty()) return &c.instructions;
        return stack.back().state == 2 ? &stack.back().branch.else_block
                                       : &stack.back().branch.then_block;
    };
    auto close_frame = [&]() {
        Frame f = std::move(stack.back());
        stack.pop_back();
        active_block()->push_back(std::move(f.branch));
    };
    auto resolve_qubit = [&](const Token& t, int lineno) {
        int q = c.qubit_from_name(t.text);
        if (q < 0) fail(lineno, t.col, "undeclared qubit '" + t.text + "'");
        return q;
    };
    auto parse_outcome = [&](const Token& t, int lineno) {
        if (t.text.size() < 2 || t.text[0] != 'o')
            fail(lineno, t.col, "expected outcome id, got '" + t.text + "'");
        try {
            return std::stoi(t.text.substr(1));
        } catch (...) {
            fail(lineno, t.col, "bad outcome id '" + t.text + "'");
        }
    };

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty() || toks[0].text[0] == '#') continue;
        const std::string& head = toks[0].text;

        if (!stack.empty() && stack.back().state == 1 && head != "else") close_frame();

        if (head == "context") {
            if (context_seen) fail(lineno, toks[0].col, "duplicate context line");
            if (toks.size() != 3) fail(lineno, toks[0].col, "context needs kind and data count");
            context_seen = true;
            if (toks[1].text == "none")
                c.context = ContextKind::None;
            else if (toks[1].text == "syndrome")
                c.context = ContextKind::SyndromeXw;
            else if (toks[1].text == "cat")
                c.context = ContextKind::Cat;
            else
                fail(lineno, toks[1].col, "unknown context '" + toks[1].text + "'");
            try {
                c.num_data = std::stoi(toks[2].text);
            } catch (...) {
                fail(lineno, toks[2].col, "bad data count");
            }
        } else if (head == "data") {
            if (decls_done) fail(lineno, toks[0].col, "declaration after instructions");
            if (toks.size() != 2) fail(lineno, toks[0].col, "data needs a range");
            auto dots = toks[1].text.find("..");
            if (dots == std::string::npos || toks[1].text.substr(0, dots) != "1")
                fail(lineno, toks[1].col, "data range must be 1..w");
            int w;
            try {
                w = std::stoi(toks[1].text.substr(dots + 2));
            } catch (...) {
                fail(lineno, toks[1].col, "bad data range");
            }
            if (context_seen && w != c.num_data)
                fail(lineno, toks[1].col, "data range disagrees with context data count");
            c.num_data = w;
        } else if (head == "syndrome") {
            if (decls_done) fail(lineno, toks[0].col, "declaration after instructions");
            c.has_syndrome = true;
        } else if (head == "flag") {
            if (decls_done) fail(lineno, toks[0].col, "declaration after instructions");
            if (toks.size() != 2) fail(lineno, toks[0].col, "flag needs a name or range");
            const std::string& spec = toks[1].text;
            auto dots = spec.find("..");
            try {
                if (dots == std::string::npos) {
                    if (spec != "f0") fail(lineno, toks[1].col, "single flag must be f0");
                    c.num_flags = 1;
                } else {
                    if (spec.substr(0, dots) != "f0" || spec[dots + 2] != 'f')
                        fail(lineno, toks[1].col, "flag range must be f0..fK");
                    c.num_flags = std::stoi(spec.substr(dots + 3)) + 1;
                }
            } catch (const std::invalid_argument&) {
                throw;
            } catch (...) {
                fail(lineno, toks[1].col, "bad flag range");
            }
        } else if (head == "correct") {
            decls_done = true;
            size_t colon = 0;
            while (colon < toks.size() && toks[colon].text != ":") ++colon;
            if (toks.size() < 4 || colon != 2)
                fail(lineno, toks[0].col, "correct needs '<branch>/<flags> : <pauli>'");
            auto slash = toks[1].text.find('/');
            if (slash == std::string::npos)
                fail(lineno, toks[1].col, "correction key needs '/'");
            PatternKey key;
            key.branch = toks[1].text.substr(0, slash);
            if (key.branch == "-") key.branch.clear();
            key.flags = toks[1].text.substr(slash + 1);
            for (char ch : key.branch + key.flags)
                if (ch != '0' && ch != '1')
                    fail(lineno, toks[1].col, "pattern key must be 0/1 bits");
            std::string pauli;
            for (size_t i = colon + 1; i < toks.size(); ++i) pauli += toks[i].text + " ";
            try {
                result.table.set(key, PauliError::parse_pauli(pauli, c.num_data));
            } catch (const std::exception& e) {
                fail(lineno, toks[colon + 1].col, e.what());
            }
        } else if (head == "accept") {
            decls_done = true;
            if (toks.size() != 2 || toks[1].text != "all-zeros")
                fail(lineno, toks[0].col, "expected 'accept all-zeros'");
            result.accept_all_zeros = true;
        } else if (head == "if") {
            decls_done = true;
            if (toks.size() != 3 || toks[2].text != "{")
                fail(lineno, toks[0].col, "expected 'if oK {'");
            int o = parse_outcome(toks[1], lineno);
            if (!outcome_defined.count(o))
                fail(lineno, toks[1].col, "branch on undefined outcome o" + std::to_string(o));
            Frame f;
            f.branch.kind = OpKind::Branch;
            f.branch.outcome = o;
            stack.push_back(std::move(f));
        } else if (head == "}") {
            if (stack.empty()) fail(lineno, toks[0].col, "unmatched '}'");
            if (stack.back().state == 2)
                close_frame();
            else
                stack.back().state = 1;
        } else if (head == "else") {
            if (toks.size() != 2 || toks[1].text != "{")
                fail(lineno, toks[0].col, "expected 'else {'");
            if (stack.empty() || stack.back().state != 1)
                fail(lineno, toks[0].col, "'else' without matching if-block");
            stack.back().state = 2;
        } else if (head == "prepz" || head == "prepx" || head == "reset") {
            decls_done = true;
            if (toks.size() != 2) fail(lineno, toks[0].col, head + " needs one qubit");
            Instruction ins;
            ins.kind = head == "prepz" ? OpKind::PrepZ
                     : head == "prepx" ? OpKind::PrepX
                                       : OpKind::Reset;
            ins.q0 = resolve_qubit(toks[1], lineno);
            active_block()->push_back(ins);
        } else if (head == "cnot") {
            decls_done = true;
            if (toks.size() != 3) fail(lineno, toks[0].col, "cnot needs control and target");
            Instruction ins;
            ins.kind = OpKind::Cnot;
            ins.q0 = resolve_qubit(toks[1], lineno);
            ins.q1 = resolve_qubit(toks[2], lineno);
            active_block()->push_back(ins);
        } else if (head == "measz" || head == "measx") {
            decls_done = true;
            if (toks.size() != 4 || toks[2].text != "->")
                fail(lineno, toks[0].col, head + " needs 'qubit -> oK'");
            Instruction ins;
            ins.kind = head == "measz" ? OpKind::MeasZ : OpKind::MeasX;
            ins.q0 = resolve_qubit(toks[1], lineno);
            ins.outcome = parse_outcome(toks[3], lineno);
            if (!outcome_defined.insert(ins.outcome).second)
                fail(lineno, toks[3].col, "duplicate outcome o" + std::to_string(ins.outcome));
            active_block()->push_back(ins);
        } else {
            fail(lineno, toks[0].col, "unknown directive '" + head + "'");
        }
    }
    while (!stack.empty() && stack.back().state == 1) close_frame();
    if (!stack.empty())
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ", col 1: unclosed if-block at end of input");
    c.validate();
    return result;
}

}  // namespace flagft
