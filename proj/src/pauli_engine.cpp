#include "flagft/pauli_engine.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace flagft {

namespace {

int count_sites(const std::vector<Instruction>& block) {
    int n = 0;
    for (const Instruction& ins : block) {
        ++n;
        if (ins.kind == OpKind::Branch)
            n += count_sites(ins.then_block) + count_sites(ins.else_block);
    }
    return n;
}

void add_pauli(PauliError& e, int qubit, Pauli p) {
    if (p == Pauli::X || p == Pauli::Y) e.x.flip(qubit);
    if (p == Pauli::Z || p == Pauli::Y) e.z.flip(qubit);
}

void collect_branch_ids(const std::vector<Instruction>& block, std::set<int>& ids) {
    for (const Instruction& ins : block) {
        if (ins.kind == OpKind::Branch) {
            ids.insert(ins.outcome);
            collect_branch_ids(ins.then_block, ids);
            collect_branch_ids(ins.else_block, ids);
        }
    }
}

struct Walker {
    const Circuit& c;
    const std::map<int, PauliError>& site_pauli;
    const std::map<int, bool>& site_flip;
    const std::set<int>& branch_ids;

    PauliError frame;
    std::string branch_bits;
    std::string flag_bits;
    bool syndrome_flip = false;
    std::map<int, bool> outcomes;

    void run(const std::vector<Instruction>& block, int first_site) {
        int site = first_site;
        for (const Instruction& ins : block) {
            int here = site++;
            switch (ins.kind) {
                case OpKind::PrepZ:
                case OpKind::PrepX:
                case OpKind::Reset:
                    frame.x.reset(ins.q0);
                    frame.z.reset(ins.q0);
                    break;
                case OpKind::Cnot:
                    // X on control spreads to target, Z on target to control.
                    frame.x.set(ins.q1, frame.x.test(ins.q1) ^ frame.x.test(ins.q0));
                    frame.z.set(ins.q0, frame.z.test(ins.q0) ^ frame.z.test(ins.q1));
                    break;
                case OpKind::MeasZ:
                case OpKind::MeasX: {
                    bool value = ins.kind == OpKind::MeasZ ? frame.x.test(ins.q0)
                                                           : frame.z.test(ins.q0);
                    if (auto it = site_flip.find(here); it != site_flip.end())
                        value ^= it->second;
                    outcomes[ins.outcome] = value;
                    if (!branch_ids.count(ins.outcome)) {
                        if (c.role_of(ins.q0) == QubitRole::Syndrome)
                            syndrome_flip = syndrome_flip || value;
                        else
                            flag_bits += value ? '1' : '0';
                    }
                    break;
                }
                case OpKind::Branch:
                    break;
            }
            if (auto it = site_pauli.find(here); it != site_pauli.end()) frame ^= it->second;
            if (ins.kind == OpKind::Branch) {
                int then_n = count_sites(ins.then_block);
                int else_n = count_sites(ins.else_block);
                bool taken = outcomes.at(ins.outcome);
                branch_bits += taken ? '1' : '0';
                if (taken)
                    run(ins.then_block, site);
                else
                    run(ins.else_block, site + then_n);
                site += then_n + else_n;
            }
        }
    }
};

}  // namespace

PropagationResult propagate(const Circuit& c, std::span<const FaultLocation> faults) {
    std::vector<const Instruction*> by_site(site_count(c), nullptr);
    for_each_site(c, [&](const Instruction& ins, int site) { by_site[site] = &ins; });

    std::map<int, PauliError> site_pauli;
    std::map<int, bool> site_flip;
    for (const FaultLocation& f : faults) {
        if (f.site < 0 || f.site >= static_cast<int>(by_site.size()))
            throw std::invalid_argument("fault at nonexistent site " + std::to_string(f.site));
        const Instruction& ins = *by_site[f.site];
        if (f.meas_flip) {
            if (ins.kind != OpKind::MeasZ && ins.kind != OpKind::MeasX)
                throw std::invalid_argument("outcome-flip fault on a non-measurement site");
            site_flip[f.site] = site_flip[f.site] ^ true;
            continue;
        }
        switch (ins.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX:
            case OpKind::Reset:
                if (f.p0 == Pauli::I || f.p1 != Pauli::I)
                    throw std::invalid_argument("prep/reset fault must be one single-qubit Pauli");
                add_pauli(site_pauli[f.site], ins.q0, f.p0);
                break;
            case OpKind::Cnot:
                if (f.p0 == Pauli::I && f.p1 == Pauli::I)
                    throw std::invalid_argument("trivial cnot fault");
                add_pauli(site_pauli[f.site], ins.q0, f.p0);
                add_pauli(site_pauli[f.site], ins.q1, f.p1);
                break;
            case OpKind::MeasZ:
            case OpKind::MeasX:
                throw std::invalid_argument("measurement faults are outcome flips");
            case OpKind::Branch:
                throw std::invalid_argument("faults cannot target a branch pseudo-site");
        }
    }

    std::set<int> branch_ids;
    collect_branch_ids(c.instructions, branch_ids);
    Walker w{c, site_pauli, site_flip, branch_ids};
    w.run(c.instructions, 0);

    PropagationResult r;
    r.frame = w.frame;
    r.branch_bits = w.branch_bits;
    r.flag_bits = w.flag_bits;
    r.syndrome_flip = w.syndrome_flip;
    return r;
}

namespace {

bool mask_less(const QubitMask& a, const QubitMask& b) {
    for (int i = kMaxQubits - 1; i >= 0; --i)
        if (a.test(i) != b.test(i)) return b.test(i);
    return false;
}

}  // namespace

ReducedError reduce_mod_stabilizers(const PauliError& data_error, ContextKind context,
                                    int num_data) {
    if (context == ContextKind::None)
        throw std::invalid_argument("reduce_mod_stabilizers: no stabilizer context declared");
    ReducedError r;
    r.error = data_error.on_data(num_data);

    // X part modulo X^w: take the lighter of the mask and its complement.
    QubitMask full;
    for (int i = 0; i < num_data; ++i) full.set(i);
    QubitMask comp = r.error.x ^ full;
    if (comp.count() < r.error.x.count() ||
        (comp.count() == r.error.x.count() && mask_less(comp, r.error.x)))
        r.error.x = comp;
    r.x_weight = static_cast<int>(r.error.x.count());

    if (context == ContextKind::Cat) {
        // Any even Z set is a product of Z_i Z_{i+1}; odd sets reduce to Z_1.
        bool odd = r.error.z.count() % 2 != 0;
        r.error.z.reset();
        if (odd) r.error.z.set(0);
        r.z_weight = odd ? 1 : 0;
    } else {
        r.z_weight = static_cast<int>(r.error.z.count());
    }
    return r;
}

}  // namespace flagft
