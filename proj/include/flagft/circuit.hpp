#pragma once

#include <bitset>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace flagft {

inline constexpr int kMaxQubits = 256;
using QubitMask = std::bitset<kMaxQubits>;

enum class QubitRole { Data, Syndrome, Flag };

enum class OpKind { PrepZ, PrepX, Cnot, MeasZ, MeasX, Reset, Branch };

struct Instruction {
    OpKind kind;
    int q0 = -1;                 // target qubit (prep/meas/reset) or control (cnot)
    int q1 = -1;                 // cnot target
    int outcome = -1;            // measurement: produced id; branch: condition id
    std::vector<Instruction> then_block;
    std::vector<Instruction> else_block;

    friend bool operator==(const Instruction&, const Instruction&);
};

enum class ContextKind { None, SyndromeXw, Cat };

// Typed adaptive Clifford circuit. Qubit ids are assigned data-first:
// data qubit i (1-based) has id i-1, then the syndrome qubit, then flags.
struct Circuit {
    int num_data = 0;
    bool has_syndrome = false;
    int num_flags = 0;
    ContextKind context = ContextKind::None;
    std::vector<Instruction> instructions;

    int num_qubits() const { return num_data + (has_syndrome ? 1 : 0) + num_flags; }
    int data_id(int i) const { return i - 1; }
    int syndrome_id() const { return num_data; }
    int flag_id(int j) const { return num_data + (has_syndrome ? 1 : 0) + j; }

    QubitRole role_of(int qubit) const;
    std::string qubit_name(int qubit) const;
    int qubit_from_name(const std::string& name) const;  // -1 if unknown

    // Throws std::invalid_argument on the first well-formedness violation.
    void validate() const;

    friend bool operator==(const Circuit&, const Circuit&);
};

// Pauli operator as X/Z masks over the full qubit register. Y is both bits.
struct PauliError {
    QubitMask x;
    QubitMask z;

    bool identity() const { return x.none() && z.none(); }
    PauliError& operator^=(const PauliError& o) {
        x ^= o.x;
        z ^= o.z;
        return *this;
    }
    friend PauliError operator^(PauliError a, const PauliError& b) { return a ^= b; }
    friend bool operator==(const PauliError&, const PauliError&) = default;

    // Support restricted to the first n qubits (the data block).
    PauliError on_data(int n) const;
    int x_weight(int n) const;
    int z_weight(int n) const;

    // "X 1 2 Z 4" with 1-based data indices; "I" when empty.
    std::string str(int n) const;
    static PauliError parse_pauli(const std::string& s, int n);

    bool operator<(const PauliError& o) const;
};

// Key of a correction-table entry: branch-measurement outcomes in time
// order along the taken path, and flag-measurement outcomes likewise.
struct PatternKey {
    std::string branch;  // "-" serialized when empty
    std::string flags;

    int surprise_weight() const;  // set branch bits + set flag bits
    friend bool operator==(const PatternKey&, const PatternKey&) = default;
    bool operator<(const PatternKey& o) const {
        return branch != o.branch ? branch < o.branch : flags < o.flags;
    }
};

// Map from observed pattern to the Pauli correction applied to data.
// Absent patterns mean identity.
struct CorrectionTable {
    std::map<PatternKey, PauliError> entries;

    const PauliError* find(const PatternKey& k) const;
    void set(const PatternKey& k, const PauliError& e) { entries[k] = e; }
    size_t size() const { return entries.size(); }
};

enum class Pauli : uint8_t { I, X, Z, Y };

// One fault site and kind: 15 two-qubit Paulis after a CNOT, X/Z/Y after a
// prep or reset, an outcome flip at a measurement.
struct FaultLocation {
    int site = -1;       // preorder instruction index
    Pauli p0 = Pauli::I; // on q0 (control for cnot)
    Pauli p1 = Pauli::I; // on q1 (cnot target)
    bool meas_flip = false;

    std::string str() const;
    friend bool operator==(const FaultLocation&, const FaultLocation&) = default;
};

// Visits instructions in preorder (then-block before else-block), passing
// the preorder site index.
void for_each_site(const Circuit& c,
                   const std::function<void(const Instruction&, int site)>& fn);
int site_count(const Circuit& c);

std::vector<FaultLocation> enumerate_fault_locations(const Circuit& c);

// Minimal CNOT-layer count under greedy earliest scheduling; preps, resets
// and measurements take no layer. For adaptive circuits branch_bits selects
// the path (one char per branch, in encounter order).
int depth(const Circuit& c, const std::string& branch_bits = "");

std::string serialize(const Circuit& c, const CorrectionTable& table,
                      bool accept_all_zeros = false);

struct ParsedCircuit {
    Circuit circuit;
    CorrectionTable table;
    bool accept_all_zeros = false;
};

// Throws std::invalid_argument with "line L, col C: ..." on the first
// syntax or invariant violation.
ParsedCircuit parse(const std::string& text);

}  // namespace flagft
