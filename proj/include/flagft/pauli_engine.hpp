#pragma once

#include <span>
#include <string>

#include "flagft/circuit.hpp"

namespace flagft {

// Outcome of pushing a set of faults through a circuit.
struct PropagationResult {
    PauliError frame;          // residual over the full register
    std::string branch_bits;   // branch-condition outcomes along the taken path
    std::string flag_bits;     // flag-qubit measurement outcomes along the taken path
    bool syndrome_flip = false;

    PatternKey key() const { return {branch_bits, flag_bits}; }
};

// Exact Pauli-frame propagation. Faults are injected right after their site
// executes (measurement faults flip the recorded outcome). Branches follow
// the noiseless-zero outcome XOR the accumulated flip; faults at sites on
// an untaken branch are vacuous.
PropagationResult propagate(const Circuit& c, std::span<const FaultLocation> faults);

struct ReducedError {
    PauliError error;  // minimal-weight representative on data
    int x_weight = 0;
    int z_weight = 0;
};

// Reduce a data error modulo the declared stabilizer context.
//   cat:      X part mod X^w (min of weight and complement), Z part mod the
//             Z_i Z_{i+1} generators (parity; odd keeps Z on qubit 1)
//   syndrome: X part mod X^w, Z part untouched
// Ties in the X reduction keep the representative with the smaller mask.
ReducedError reduce_mod_stabilizers(const PauliError& data_error, ContextKind context,
                                    int num_data);

}  // namespace flagft
