#pragma once

#include <string>

#include "diffalg/linalg.hpp"

namespace diffalg {

/// A finite chain complex: maps d[i] : C_i -> C_{i+1} with d . d = 0 checked
/// exactly. Shared by the de Rham, Diff-Spencer, jet-Spencer and adjoint
/// complexes.
struct ChainComplex {
    FieldSpec field = FieldSpec::rationals();
    std::vector<int> dims;             // dims of C_0 .. C_n
    std::vector<Mat> d;                // d[i] : C_i -> C_{i+1}
    std::vector<std::string> labels;   // optional names of the spots

    int length() const { return static_cast<int>(dims.size()); }

    /// Throws invariant_error with the offending spot if some d.d != 0.
    void verify() const;

    struct Homology {
        std::vector<int> dims;
        std::vector<std::vector<Vec>> bases;  // canonical representatives per spot
    };
    /// H_i = ker d_i / im d_{i-1}, with canonical reduced representatives.
    Homology homology() const;
};

}  // namespace diffalg
