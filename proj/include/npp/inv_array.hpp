#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "npp/etr_inv.hpp"
#include "npp/polynomial.hpp"

namespace npp {

/// m x n grid of variables in [1/2, 2] with linear constraints inside a row
/// (pair/triple sums equal to 5/2) and inversion constraints inside a
/// column.
struct EtrInvArray {
    struct Constraint {
        enum class Kind { RowPair, RowTriple, ColInv } kind;
        // RowPair:   row; cols a, b            alpha(row,a) + alpha(row,b) = 5/2
        // RowTriple: row; cols a, b, c         sum of the three = 5/2
        // ColInv:    col; rows a, b (a=b ok)   alpha(a,col) * alpha(b,col) = 1
        std::size_t row_or_col = 0;
        std::size_t a = 0, b = 0, c = 0;

        static Constraint row_pair(std::size_t row, std::size_t j, std::size_t k) {
            return {Kind::RowPair, row, j, k, 0};
        }
        static Constraint row_triple(std::size_t row, std::size_t j, std::size_t k,
                                     std::size_t l) {
            return {Kind::RowTriple, row, j, k, l};
        }
        static Constraint col_inv(std::size_t col, std::size_t i, std::size_t j) {
            return {Kind::ColInv, col, i, j, 0};
        }
        bool operator==(const Constraint&) const = default;
    };

    std::size_t rows = 0, cols = 0;
    std::vector<Constraint> constraints;
    std::vector<std::vector<std::string>> cell_names; // rows x cols, optional
    std::map<std::string, std::string> legend;        // cell name -> role

    /// Structural validation: indices in range, row indices pairwise
    /// distinct for pair/triple constraints. Throws InputError otherwise.
    void validate() const;
};

struct ArrayCheckResult {
    bool ok = true;
    enum class Violation { None, Range, Constraint } kind = Violation::None;
    std::size_t index = 0;     // constraint index, or flattened cell index for Range
};

/// True iff all cells lie in [1/2, 2] and every constraint holds exactly.
ArrayCheckResult check_array_assignment(const EtrInvArray& arr,
                                        const std::vector<std::vector<Rational>>& cells);

/// Rewrites a system so that (a) chained inversions are eliminated by
/// substitution (x*y = 1 and y*z = 1 force z = x), and (b) every Add has
/// three pairwise-distinct variable occurrences, splitting repeats through
/// double-inversion copies. The witness maps translate solutions both ways.
struct NormalizeResult {
    EtrInvSystem system;
    RationalMap forward;  // original system solutions -> normalized solutions
    RationalMap backward; // normalized -> original
};
NormalizeResult normalize_inv_system(const EtrInvSystem& sys);

/// Lemma-style conversion of a normalized n-variable system into a 3 x 2n
/// array. Cell roles: row 1 holds y_i | alpha_i, row 2 beta_i | gamma_i,
/// row 3 delta_i | epsilon_i, complements in columns n+1..2n.
struct ArrayWitness {
    RationalMap forward;  // system solutions -> cell matrix (row-major)
    RationalMap backward; // projection onto the y-cells
};
struct SystemToArrayResult {
    EtrInvArray array;
    ArrayWitness witness;
};
SystemToArrayResult system_to_array(const EtrInvSystem& sys);

/// JSON round trip per the documented schema (1-based indices).
std::string array_to_json(const EtrInvArray& arr);
EtrInvArray array_from_json(const std::string& text);
std::string array_constraints_to_json(const std::vector<EtrInvArray::Constraint>& cons);

} // namespace npp
