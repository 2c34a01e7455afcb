#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "npp/rational.hpp"

namespace npp {

/// Constraint system over variables confined to the closed interval
/// [1/2, 2], using only the two equation forms
///   Add(x, y, z):  x + y = z
///   Inv(x, y):     x * y = 1
struct EtrInvSystem {
    struct Constraint {
        enum class Kind { Add, Inv } kind;
        // Add: a + b = c.  Inv: a * b = 1 (c unused).
        std::size_t a = 0, b = 0, c = 0;

        static Constraint add(std::size_t x, std::size_t y, std::size_t z) {
            return {Kind::Add, x, y, z};
        }
        static Constraint inv(std::size_t x, std::size_t y) { return {Kind::Inv, x, y, 0}; }
        bool operator==(const Constraint&) const = default;
    };

    std::vector<std::string> vars;
    std::vector<Constraint> constraints;

    std::size_t add_var(const std::string& name) {
        vars.push_back(name);
        return vars.size() - 1;
    }
};

/// Range lower/upper bound shared by every ETR-INV variable and array cell.
inline Rational inv_range_lo() { return Rational(1) / 2; }
inline Rational inv_range_hi() { return Rational(2); }

struct InvCheckResult {
    bool ok = true;
    enum class Violation { None, Range, Constraint } kind = Violation::None;
    std::size_t index = 0; // variable index (Range) or constraint index
};

/// True iff every variable lies in [1/2, 2] (closed) and every constraint
/// holds exactly. Reports the first violation otherwise.
InvCheckResult check_inv_assignment(const EtrInvSystem& sys,
                                    const std::vector<Rational>& assignment);

/// Text format: `var <name>`, `add <x> <y> <z>`, `inv <x> <y>`.
std::string print_inv_system(const EtrInvSystem& sys);
EtrInvSystem parse_inv_system(const std::string& text);

} // namespace npp
