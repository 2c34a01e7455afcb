#include "npp/inv_array.hpp"

#include <algorithm>
#include <climits>
#include <json.hpp>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include "npp/errors.hpp"

namespace npp {

namespace {

const Rational kFiveHalves = Rational(5) / 2;

} // namespace

void EtrInvArray::validate() const {
    if (rows == 0 || cols == 0) throw InputError("array must have positive dimensions");
    for (const auto& c : constraints) {
        switch (c.kind) {
            case Constraint::Kind::RowPair:
                if (c.row_or_col >= rows || c.a >= cols || c.b >= cols)
                    throw InputError("row pair constraint out of range");
                if (c.a == c.b) throw InputError("row pair columns must be distinct");
                break;
            case Constraint::Kind::RowTriple:
                if (c.row_or_col >= rows || c.a >= cols || c.b >= cols || c.c >= cols)
                    throw InputError("row triple constraint out of range");
                if (c.a == c.b || c.a == c.c || c.b == c.c)
                    throw InputError("row triple columns must be pairwise distinct");
                break;
            case Constraint::Kind::ColInv:
                if (c.row_or_col >= cols || c.a >= rows || c.b >= rows)
                    throw InputError("column inversion constraint out of range");
                break;
        }
    }
}

ArrayCheckResult check_array_assignment(const EtrInvArray& arr,
                                        const std::vector<std::vector<Rational>>& cells) {
    if (cells.size() != arr.rows) throw InputError("assignment row count mismatch");
    for (const auto& row : cells)
        if (row.size() != arr.cols) throw InputError("assignment column count mismatch");
    for (std::size_t r = 0; r < arr.rows; ++r)
        for (std::size_t c = 0; c < arr.cols; ++c)
            if (cells[r][c] < inv_range_lo() || cells[r][c] > inv_range_hi())
                return {false, ArrayCheckResult::Violation::Range, r * arr.cols + c};
    for (std::size_t i = 0; i < arr.constraints.size(); ++i) {
        const auto& c = arr.constraints[i];
        bool holds = true;
        switch (c.kind) {
            case EtrInvArray::Constraint::Kind::RowPair:
                holds = cells[c.row_or_col][c.a] + cells[c.row_or_col][c.b] == kFiveHalves;
                break;
            case EtrInvArray::Constraint::Kind::RowTriple:
                holds = cells[c.row_or_col][c.a] + cells[c.row_or_col][c.b] +
                            cells[c.row_or_col][c.c] ==
                        kFiveHalves;
                break;
            case EtrInvArray::Constraint::Kind::ColInv:
                holds = cells[c.a][c.row_or_col] * cells[c.b][c.row_or_col] == 1;
                break;
        }
        if (!holds) return {false, ArrayCheckResult::Violation::Constraint, i};
    }
    return {};
}

// --------------------------------------------------------------------------
// normalize_inv_system

namespace {

using Con = EtrInvSystem::Constraint;

Con canon(Con c) {
    if (c.kind == Con::Kind::Inv && c.a > c.b) std::swap(c.a, c.b);
    return c;
}

struct Normalizer {
    const EtrInvSystem& src;
    std::vector<Con> cons;
    std::vector<std::size_t> subst;          // union-find style representative
    std::vector<RatFunc> values;             // per variable, over the source registry
    std::vector<std::string> names;
    std::vector<bool> removed;

    explicit Normalizer(const EtrInvSystem& s) : src(s) {
        const std::size_t n = s.vars.size();
        names = s.vars;
        removed.assign(n, false);
        subst.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            subst[i] = i;
            values.push_back(rf_var(n, i));
        }
        for (const auto& c : s.constraints) cons.push_back(canon(c));
    }

    std::size_t find(std::size_t v) {
        while (subst[v] != v) v = subst[v];
        return v;
    }

    void substitute(std::size_t away, std::size_t rep) {
        subst[away] = rep;
        removed[away] = true;
        for (auto& c : cons) {
            if (c.a == away) c.a = rep;
            if (c.b == away) c.b = rep;
            if (c.kind == Con::Kind::Add && c.c == away) c.c = rep;
            c = canon(c);
        }
    }

    void dedup_constraints() {
        std::vector<Con> out;
        for (const auto& c : cons) {
            bool dup = false;
            if (c.kind == Con::Kind::Inv)
                for (const auto& o : out)
                    if (o.kind == Con::Kind::Inv && o.a == c.a && o.b == c.b) dup = true;
            if (!dup) out.push_back(c);
        }
        cons = std::move(out);
    }

    /// Eliminates chained inversions until each variable occurs in at most
    /// one Inv constraint.
    void dedup_inversions() {
        for (;;) {
            dedup_constraints();
            // first variable with two distinct Inv constraints
            std::ptrdiff_t first = -1, second = -1;
            std::size_t pivot = 0;
            for (std::size_t v = 0; v < names.size() && first < 0; ++v) {
                if (removed[v]) continue;
                for (std::size_t i = 0; i < cons.size(); ++i) {
                    if (cons[i].kind != Con::Kind::Inv) continue;
                    if (cons[i].a != v && cons[i].b != v) continue;
                    if (first < 0) {
                        first = static_cast<std::ptrdiff_t>(i);
                    } else {
                        second = static_cast<std::ptrdiff_t>(i);
                        pivot = v;
                        break;
                    }
                }
                if (second < 0) first = -1;
            }
            if (second < 0) return;

            const Con c1 = cons[first], c2 = cons[second];
            auto partner = [&](const Con& c) { return c.a == pivot ? c.b : c.a; };
            bool self1 = c1.a == c1.b, self2 = c2.a == c2.b;
            if (self1 && self2) throw std::logic_error("duplicate self-loops survived dedup");
            if (self1 || self2) {
                // y*y = 1 and y*u = 1 force u = y
                std::size_t u = partner(self1 ? c2 : c1);
                cons.erase(cons.begin() + (self1 ? second : first));
                substitute(u, pivot);
            } else {
                // x*y = 1 and y*z = 1 force z = x: drop the later constraint
                std::size_t x = partner(c1), z = partner(c2);
                cons.erase(cons.begin() + second);
                if (x != z) substitute(z, x);
            }
        }
    }

    /// Inv incidence after dedup: -1 free, -2 self-loop, otherwise partner.
    std::ptrdiff_t inv_partner(std::size_t v) const {
        for (const auto& c : cons) {
            if (c.kind != Con::Kind::Inv) continue;
            if (c.a == v && c.b == v) return -2;
            if (c.a == v) return static_cast<std::ptrdiff_t>(c.b);
            if (c.b == v) return static_cast<std::ptrdiff_t>(c.a);
        }
        return -1;
    }

    std::size_t add_var(const std::string& name, RatFunc value) {
        names.push_back(name);
        removed.push_back(false);
        subst.push_back(names.size() - 1);
        values.push_back(std::move(value));
        return names.size() - 1;
    }

    /// Copy of v (a fresh variable forced equal to v), per v's inversion
    /// status: through the partner when matched, through a fresh chain
    /// variable w (Inv(v, w), Inv(w, v')) otherwise.
    std::size_t make_copy(std::size_t v) {
        std::ptrdiff_t p = inv_partner(v);
        if (p == -2) {
            // v is pinned to 1; pin the copy the same way
            std::size_t c = add_var(names[v] + "_c", values[v]);
            cons.push_back(Con::inv(c, c));
            return c;
        }
        if (p >= 0) {
            std::size_t c = add_var(names[v] + "_c", values[v]);
            cons.push_back(canon(Con::inv(c, static_cast<std::size_t>(p))));
            return c;
        }
        std::size_t w = add_var(names[v] + "_w", rf_recip(values[v]));
        std::size_t c = add_var(names[v] + "_c", values[v]);
        cons.push_back(canon(Con::inv(v, w)));
        cons.push_back(canon(Con::inv(w, c)));
        return c;
    }

    void split_adds() {
        for (std::size_t i = 0; i < cons.size(); ++i) {
            if (cons[i].kind != Con::Kind::Add) continue;
            if (cons[i].b == cons[i].a) cons[i].b = make_copy(cons[i].a);
            if (cons[i].c == cons[i].a) cons[i].c = make_copy(cons[i].a);
            if (cons[i].c == cons[i].b) cons[i].c = make_copy(cons[i].b);
        }
    }
};

} // namespace

NormalizeResult normalize_inv_system(const EtrInvSystem& sys) {
    Normalizer nz(sys);
    nz.dedup_inversions();
    nz.split_adds();

    // compact the surviving variables
    NormalizeResult out;
    std::vector<std::size_t> new_index(nz.names.size(), SIZE_MAX);
    for (std::size_t v = 0; v < nz.names.size(); ++v) {
        if (nz.removed[v]) continue;
        new_index[v] = out.system.vars.size();
        out.system.vars.push_back(nz.names[v]);
    }
    for (const auto& c : nz.cons) {
        Con r = c;
        r.a = new_index[r.a];
        r.b = new_index[r.b];
        if (r.kind == Con::Kind::Add) r.c = new_index[r.c];
        out.system.constraints.push_back(r);
    }

    out.forward.source_vars = sys.vars;
    out.forward.target_vars = out.system.vars;
    for (std::size_t v = 0; v < nz.names.size(); ++v)
        if (!nz.removed[v]) out.forward.components.push_back(nz.values[v]);

    out.backward.source_vars = out.system.vars;
    out.backward.target_vars = sys.vars;
    const std::size_t arity = out.system.vars.size();
    for (std::size_t v = 0; v < sys.vars.size(); ++v) {
        std::size_t rep = nz.find(v);
        out.backward.components.push_back(rf_var(arity, new_index[rep]));
    }
    return out;
}

// --------------------------------------------------------------------------
// system_to_array

namespace {

struct Coloring {
    enum class Role { Free, Plus, Minus, SelfLoop };
    std::vector<Role> role;
};

Coloring color_inversions(const EtrInvSystem& sys) {
    const std::size_t n = sys.vars.size();
    Coloring col;
    col.role.assign(n, Coloring::Role::Free);
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& c : sys.constraints) {
        if (c.kind != Con::Kind::Inv) continue;
        if (c.a == c.b) {
            col.role[c.a] = Coloring::Role::SelfLoop;
            continue;
        }
        adj[c.a].push_back(c.b);
        adj[c.b].push_back(c.a);
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (col.role[v] == Coloring::Role::SelfLoop && !adj[v].empty())
            throw InputError("non-normalized input: self-inverted variable " + sys.vars[v] +
                             " also occurs in an inversion pair");
    }
    for (std::size_t root = 0; root < n; ++root) {
        if (adj[root].empty() || col.role[root] != Coloring::Role::Free) continue;
        col.role[root] = Coloring::Role::Plus;
        std::queue<std::size_t> q;
        q.push(root);
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop();
            for (std::size_t u : adj[v]) {
                auto want = col.role[v] == Coloring::Role::Plus ? Coloring::Role::Minus
                                                                : Coloring::Role::Plus;
                if (col.role[u] == Coloring::Role::Free) {
                    col.role[u] = want;
                    q.push(u);
                } else if (col.role[u] != want) {
                    throw InputError(
                        "non-normalized input: inversion constraints on " + sys.vars[u] +
                        " cannot be oriented consistently");
                }
            }
        }
    }
    return col;
}

} // namespace

SystemToArrayResult system_to_array(const EtrInvSystem& sys) {
    using AC = EtrInvArray::Constraint;
    const std::size_t n = sys.vars.size();
    for (const auto& c : sys.constraints) {
        if (c.kind == Con::Kind::Add && (c.a == c.b || c.a == c.c || c.b == c.c))
            throw InputError("non-normalized input: repeated variable in an Add constraint");
    }
    Coloring col = color_inversions(sys);

    SystemToArrayResult out;
    EtrInvArray& arr = out.array;
    arr.rows = 3;
    arr.cols = 2 * n;

    // cell names and legend roles
    arr.cell_names.assign(3, std::vector<std::string>(2 * n));
    static const char* role_base[3][2] = {{"y", "alpha"}, {"beta", "gamma"}, {"delta", "epsilon"}};
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 2 * n; ++c) {
            std::string name = "c" + std::to_string(r + 1) + "_" + std::to_string(c + 1);
            arr.cell_names[r][c] = name;
            std::string role = std::string(role_base[r][c < n ? 0 : 1]) + "_" +
                               std::to_string((c % n) + 1);
            arr.legend.emplace(name, role);
        }

    std::set<std::tuple<int, std::size_t, std::size_t, std::size_t, std::size_t>> seen;
    std::vector<std::vector<bool>> used(3, std::vector<bool>(2 * n, false));
    auto emit = [&](AC c) {
        auto key = std::make_tuple(static_cast<int>(c.kind), c.row_or_col, c.a, c.b, c.c);
        if (!seen.insert(key).second) return;
        arr.constraints.push_back(c);
        switch (c.kind) {
            case AC::Kind::RowPair:
                used[c.row_or_col][c.a] = used[c.row_or_col][c.b] = true;
                break;
            case AC::Kind::RowTriple:
                used[c.row_or_col][c.a] = used[c.row_or_col][c.b] = used[c.row_or_col][c.c] =
                    true;
                break;
            case AC::Kind::ColInv:
                used[c.a][c.row_or_col] = used[c.b][c.row_or_col] = true;
                break;
        }
    };

    // y_i + alpha_i = 5/2 pins the complement row-1 cells
    for (std::size_t i = 0; i < n; ++i) emit(AC::row_pair(0, i, n + i));

    // Add(x, y, z): y_x + y_y + alpha_z = 5/2 encodes y_x + y_y = y_z
    for (const auto& c : sys.constraints)
        if (c.kind == Con::Kind::Add) emit(AC::row_triple(0, c.a, c.b, n + c.c));

    // inversion gadgets, role-oriented
    for (const auto& c : sys.constraints) {
        if (c.kind != Con::Kind::Inv) continue;
        if (c.a == c.b) {
            emit(AC::col_inv(c.a, 0, 1)); // y*beta = 1
            emit(AC::col_inv(c.a, 1, 2)); // beta*delta = 1
            emit(AC::col_inv(c.a, 0, 2)); // y*delta = 1, forcing y = 1
            continue;
        }
        std::size_t p = c.a, q = c.b;
        if (col.role[p] != Coloring::Role::Plus) std::swap(p, q);
        emit(AC::col_inv(p, 0, 1)); // beta_p = 1/y_p
        emit(AC::col_inv(p, 1, 2)); // delta_p = y_p
        emit(AC::col_inv(q, 0, 2)); // delta_q = 1/y_q
        emit(AC::col_inv(q, 1, 2)); // beta_q = y_q
        emit(AC::row_pair(1, p, n + p));
        emit(AC::row_pair(1, q, n + p)); // beta_q = beta_p, so y_q = 1/y_p
    }

    // deterministic pinning of untouched cells
    for (std::size_t i = 0; i < n; ++i) {
        if (!used[1][i]) emit(AC::col_inv(i, 0, 1));        // beta_i = 1/y_i
        if (!used[2][i]) emit(AC::col_inv(i, 1, 2));        // delta_i = 1/beta_i
        if (!used[1][n + i]) emit(AC::row_pair(1, i, n + i)); // gamma_i = 5/2 - beta_i
        if (!used[2][n + i]) emit(AC::row_pair(2, i, n + i)); // epsilon_i = 5/2 - delta_i
    }

    // witness maps
    std::vector<std::string> cell_vars;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 2 * n; ++c) cell_vars.push_back(arr.cell_names[r][c]);

    out.witness.forward.source_vars = sys.vars;
    out.witness.forward.target_vars = cell_vars;
    auto x = [&](std::size_t i) { return rf_var(n, i); };
    auto compl25 = [&](const RatFunc& f) {
        return rf_sub(rf_const(n, kFiveHalves), f);
    };
    std::vector<RatFunc> beta(n);
    for (std::size_t i = 0; i < n; ++i)
        beta[i] = col.role[i] == Coloring::Role::Minus ? x(i) : rf_recip(x(i));
    for (std::size_t i = 0; i < n; ++i) out.witness.forward.components.push_back(x(i));
    for (std::size_t i = 0; i < n; ++i)
        out.witness.forward.components.push_back(compl25(x(i)));
    for (std::size_t i = 0; i < n; ++i) out.witness.forward.components.push_back(beta[i]);
    for (std::size_t i = 0; i < n; ++i)
        out.witness.forward.components.push_back(compl25(beta[i]));
    for (std::size_t i = 0; i < n; ++i)
        out.witness.forward.components.push_back(rf_recip(beta[i]));
    for (std::size_t i = 0; i < n; ++i)
        out.witness.forward.components.push_back(compl25(rf_recip(beta[i])));

    out.witness.backward.source_vars = cell_vars;
    out.witness.backward.target_vars = sys.vars;
    for (std::size_t i = 0; i < n; ++i)
        out.witness.backward.components.push_back(rf_var(6 * n, i));

    return out;
}

// --------------------------------------------------------------------------
// JSON

std::string array_constraints_to_json(const std::vector<EtrInvArray::Constraint>& cons) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& c : cons) {
        nlohmann::ordered_json e;
        switch (c.kind) {
            case EtrInvArray::Constraint::Kind::RowPair:
                e["type"] = "rowpair";
                e["row"] = c.row_or_col + 1;
                e["indices"] = {c.a + 1, c.b + 1};
                break;
            case EtrInvArray::Constraint::Kind::RowTriple:
                e["type"] = "rowtriple";
                e["row"] = c.row_or_col + 1;
                e["indices"] = {c.a + 1, c.b + 1, c.c + 1};
                break;
            case EtrInvArray::Constraint::Kind::ColInv:
                e["type"] = "colinv";
                e["col"] = c.row_or_col + 1;
                e["indices"] = {c.a + 1, c.b + 1};
                break;
        }
        out.push_back(std::move(e));
    }
    return out.dump();
}

std::string array_to_json(const EtrInvArray& arr) {
    nlohmann::ordered_json j;
    j["m"] = arr.rows;
    j["n"] = arr.cols;
    j["cells"] = arr.cell_names;
    j["constraints"] = nlohmann::ordered_json::parse(array_constraints_to_json(arr.constraints));
    j["legend"] = arr.legend;
    return j.dump();
}

EtrInvArray array_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("array JSON: ") + e.what());
    }
    EtrInvArray arr;
    try {
        arr.rows = j.at("m").get<std::size_t>();
        arr.cols = j.at("n").get<std::size_t>();
        if (j.contains("cells"))
            arr.cell_names = j["cells"].get<std::vector<std::vector<std::string>>>();
        if (j.contains("legend"))
            arr.legend = j["legend"].get<std::map<std::string, std::string>>();
        for (const auto& e : j.at("constraints")) {
            std::string type = e.at("type").get<std::string>();
            auto idx = e.at("indices").get<std::vector<std::size_t>>();
            for (auto& v : idx) {
                if (v == 0) throw InputError("array JSON: indices are 1-based");
                --v;
            }
            if (type == "rowpair") {
                if (idx.size() != 2) throw InputError("rowpair needs two indices");
                arr.constraints.push_back(EtrInvArray::Constraint::row_pair(
                    e.at("row").get<std::size_t>() - 1, idx[0], idx[1]));
            } else if (type == "rowtriple") {
                if (idx.size() != 3) throw InputError("rowtriple needs three indices");
                arr.constraints.push_back(EtrInvArray::Constraint::row_triple(
                    e.at("row").get<std::size_t>() - 1, idx[0], idx[1], idx[2]));
            } else if (type == "colinv") {
                if (idx.size() != 2) throw InputError("colinv needs two indices");
                arr.constraints.push_back(EtrInvArray::Constraint::col_inv(
                    e.at("col").get<std::size_t>() - 1, idx[0], idx[1]));
            } else {
                throw InputError("unknown constraint type '" + type + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("array JSON: ") + e.what());
    }
    arr.validate();
    return arr;
}

} // namespace npp
