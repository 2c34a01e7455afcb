#include "npp/etr_inv.hpp"

#include <sstream>
#include <unordered_map>

#include "npp/errors.hpp"

namespace npp {

InvCheckResult check_inv_assignment(const EtrInvSystem& sys,
                                    const std::vector<Rational>& assignment) {
    if (assignment.size() != sys.vars.size())
        throw InputError("assignment does not cover all variables");
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i] < inv_range_lo() || assignment[i] > inv_range_hi())
            return {false, InvCheckResult::Violation::Range, i};
    }
    for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
        const auto& c = sys.constraints[i];
        bool holds = c.kind == EtrInvSystem::Constraint::Kind::Add
                         ? assignment[c.a] + assignment[c.b] == assignment[c.c]
                         : assignment[c.a] * assignment[c.b] == 1;
        if (!holds) return {false, InvCheckResult::Violation::Constraint, i};
    }
    return {};
}

std::string print_inv_system(const EtrInvSystem& sys) {
    std::ostringstream out;
    for (const auto& v : sys.vars) out << "var " << v << "\n";
    for (const auto& c : sys.constraints) {
        if (c.kind == EtrInvSystem::Constraint::Kind::Add)
            out << "add " << sys.vars[c.a] << " " << sys.vars[c.b] << " " << sys.vars[c.c]
                << "\n";
        else
            out << "inv " << sys.vars[c.a] << " " << sys.vars[c.b] << "\n";
    }
    return out.str();
}

EtrInvSystem parse_inv_system(const std::string& text) {
    EtrInvSystem sys;
    std::unordered_map<std::string, std::size_t> index;
    auto lookup = [&](const std::string& name, int line) {
        auto it = index.find(name);
        if (it == index.end()) {
            std::ostringstream msg;
            msg << "line " << line << ": undeclared variable '" << name << "'";
            throw InputError(msg.str());
        }
        return it->second;
    };

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string body = raw.substr(0, raw.find('#'));
        std::istringstream ls(body);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "var") {
            std::string name;
            if (!(ls >> name)) throw InputError("line " + std::to_string(line) + ": var needs a name");
            if (index.count(name))
                throw InputError("line " + std::to_string(line) + ": duplicate variable '" + name + "'");
            index.emplace(name, sys.vars.size());
            sys.vars.push_back(name);
        } else if (word == "add") {
            std::string x, y, z;
            if (!(ls >> x >> y >> z))
                throw InputError("line " + std::to_string(line) + ": add needs three variables");
            sys.constraints.push_back(EtrInvSystem::Constraint::add(
                lookup(x, line), lookup(y, line), lookup(z, line)));
        } else if (word == "inv") {
            std::string x, y;
            if (!(ls >> x >> y))
                throw InputError("line " + std::to_string(line) + ": inv needs two variables");
            sys.constraints.push_back(
                EtrInvSystem::Constraint::inv(lookup(x, line), lookup(y, line)));
        } else {
            throw InputError("line " + std::to_string(line) + ": unknown directive '" + word + "'");
        }
        std::string extra;
        if (ls >> extra)
            throw InputError("line " + std::to_string(line) + ": trailing tokens");
    }
    return sys;
}

} // namespace npp
