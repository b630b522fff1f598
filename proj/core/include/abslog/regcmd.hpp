#ifndef ABSLOG_REGCMD_HPP
#define ABSLOG_REGCMD_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "abslog/errors.hpp"

namespace abslog {

// Arithmetic right-hand sides of assignments: c, x, x+c, x-c, -x.
struct AExp {
    enum class Kind { Const, Var, AddC, SubC, Neg };
    Kind kind = Kind::Const;
    int64_t c = 0; // Const/AddC/SubC
};

// Boolean filters: x cmp c, x mod m = r, and their negations. Negation of a
// comparison is folded into the dual operator at parse time; negation of a
// parity test is kept as a flag.
struct BExp {
    enum class Kind { Cmp, ModEq };
    enum class CmpOp { Lt, Le, Eq, Ne, Ge, Gt };
    Kind kind = Kind::Cmp;
    CmpOp op = CmpOp::Eq;
    int64_t c = 0;       // Cmp
    int64_t m = 1, r = 0; // ModEq
    bool negated = false; // ModEq only

    bool holds(int64_t x) const;
    BExp negate() const;
};

struct ElcAtom {
    enum class Kind { Skip, Diverge, Assign, Filter };
    Kind kind = Kind::Skip;
    std::string var; // Assign/Filter
    AExp aexp;       // Assign
    BExp bexp;       // Filter

    static ElcAtom skip() { return ElcAtom{}; }
    static ElcAtom diverge() { ElcAtom a; a.kind = Kind::Diverge; return a; }
    static ElcAtom assign(std::string var, AExp e) {
        ElcAtom a; a.kind = Kind::Assign; a.var = std::move(var); a.aexp = e; return a;
    }
    static ElcAtom filter(std::string var, BExp b) {
        ElcAtom a; a.kind = Kind::Filter; a.var = std::move(var); a.bexp = b; return a;
    }
};

// Regular commands: elementary atoms closed under ; + *.
struct RegCmd {
    enum class Kind { Elc, Seq, Choice, Star };
    Kind kind = Kind::Elc;
    ElcAtom atom;                              // Elc
    std::vector<std::shared_ptr<RegCmd>> kids; // Seq/Choice: 2, Star: 1
    int id = -1;                               // assigned by assign_ids, for memo keys

    const RegCmd& left() const { return *kids[0]; }
    const RegCmd& right() const { return *kids[1]; }
    const RegCmd& body() const { return *kids[0]; }
};

using RegCmdPtr = std::shared_ptr<RegCmd>;

RegCmdPtr make_elc(ElcAtom a);
RegCmdPtr make_seq(RegCmdPtr l, RegCmdPtr r);
RegCmdPtr make_choice(RegCmdPtr l, RegCmdPtr r);
RegCmdPtr make_star(RegCmdPtr b);

// Parse a program; sugar (if/while/assert) is eliminated. Variables must be
// drawn from `vars`.
RegCmdPtr parse_cmd(const std::string& text, const std::set<std::string>& vars);

// r^0 = skip, r^{i+1} = r ; r^i.
RegCmdPtr power(const RegCmdPtr& r, unsigned i);

// Assign distinct ids to all nodes of the tree (preorder); used as memo keys.
void assign_ids(RegCmd& root);

std::string pretty(const RegCmd& r);
std::string pretty(const ElcAtom& a);

} // namespace abslog

#endif // ABSLOG_REGCMD_HPP
