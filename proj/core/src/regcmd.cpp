#include "abslog/regcmd.hpp"

#include <atomic>
#include <cctype>
#include <sstream>

namespace abslog {

namespace {
std::atomic<int> g_next_id{0};
RegCmdPtr with_id(RegCmd r) {
    r.id = g_next_id.fetch_add(1, std::memory_order_relaxed);
    return std::make_shared<RegCmd>(std::move(r));
}
} // namespace

RegCmdPtr make_elc(ElcAtom a) {
    RegCmd r;
    r.kind = RegCmd::Kind::Elc;
    r.atom = std::move(a);
    return with_id(std::move(r));
}
RegCmdPtr make_seq(RegCmdPtr l, RegCmdPtr r) {
    RegCmd c;
    c.kind = RegCmd::Kind::Seq;
    c.kids = {std::move(l), std::move(r)};
    return with_id(std::move(c));
}
RegCmdPtr make_choice(RegCmdPtr l, RegCmdPtr r) {
    RegCmd c;
    c.kind = RegCmd::Kind::Choice;
    c.kids = {std::move(l), std::move(r)};
    return with_id(std::move(c));
}
RegCmdPtr make_star(RegCmdPtr b) {
    RegCmd c;
    c.kind = RegCmd::Kind::Star;
    c.kids = {std::move(b)};
    return with_id(std::move(c));
}

bool BExp::holds(int64_t x) const {
    if (kind == Kind::Cmp) {
        switch (op) {
            case CmpOp::Lt: return x < c;
            case CmpOp::Le: return x <= c;
            case CmpOp::Eq: return x == c;
            case CmpOp::Ne: return x != c;
            case CmpOp::Ge: return x >= c;
            case CmpOp::Gt: return x > c;
        }
        return false;
    }
    int64_t rem = ((x % m) + m) % m;
    return (rem == r) != negated;
}

BExp BExp::negate() const {
    BExp b = *this;
    if (kind == Kind::Cmp) {
        switch (op) {
            case CmpOp::Lt: b.op = CmpOp::Ge; break;
            case CmpOp::Le: b.op = CmpOp::Gt; break;
            case CmpOp::Eq: b.op = CmpOp::Ne; break;
            case CmpOp::Ne: b.op = CmpOp::Eq; break;
            case CmpOp::Ge: b.op = CmpOp::Lt; break;
            case CmpOp::Gt: b.op = CmpOp::Le; break;
        }
    } else {
        b.negated = !b.negated;
    }
    return b;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { Int, Ident, Sym, End };
    Kind kind;
    std::string text;
    int64_t value = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) step();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= s_.size()) {
            tok_ = Token{Token::Kind::End, "", 0, line_, col_};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                num += s_[pos_];
                step();
            }
            tok_ = Token{Token::Kind::Int, num, std::stoll(num), tok_.line, tok_.col};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                id += s_[pos_];
                step();
            }
            tok_ = Token{Token::Kind::Ident, id, 0, tok_.line, tok_.col};
            return;
        }
        // Multi-char symbols first.
        for (const char* sym : {":=", "<=", ">=", "<>"}) {
            if (s_.compare(pos_, 2, sym) == 0) {
                tok_ = Token{Token::Kind::Sym, sym, 0, tok_.line, tok_.col};
                step();
                step();
                return;
            }
        }
        tok_ = Token{Token::Kind::Sym, std::string(1, c), 0, tok_.line, tok_.col};
        step();
    }
    void step() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    Parser(const std::string& text, const std::set<std::string>& vars)
        : lex_(text), vars_(vars) {}

    RegCmdPtr parse() {
        RegCmdPtr r = parse_choice();
        expect_end();
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        const Token& t = lex_.peek();
        throw ParseError(msg + (t.text.empty() ? "" : " near '" + t.text + "'"), t.line, t.col);
    }
    bool at_sym(const std::string& s) {
        return lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == s;
    }
    bool at_kw(const std::string& s) {
        return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == s;
    }
    void eat_sym(const std::string& s) {
        if (!at_sym(s)) fail("expected '" + s + "'");
        lex_.next();
    }
    void eat_kw(const std::string& s) {
        if (!at_kw(s)) fail("expected '" + s + "'");
        lex_.next();
    }
    void expect_end() {
        if (lex_.peek().kind != Token::Kind::End) fail("trailing input");
    }
    int64_t parse_int() {
        bool neg = false;
        if (at_sym("-")) {
            lex_.next();
            neg = true;
        }
        if (lex_.peek().kind != Token::Kind::Int) fail("expected an integer");
        int64_t v = lex_.next().value;
        return neg ? -v : v;
    }
    std::string parse_var() {
        if (lex_.peek().kind != Token::Kind::Ident) fail("expected a variable");
        std::string v = lex_.next().text;
        if (!vars_.count(v)) throw ParseError("undeclared variable '" + v + "'");
        return v;
    }

    RegCmdPtr parse_choice() {
        RegCmdPtr r = parse_seq();
        while (at_sym("+")) {
            lex_.next();
            r = make_choice(std::move(r), parse_seq());
        }
        return r;
    }
    RegCmdPtr parse_seq() {
        RegCmdPtr r = parse_star();
        while (at_sym(";")) {
            lex_.next();
            r = make_seq(std::move(r), parse_star());
        }
        return r;
    }
    RegCmdPtr parse_star() {
        RegCmdPtr r = parse_base();
        while (at_sym("*")) {
            lex_.next();
            r = make_star(std::move(r));
        }
        return r;
    }

    std::pair<std::string, BExp> parse_bexp() {
        if (at_sym("!")) {
            lex_.next();
            auto [v, b] = parse_bexp();
            return {v, b.negate()};
        }
        std::string v = parse_var();
        BExp b;
        if (at_kw("mod")) {
            lex_.next();
            b.kind = BExp::Kind::ModEq;
            b.m = parse_int();
            if (b.m < 1) throw ParseError("modulus must be at least 1");
            eat_sym("=");
            b.r = parse_int();
            b.r = ((b.r % b.m) + b.m) % b.m;
            return {v, b};
        }
        b.kind = BExp::Kind::Cmp;
        if (at_sym("<")) b.op = BExp::CmpOp::Lt;
        else if (at_sym("<=")) b.op = BExp::CmpOp::Le;
        else if (at_sym("=")) b.op = BExp::CmpOp::Eq;
        else if (at_sym("<>")) b.op = BExp::CmpOp::Ne;
        else if (at_sym(">=")) b.op = BExp::CmpOp::Ge;
        else if (at_sym(">")) b.op = BExp::CmpOp::Gt;
        else fail("expected a comparison operator");
        lex_.next();
        b.c = parse_int();
        return {v, b};
    }

    AExp parse_aexp(const std::string& lhs) {
        auto require_lhs = [&](const std::string& v) {
            if (v != lhs)
                throw ParseError("assignment source must be the assigned variable '" + lhs + "'");
        };
        AExp e;
        if (at_sym("-")) {
            lex_.next();
            if (lex_.peek().kind == Token::Kind::Int) {
                e.kind = AExp::Kind::Const;
                e.c = -lex_.next().value;
                return e;
            }
            require_lhs(parse_var());
            e.kind = AExp::Kind::Neg;
            return e;
        }
        if (lex_.peek().kind == Token::Kind::Int) {
            e.kind = AExp::Kind::Const;
            e.c = lex_.next().value;
            return e;
        }
        require_lhs(parse_var());
        if (at_sym("+")) {
            lex_.next();
            e.kind = AExp::Kind::AddC;
            e.c = parse_int();
        } else if (at_sym("-")) {
            lex_.next();
            e.kind = AExp::Kind::SubC;
            e.c = parse_int();
        } else {
            e.kind = AExp::Kind::Var;
        }
        return e;
    }

    RegCmdPtr parse_base() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Int && t.text == "0") {
            lex_.next();
            return make_elc(ElcAtom::diverge());
        }
        if (t.kind == Token::Kind::Int && t.text == "1") {
            lex_.next();
            return make_elc(ElcAtom::skip());
        }
        if (at_sym("(")) {
            lex_.next();
            RegCmdPtr r = parse_choice();
            eat_sym(")");
            return r;
        }
        if (at_kw("if")) {
            lex_.next();
            auto [v, b] = parse_bexp();
            eat_kw("then");
            RegCmdPtr r1 = parse_choice();
            eat_kw("else");
            RegCmdPtr r2 = parse_choice();
            return make_choice(make_seq(make_elc(ElcAtom::filter(v, b)), std::move(r1)),
                               make_seq(make_elc(ElcAtom::filter(v, b.negate())), std::move(r2)));
        }
        if (at_kw("while")) {
            lex_.next();
            auto [v, b] = parse_bexp();
            eat_kw("do");
            RegCmdPtr body = parse_choice();
            return make_seq(
                make_star(make_seq(make_elc(ElcAtom::filter(v, b)), std::move(body))),
                make_elc(ElcAtom::filter(v, b.negate())));
        }
        if (at_kw("assert")) {
            lex_.next();
            eat_sym("(");
            auto [v, b] = parse_bexp();
            eat_sym(")");
            return make_elc(ElcAtom::filter(v, b));
        }
        if (at_sym("!") || t.kind == Token::Kind::Ident) {
            // Either an assignment or a filter.
            if (t.kind == Token::Kind::Ident) {
                // Lookahead: ident ':=' means assignment.
                Lexer probe = lex_;
                probe.next();
                if (probe.peek().kind == Token::Kind::Sym && probe.peek().text == ":=") {
                    std::string v = parse_var();
                    eat_sym(":=");
                    return make_elc(ElcAtom::assign(v, parse_aexp(v)));
                }
            }
            auto [v, b] = parse_bexp();
            eat_sym("?");
            return make_elc(ElcAtom::filter(v, b));
        }
        fail("expected a command");
    }

    Lexer lex_;
    std::set<std::string> vars_;
};

} // namespace

RegCmdPtr parse_cmd(const std::string& text, const std::set<std::string>& vars) {
    return Parser(text, vars).parse();
}

RegCmdPtr power(const RegCmdPtr& r, unsigned i) {
    RegCmdPtr acc = make_elc(ElcAtom::skip());
    for (unsigned k = 0; k < i; ++k) acc = make_seq(r, std::move(acc));
    return acc;
}

void assign_ids(RegCmd&) {
    // Ids are assigned at construction time; kept for API compatibility.
}

// ---------------------------------------------------------------------------
// Pretty-printing
// ---------------------------------------------------------------------------

namespace {

const char* cmp_text(BExp::CmpOp op) {
    switch (op) {
        case BExp::CmpOp::Lt: return "<";
        case BExp::CmpOp::Le: return "<=";
        case BExp::CmpOp::Eq: return "=";
        case BExp::CmpOp::Ne: return "<>";
        case BExp::CmpOp::Ge: return ">=";
        case BExp::CmpOp::Gt: return ">";
    }
    return "?";
}

// Precedence: choice (0) < seq (1) < star (2) < atom (3).
int prec(const RegCmd& r) {
    switch (r.kind) {
        case RegCmd::Kind::Choice: return 0;
        case RegCmd::Kind::Seq: return 1;
        case RegCmd::Kind::Star: return 2;
        case RegCmd::Kind::Elc: return 3;
    }
    return 3;
}

void print(const RegCmd& r, int parent_prec, std::ostringstream& out) {
    bool paren = prec(r) < parent_prec;
    if (paren) out << '(';
    switch (r.kind) {
        case RegCmd::Kind::Elc:
            out << pretty(r.atom);
            break;
        case RegCmd::Kind::Seq:
            print(r.left(), 1, out);
            out << "; ";
            print(r.right(), 1, out);
            break;
        case RegCmd::Kind::Choice:
            print(r.left(), 0, out);
            out << " + ";
            print(r.right(), 0, out);
            break;
        case RegCmd::Kind::Star: {
            // Multi-token atoms (assignments, filters) need explicit parens
            // under star; only 0, 1 and starred groups bind tightly enough.
            const RegCmd& b = r.body();
            bool tight = b.kind == RegCmd::Kind::Star ||
                         (b.kind == RegCmd::Kind::Elc &&
                          (b.atom.kind == ElcAtom::Kind::Skip ||
                           b.atom.kind == ElcAtom::Kind::Diverge));
            if (tight) {
                print(b, 3, out);
            } else {
                out << '(';
                print(b, 0, out);
                out << ')';
            }
            out << '*';
            break;
        }
    }
    if (paren) out << ')';
}

} // namespace

std::string pretty(const ElcAtom& a) {
    std::ostringstream out;
    switch (a.kind) {
        case ElcAtom::Kind::Skip: return "1";
        case ElcAtom::Kind::Diverge: return "0";
        case ElcAtom::Kind::Assign:
            out << a.var << ":=";
            switch (a.aexp.kind) {
                case AExp::Kind::Const: out << a.aexp.c; break;
                case AExp::Kind::Var: out << a.var; break;
                case AExp::Kind::AddC: out << a.var << '+' << a.aexp.c; break;
                case AExp::Kind::SubC: out << a.var << '-' << a.aexp.c; break;
                case AExp::Kind::Neg: out << '-' << a.var; break;
            }
            return out.str();
        case ElcAtom::Kind::Filter:
            if (a.bexp.kind == BExp::Kind::Cmp) {
                out << a.var << cmp_text(a.bexp.op) << a.bexp.c;
            } else {
                if (a.bexp.negated) out << '!';
                out << a.var << " mod " << a.bexp.m << '=' << a.bexp.r;
            }
            out << '?';
            return out.str();
    }
    return "?";
}

std::string pretty(const RegCmd& r) {
    std::ostringstream out;
    print(r, 0, out);
    return out.str();
}

} // namespace abslog
