#include <cctype>
#include <sstream>

#include "abslog/literal.hpp"

namespace abslog {

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool try_eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    void eat(char c) {
        if (!try_eat(c))
            throw ParseError(std::string("expected '") + c + "' in value literal '" + s + "'");
    }
    bool try_word(const std::string& w) {
        skip_ws();
        if (s.compare(pos, w.size(), w) != 0) return false;
        size_t end = pos + w.size();
        if (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_'))
            return false;
        pos = end;
        return true;
    }
    int64_t parse_int() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw ParseError("expected an integer in value literal '" + s + "'");
        return std::stoll(s.substr(start, pos - start));
    }
    std::string parse_ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start) throw ParseError("expected an identifier in value literal '" + s + "'");
        return s.substr(start, pos - start);
    }
};

Value parse_value(Cursor& c, const CarrierShape& shape, const std::optional<FinStateSpace>& space);

Interval parse_interval(Cursor& c) {
    if (c.try_word("empty")) return Interval::make_empty();
    bool open = false;
    if (!c.try_eat('[')) {
        c.eat('(');
        open = true;
    }
    (void)open;
    Bound lo, hi;
    if (c.try_word("-inf")) lo = Bound::neg_inf();
    else lo = Bound::of(c.parse_int());
    c.eat(',');
    if (c.try_word("+inf") || c.try_word("inf")) hi = Bound::pos_inf();
    else hi = Bound::of(c.parse_int());
    if (!c.try_eat(']')) c.eat(')');
    if (!hi.finite() && hi.kind == Bound::NegInf)
        throw ParseError("upper bound cannot be -inf");
    return Interval::make(lo, hi);
}

StateSet parse_states(Cursor& c, const std::optional<FinStateSpace>& space) {
    if (!space) throw ParseError("state-set literal needs a declared state space");
    c.eat('{');
    StateSet out;
    if (c.try_eat('}')) return out;
    do {
        if (c.peek() == '(') {
            c.eat('(');
            State s(space->vars.size(), 0);
            std::vector<bool> seen(space->vars.size(), false);
            do {
                std::string name = c.parse_ident();
                c.eat('=');
                int64_t v = c.parse_int();
                int idx = space->index_of(name);
                if (idx < 0) throw ParseError("unknown variable '" + name + "' in state literal");
                s[idx] = v;
                seen[idx] = true;
            } while (c.try_eat(','));
            c.eat(')');
            for (size_t i = 0; i < seen.size(); ++i)
                if (!seen[i])
                    throw ParseError("state literal misses variable '" + space->vars[i].name + "'");
            out.states.push_back(std::move(s));
        } else {
            if (space->vars.size() != 1)
                throw ParseError("bare integers in a state literal need a one-variable space");
            out.states.push_back(State{c.parse_int()});
        }
    } while (c.try_eat(','));
    c.eat('}');
    for (const auto& s : out.states)
        if (!space->in_range(s))
            throw ParseError("state literal lies outside the declared space");
    return normalize(std::move(out));
}

Progression parse_prog(Cursor& c) {
    // prog(2k+0), prog(3k), prog(2k-1)
    c.eat('(');
    Progression p;
    p.step = c.parse_int();
    if (p.step <= 0) throw ParseError("progression step must be positive");
    std::string k = c.parse_ident();
    if (k != "k") throw ParseError("expected 'k' in progression literal");
    p.start = 0;
    c.skip_ws();
    if (c.peek() == '+' || c.peek() == '-') p.start = c.parse_int();
    c.eat(')');
    return p;
}

Value parse_value(Cursor& c, const CarrierShape& shape, const std::optional<FinStateSpace>& space) {
    switch (shape.kind) {
        case CarrierShape::Kind::Interval:
            return Value(parse_interval(c));
        case CarrierShape::Kind::States:
            return Value(parse_states(c, space));
        case CarrierShape::Kind::Point:
            if (!c.try_word("top")) throw ParseError("expected 'top'");
            return Value(TopPoint{});
        case CarrierShape::Kind::Hyper: {
            c.eat('{');
            HyperSet h;
            if (c.try_eat('}')) return Value(std::move(h));
            do {
                h.members.push_back(parse_value(c, shape.inner[0], space));
            } while (c.try_eat(','));
            c.eat('}');
            return Value(normalize(std::move(h)));
        }
        case CarrierShape::Kind::Down: {
            if (!c.try_word("down")) throw ParseError("expected 'down{...}'");
            c.eat('{');
            DownSet d;
            if (c.try_eat('}')) return Value(std::move(d));
            do {
                if (c.try_word("prog")) d.progs.push_back(parse_prog(c));
                else d.gens.push_back(Value(parse_interval(c)));
            } while (c.try_eat(';') || c.try_eat(','));
            c.eat('}');
            return Value(normalize_downset(std::move(d)));
        }
        case CarrierShape::Kind::Pair: {
            c.eat('<');
            Value l = parse_value(c, shape.inner[0], space);
            c.eat('|');
            Value r = parse_value(c, shape.inner[1], space);
            c.eat('>');
            return make_pair_value(std::move(l), std::move(r));
        }
    }
    throw ParseError("unsupported carrier shape");
}

void print_interval(const Interval& a, std::ostringstream& out) {
    if (a.empty) { out << "empty"; return; }
    if (a.lo.kind == Bound::NegInf) out << "(-inf,";
    else out << '[' << a.lo.v << ',';
    if (a.hi.kind == Bound::PosInf) out << "+inf)";
    else out << a.hi.v << ']';
}

void print_value(const Value& v, const CarrierShape& shape,
                 const std::optional<FinStateSpace>& space, std::ostringstream& out) {
    switch (shape.kind) {
        case CarrierShape::Kind::Interval:
            print_interval(v.interval(), out);
            return;
        case CarrierShape::Kind::States: {
            out << '{';
            bool first = true;
            for (const auto& s : v.state_set().states) {
                if (!first) out << ',';
                first = false;
                if (s.size() == 1) {
                    out << s[0];
                } else {
                    out << '(';
                    for (size_t i = 0; i < s.size(); ++i) {
                        if (i) out << ',';
                        out << (space ? space->vars[i].name : "v" + std::to_string(i)) << '=' << s[i];
                    }
                    out << ')';
                }
            }
            out << '}';
            return;
        }
        case CarrierShape::Kind::Point:
            out << "top";
            return;
        case CarrierShape::Kind::Hyper: {
            out << '{';
            bool first = true;
            for (const auto& m : v.hyper().members) {
                if (!first) out << ',';
                first = false;
                print_value(m, shape.inner[0], space, out);
            }
            out << '}';
            return;
        }
        case CarrierShape::Kind::Down: {
            out << "down{";
            bool first = true;
            for (const auto& g : v.down().gens) {
                if (!first) out << "; ";
                first = false;
                print_interval(g.interval(), out);
            }
            for (const auto& p : v.down().progs) {
                if (!first) out << "; ";
                first = false;
                out << "prog(" << p.step << "k";
                if (p.start >= 0) out << '+' << p.start;
                else out << p.start;
                out << ')';
            }
            out << '}';
            return;
        }
        case CarrierShape::Kind::Pair: {
            out << '<';
            print_value(v.pair_c(), shape.inner[0], space, out);
            out << " | ";
            print_value(v.pair_a(), shape.inner[1], space, out);
            out << '>';
            return;
        }
    }
}

} // namespace

Value parse_literal(const std::string& text, const CarrierShape& shape,
                    const std::optional<FinStateSpace>& space) {
    Cursor c{text};
    Value v = parse_value(c, shape, space);
    if (!c.at_end())
        throw ParseError("trailing input in value literal '" + text + "'");
    return v;
}

std::string print_literal(const Value& v, const CarrierShape& shape,
                          const std::optional<FinStateSpace>& space) {
    std::ostringstream out;
    print_value(v, shape, space, out);
    return out.str();
}

} // namespace abslog
