#include <cctype>
#include <set>
#include <sstream>

#include "abslog/literal.hpp"
#include "abslog/script.hpp"

namespace abslog {

namespace {

// ---------------------------------------------------------------------------
// S-expression reader. Atoms keep their raw source text; every node records
// its source span so forms such as (domain interval(irreducible)) can be
// recovered verbatim even though the reader splits them into sublists.
// ---------------------------------------------------------------------------

struct SNode {
    bool is_list = false;
    bool is_string = false;
    std::string atom;
    std::vector<SNode> items;
    size_t begin = 0, end = 0;
};

struct Reader {
    const std::string& s;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        size_t line = 1, col = 1;
        for (size_t i = 0; i < pos && i < s.size(); ++i) {
            if (s[i] == '\n') { ++line; col = 1; }
            else ++col;
        }
        throw ParseError(what, static_cast<int>(line), static_cast<int>(col));
    }

    void skip_ws() {
        while (pos < s.size()) {
            if (std::isspace(static_cast<unsigned char>(s[pos]))) { ++pos; continue; }
            if (s[pos] == ';') { // comment to end of line
                while (pos < s.size() && s[pos] != '\n') ++pos;
                continue;
            }
            break;
        }
    }

    bool word_char(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
               c == '.' || c == '+' || c == '-';
    }

    // True when '(' at pos opens an interval literal such as (-inf,0].
    bool open_paren_literal() const {
        size_t p = pos + 1;
        while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
        return s.compare(p, 4, "-inf") == 0;
    }

    SNode read() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of script");
        if (s[pos] == '(' && !open_paren_literal()) return read_list();
        return read_atom();
    }

    SNode read_list() {
        SNode n;
        n.is_list = true;
        n.begin = pos;
        ++pos; // '('
        for (;;) {
            skip_ws();
            if (pos >= s.size()) fail("unterminated list");
            if (s[pos] == ')') { ++pos; break; }
            n.items.push_back(read());
        }
        n.end = pos;
        return n;
    }

    void consume_balanced(char open, char close) {
        int depth = 0;
        while (pos < s.size()) {
            if (s[pos] == open) ++depth;
            else if (s[pos] == close && --depth == 0) { ++pos; return; }
            ++pos;
        }
        fail(std::string("unterminated '") + open + "' literal");
    }

    SNode read_atom() {
        SNode n;
        n.begin = pos;
        char c = s[pos];
        if (c == '"') {
            ++pos;
            size_t start = pos;
            while (pos < s.size() && s[pos] != '"') ++pos;
            if (pos >= s.size()) fail("unterminated string");
            n.is_string = true;
            n.atom = s.substr(start, pos - start);
            ++pos;
            n.end = pos;
            return n;
        }
        if (c == '{') {
            consume_balanced('{', '}');
        } else if (c == '<') {
            while (pos < s.size() && s[pos] != '>') ++pos;
            if (pos >= s.size()) fail("unterminated '<' literal");
            ++pos;
        } else if (c == '[' || c == '(') {
            // Interval literal: runs to the first closing bracket of either kind.
            ++pos;
            while (pos < s.size() && s[pos] != ']' && s[pos] != ')') ++pos;
            if (pos >= s.size()) fail("unterminated interval literal");
            ++pos;
        } else {
            while (pos < s.size() && word_char(s[pos])) ++pos;
            if (pos == n.begin) fail("unexpected character in script");
            // A 'down' word glues onto its brace block.
            if (s.compare(n.begin, pos - n.begin, "down") == 0 && pos < s.size() && s[pos] == '{')
                consume_balanced('{', '}');
        }
        n.atom = s.substr(n.begin, pos - n.begin);
        n.end = pos;
        return n;
    }
};

std::string raw_span(const std::string& src, size_t begin, size_t end) {
    std::string out = src.substr(begin, end - begin);
    // Trim surrounding whitespace.
    size_t a = out.find_first_not_of(" \t\r\n");
    size_t b = out.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return out.substr(a, b - a + 1);
}

// ---------------------------------------------------------------------------
// Derivation node parsing.
// ---------------------------------------------------------------------------

struct NodeParser {
    const DomainDescriptor& dom;

    Value lit(const SNode& n) const {
        if (n.is_list) throw ParseError("expected a value literal, found a list");
        return parse_literal(n.atom, dom);
    }

    DerivationPtr parse(const SNode& n) const {
        if (!n.is_list || n.items.empty() || n.items[0].is_list)
            throw ParseError("expected a proof rule form");
        const std::string& head = n.items[0].atom;
        auto node = std::make_shared<DerivationNode>();
        using Rule = DerivationNode::Rule;
        if (head == "basic") node->rule = Rule::Basic;
        else if (head == "seq") node->rule = Rule::Seq;
        else if (head == "cons") node->rule = Rule::Cons;
        else if (head == "choice") node->rule = Rule::Choice;
        else if (head == "rec") node->rule = Rule::Rec;
        else if (head == "inv") node->rule = Rule::Inv;
        else if (head == "iter") node->rule = Rule::Iter;
        else if (head == "join") node->rule = Rule::Join;
        else if (head == "meet") node->rule = Rule::Meet;
        else throw ParseError("unknown proof rule '" + head + "'");

        for (size_t i = 1; i < n.items.size(); ++i) {
            const SNode& it = n.items[i];
            if (it.is_list && !it.items.empty() && !it.items[0].is_list &&
                !it.items[0].atom.empty() && it.items[0].atom[0] == ':') {
                // Payload form: (:h LIT), (:cover LIT+), (:fam LIT+)
                const std::string& kw = it.items[0].atom;
                if (kw == ":h") {
                    if (it.items.size() != 2) throw ParseError("(:h ...) takes one literal");
                    node->iterates.push_back(lit(it.items[1]));
                } else if (kw == ":cover" || kw == ":fam") {
                    if (it.items.size() < 2) throw ParseError("(" + kw + " ...) needs literals");
                    for (size_t j = 1; j < it.items.size(); ++j)
                        node->family.push_back(lit(it.items[j]));
                } else {
                    throw ParseError("unknown payload form '" + kw + "'");
                }
            } else if (it.is_list) {
                node->children.push_back(parse(it));
            } else if (!it.atom.empty() && it.atom[0] == ':') {
                if (i + 1 >= n.items.size())
                    throw ParseError("keyword '" + it.atom + "' needs a literal");
                Value v = lit(n.items[++i]);
                if (it.atom == ":mid") node->mid = std::move(v);
                else if (it.atom == ":pre") node->inner_pre = std::move(v);
                else if (it.atom == ":post") node->inner_post = std::move(v);
                else if (it.atom == ":k1") node->k1 = std::move(v);
                else if (it.atom == ":k2") node->k2 = std::move(v);
                else if (it.atom == ":kp") node->kp = std::move(v);
                else if (it.atom == ":l") node->l = std::move(v);
                else throw ParseError("unknown keyword '" + it.atom + "'");
            } else {
                throw ParseError("unexpected token '" + it.atom + "' in proof rule");
            }
        }
        return node;
    }
};

// ---------------------------------------------------------------------------
// Writing.
// ---------------------------------------------------------------------------

void write_node(const DerivationNode& n, const DomainDescriptor& dom, int indent,
                std::ostringstream& out) {
    auto pad = [&](int k) {
        out << '\n';
        for (int i = 0; i < k; ++i) out << ' ';
    };
    auto lit = [&](const Value& v) { return print_literal(v, dom); };
    using Rule = DerivationNode::Rule;

    out << '(' << rule_name(n.rule);
    switch (n.rule) {
        case Rule::Basic:
            break;
        case Rule::Iter:
            for (const auto& h : n.iterates) out << " (:h " << lit(h) << ')';
            break;
        case Rule::Join:
            out << " (:cover";
            for (const auto& f : n.family) out << ' ' << lit(f);
            out << ')';
            break;
        case Rule::Meet:
            out << " (:fam";
            for (const auto& f : n.family) out << ' ' << lit(f);
            out << ')';
            break;
        default:
            break;
    }
    for (const auto& c : n.children) {
        pad(indent + 2);
        write_node(*c, dom, indent + 2, out);
    }
    switch (n.rule) {
        case Rule::Seq: out << " :mid " << lit(n.mid); break;
        case Rule::Cons: out << " :pre " << lit(n.inner_pre) << " :post " << lit(n.inner_post); break;
        case Rule::Choice: out << " :k1 " << lit(n.k1) << " :k2 " << lit(n.k2); break;
        case Rule::Rec: out << " :kp " << lit(n.kp) << " :l " << lit(n.l); break;
        case Rule::Inv: out << " :kp " << lit(n.kp); break;
        default: break;
    }
    out << ')';
}

} // namespace

Script parse_script(const std::string& text) {
    Reader reader{text};
    SNode root = reader.read();
    reader.skip_ws();
    if (reader.pos < text.size()) reader.fail("trailing input after the script");
    if (!root.is_list || root.items.empty() || root.items[0].is_list ||
        root.items[0].atom != "triple")
        throw ParseError("a script is a (triple ...) form");

    Script sc;
    const SNode* pre_form = nullptr;
    const SNode* post_form = nullptr;
    const SNode* proof_form = nullptr;
    for (size_t i = 1; i < root.items.size(); ++i) {
        const SNode& f = root.items[i];
        if (!f.is_list || f.items.empty() || f.items[0].is_list)
            throw ParseError("expected a (keyword ...) form inside (triple ...)");
        const std::string& head = f.items[0].atom;
        if (head == "domain") {
            if (f.items.size() < 2) throw ParseError("(domain ...) needs a spec");
            sc.domain_spec = raw_span(text, f.items[0].end, f.end - 1);
        } else if (head == "mode") {
            if (f.items.size() < 3 || f.items[1].atom != "abstract")
                throw ParseError("(mode ...) must be (mode abstract GI-SPEC)");
            sc.abstract_mode = true;
            sc.gi_spec = raw_span(text, f.items[1].end, f.end - 1);
        } else if (head == "pre") {
            pre_form = &f;
        } else if (head == "post") {
            post_form = &f;
        } else if (head == "cmd") {
            if (f.items.size() != 2 || !f.items[1].is_string)
                throw ParseError("(cmd ...) needs one quoted program");
            sc.program_text = f.items[1].atom;
        } else if (head == "proof") {
            if (f.items.size() != 2 || !f.items[1].is_list)
                throw ParseError("(proof ...) needs one rule form");
            proof_form = &f.items[1];
        } else {
            throw ParseError("unknown form '(" + head + " ...)' in script");
        }
    }
    if (sc.domain_spec.empty()) throw ParseError("script misses the (domain ...) form");
    if (!pre_form || !post_form) throw ParseError("script misses (pre ...) or (post ...)");
    if (sc.program_text.empty()) throw ParseError("script misses the (cmd ...) form");
    if (!proof_form) throw ParseError("script misses the (proof ...) form");

    DomainPtr dom;
    std::optional<FinStateSpace> parse_space;
    if (sc.abstract_mode) {
        GaloisInsertionPtr gi = make_gi(sc.gi_spec);
        dom = bca_lift(gi, make_domain(sc.domain_spec));
        parse_space = gi->space;
    } else {
        dom = make_domain(sc.domain_spec);
        parse_space = dom->space;
    }
    sc.triple.dom = dom;

    std::set<std::string> vars;
    if (parse_space)
        for (const auto& v : parse_space->vars) vars.insert(v.name);
    else
        vars.insert("x");
    sc.triple.cmd = parse_cmd(sc.program_text, vars);

    sc.triple.pre = parse_literal(raw_span(text, pre_form->items[0].end, pre_form->end - 1), *dom);
    sc.triple.post =
        parse_literal(raw_span(text, post_form->items[0].end, post_form->end - 1), *dom);

    NodeParser np{*dom};
    sc.proof = np.parse(*proof_form);
    return sc;
}

std::string write_script(const Triple& t, const DerivationNode& proof,
                         const std::string& program_text) {
    std::ostringstream out;
    out << "(triple\n";
    out << "  (domain " << t.dom->spec << ")\n";
    out << "  (pre " << print_literal(t.pre, *t.dom) << ")\n";
    out << "  (cmd \"" << program_text << "\")\n";
    out << "  (post " << print_literal(t.post, *t.dom) << ")\n";
    out << "  (proof ";
    write_node(proof, *t.dom, 4, out);
    out << "))\n";
    return out.str();
}

} // namespace abslog
