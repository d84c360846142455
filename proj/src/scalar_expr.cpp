#include "warpcheck/scalar_expr.hpp"

#include <cctype>
#include <sstream>

namespace warpcheck {

std::optional<Rational> rational_from_decimal(const std::string& text) {
    if (text.empty()) return std::nullopt;
    size_t dot = text.find('.');
    try {
        if (dot == std::string::npos) {
            Rational q(text, 10);
            q.canonicalize();
            return q;
        }
        const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const size_t frac_len = text.size() - dot - 1;
        if (digits.empty() || frac_len == 0) return std::nullopt;
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

} // namespace warpcheck

namespace warpcheck::series {

struct ScalarExpr::Node {
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Sqrt };
    Kind kind;
    Rational value;   // Const
    int exponent = 0; // Pow
    std::shared_ptr<const Node> lhs, rhs;
};

using Node = ScalarExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

namespace {

NodePtr make_const(const Rational& c) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Const;
    n->value = c;
    return n;
}

NodePtr make_binary(Node::Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr make_unary(Node::Kind k, NodePtr a, int exponent = 0) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->exponent = exponent;
    return n;
}

} // namespace

ScalarExpr::ScalarExpr() : node_(make_const(Rational(0))) {}
ScalarExpr::ScalarExpr(NodePtr node) : node_(std::move(node)) {}

ScalarExpr ScalarExpr::constant(const Rational& c) { return ScalarExpr(make_const(c)); }

ScalarExpr ScalarExpr::t() {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Var;
    return ScalarExpr(std::move(n));
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(make_binary(Node::Kind::Add, a.node_, b.node_));
}
ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(make_binary(Node::Kind::Sub, a.node_, b.node_));
}
ScalarExpr operator-(const ScalarExpr& a) {
    return ScalarExpr(make_unary(Node::Kind::Neg, a.node_));
}
ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(make_binary(Node::Kind::Mul, a.node_, b.node_));
}
ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(make_binary(Node::Kind::Div, a.node_, b.node_));
}
ScalarExpr pow(const ScalarExpr& a, int e) {
    return ScalarExpr(make_unary(Node::Kind::Pow, a.node_, e));
}
ScalarExpr sqrt(const ScalarExpr& a) {
    return ScalarExpr(make_unary(Node::Kind::Sqrt, a.node_));
}

// ---------------------------------------------------------------------------
// Evaluation. One walker over any numeric type with ring ops, pow and sqrt.
// ---------------------------------------------------------------------------

namespace {

template <class Num>
struct NumOps; // constant(Rational) and variable factories per numeric type

template <class S>
struct NumOps<TaylorD2<S>> {
    static TaylorD2<S> constant(const Rational& c, const TaylorD2<S>&) {
        if constexpr (std::is_same_v<S, double>)
            return TaylorD2<S>::constant(to_double(c));
        else
            return TaylorD2<S>::constant(c);
    }
};

template <>
struct NumOps<Jet> {
    static Jet constant(const Rational& c, const Jet& like) {
        return Jet::constant(c, like.order());
    }
};

template <class Num>
Num eval_node(const Node& n, const Num& t) {
    switch (n.kind) {
    case Node::Kind::Const: return NumOps<Num>::constant(n.value, t);
    case Node::Kind::Var: return t;
    case Node::Kind::Add: return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
    case Node::Kind::Sub: return eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
    case Node::Kind::Mul: return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
    case Node::Kind::Div: return eval_node(*n.lhs, t) / eval_node(*n.rhs, t);
    case Node::Kind::Neg: return -eval_node(*n.lhs, t);
    case Node::Kind::Pow: return pow(eval_node(*n.lhs, t), n.exponent);
    case Node::Kind::Sqrt: return sqrt(eval_node(*n.lhs, t));
    }
    throw Error("corrupt expression node");
}

} // namespace

Deriv2 eval_d2(const ScalarExpr& e, double t) {
    try {
        return eval_node(e.root(), Deriv2::variable(t));
    } catch (const DomainError& err) {
        std::ostringstream os;
        os << err.what() << " at t = " << t << " in `" << e.str() << "`";
        throw DomainError(os.str());
    }
}

double eval(const ScalarExpr& e, double t) { return eval_d2(e, t).value; }

RationalDeriv2 eval_d2_exact(const ScalarExpr& e, const Rational& t) {
    try {
        return eval_node(e.root(), RationalDeriv2::variable(t));
    } catch (const DomainError& err) {
        throw DomainError(std::string(err.what()) + " at t = " + warpcheck::to_string(t) +
                          " in `" + e.str() + "`");
    }
}

Rational eval_exact(const ScalarExpr& e, const Rational& t) {
    return eval_d2_exact(e, t).value;
}

Jet expand(const ScalarExpr& e, int order) {
    try {
        return eval_node(e.root(), Jet::variable(order));
    } catch (const DivisionByZeroConstantTerm&) {
        throw NotExpandable("denominator vanishes at t = 0 in `" + e.str() + "`");
    } catch (const NonPositiveConstantTerm&) {
        throw NotExpandable("radicand not positive at t = 0 in `" + e.str() + "`");
    } catch (const DomainError& err) {
        throw NotExpandable(std::string(err.what()) + " in `" + e.str() + "`");
    }
}

// ---------------------------------------------------------------------------
// Printer, precedence-aware
// ---------------------------------------------------------------------------

namespace {

// Precedence levels: 0 sums and unary minus, 1 products, 3 powers, 4 atoms.
int prec_of(const Node& n) {
    switch (n.kind) {
    case Node::Kind::Const:
        if (sign_of(n.value) < 0) return 0;
        return n.value.get_den() == 1 ? 4 : 1; // "p/q" reparses as a division
    case Node::Kind::Var: return 4;
    case Node::Kind::Add:
    case Node::Kind::Sub:
    case Node::Kind::Neg: return 0;
    case Node::Kind::Mul:
    case Node::Kind::Div: return 1;
    case Node::Kind::Pow: return 3;
    case Node::Kind::Sqrt: return 4;
    }
    return 0;
}

void print_node(std::ostream& os, const Node& n, int min_prec) {
    if (prec_of(n) < min_prec) {
        os << '(';
        print_node(os, n, 0);
        os << ')';
        return;
    }
    switch (n.kind) {
    case Node::Kind::Const: os << warpcheck::to_string(n.value); return;
    case Node::Kind::Var: os << 't'; return;
    case Node::Kind::Add:
        print_node(os, *n.lhs, 0);
        os << " + ";
        print_node(os, *n.rhs, 1);
        return;
    case Node::Kind::Sub:
        print_node(os, *n.lhs, 0);
        os << " - ";
        print_node(os, *n.rhs, 1);
        return;
    case Node::Kind::Mul:
        print_node(os, *n.lhs, 1);
        os << '*';
        print_node(os, *n.rhs, 2);
        return;
    case Node::Kind::Div:
        print_node(os, *n.lhs, 1);
        os << '/';
        print_node(os, *n.rhs, 2);
        return;
    case Node::Kind::Neg:
        os << '-';
        print_node(os, *n.lhs, 1);
        return;
    case Node::Kind::Pow:
        print_node(os, *n.lhs, 4);
        os << '^' << n.exponent;
        return;
    case Node::Kind::Sqrt:
        os << "sqrt(";
        print_node(os, *n.lhs, 0);
        os << ')';
        return;
    }
}

} // namespace

std::string ScalarExpr::str() const {
    std::ostringstream os;
    print_node(os, *node_, 0);
    return os.str();
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over the canonical grammar
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' '-'? digits)?
//   atom  := number | 't' | '(' expr ')' | 'sqrt' '(' expr ')'
//   number := digits ('.' digits)?
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg) {
        std::ostringstream os;
        os << "parse error at position " << pos << " in `" << text << "`: " << msg;
        throw ParseError(os.str());
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (eat('+')) lhs = make_binary(Node::Kind::Add, lhs, parse_term());
            else if (eat('-')) lhs = make_binary(Node::Kind::Sub, lhs, parse_term());
            else return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (eat('*')) lhs = make_binary(Node::Kind::Mul, lhs, parse_unary());
            else if (eat('/')) lhs = make_binary(Node::Kind::Div, lhs, parse_unary());
            else return lhs;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) return make_unary(Node::Kind::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (eat('^')) {
            skip_ws();
            bool neg = false;
            if (pos < text.size() && text[pos] == '-') { neg = true; ++pos; }
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) fail("expected an integer exponent after '^'");
            int e = 0;
            for (size_t i = start; i < pos; ++i) {
                e = e * 10 + (text[i] - '0');
                if (e > 1000) fail("exponent too large");
            }
            return make_unary(Node::Kind::Pow, base, neg ? -e : e);
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        const char c = text[pos];
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
                ++pos;
            auto q = rational_from_decimal(std::string(text.substr(start, pos - start)));
            if (!q) fail("bad numeric literal");
            return make_const(*q);
        }
        if (text.compare(pos, 4, "sqrt") == 0) {
            pos += 4;
            if (!eat('(')) fail("expected '(' after sqrt");
            NodePtr inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return make_unary(Node::Kind::Sqrt, inner);
        }
        if (c == 't') {
            ++pos;
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Var;
            return n;
        }
        fail("unexpected character");
    }
};

} // namespace

ScalarExpr ScalarExpr::parse(std::string_view text) {
    Parser p{text};
    NodePtr root = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return ScalarExpr(std::move(root));
}

} // namespace warpcheck::series
