#include "shellbend/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <utility>
#include <vector>

namespace shellbend {

namespace {

const std::map<std::string, FuncKind, std::less<>>& function_table() {
    static const std::map<std::string, FuncKind, std::less<>> table = {
        {"sin", FuncKind::Sin},   {"cos", FuncKind::Cos},   {"tan", FuncKind::Tan},
        {"exp", FuncKind::Exp},   {"log", FuncKind::Log},   {"sqrt", FuncKind::Sqrt},
        {"sinh", FuncKind::Sinh}, {"cosh", FuncKind::Cosh}, {"tanh", FuncKind::Tanh},
        {"asin", FuncKind::Asin}, {"acos", FuncKind::Acos}, {"atan", FuncKind::Atan},
    };
    return table;
}

const char* func_name(FuncKind f) {
    switch (f) {
    case FuncKind::Sin: return "sin";
    case FuncKind::Cos: return "cos";
    case FuncKind::Tan: return "tan";
    case FuncKind::Exp: return "exp";
    case FuncKind::Log: return "log";
    case FuncKind::Sqrt: return "sqrt";
    case FuncKind::Sinh: return "sinh";
    case FuncKind::Cosh: return "cosh";
    case FuncKind::Tanh: return "tanh";
    case FuncKind::Asin: return "asin";
    case FuncKind::Acos: return "acos";
    case FuncKind::Atan: return "atan";
    case FuncKind::Unknown: break;
    }
    return "?";
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::shared_ptr<ExprNode> new_node(NodeKind kind) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    return n;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

struct Token {
    enum Type { Num, Ident, Plus, Minus, Star, Slash, Caret, LPar, RPar, End };
    Type type = End;
    double num = 0.0;
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = src.size();
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    auto is_ident_start = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    auto is_ident = [&](char c) { return is_ident_start(c) || is_digit(c); };

    while (i < n) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.begin = i;
        if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(src[i + 1]))) {
            std::size_t j = i;
            while (j < n && is_digit(src[j])) ++j;
            if (j < n && src[j] == '.') {
                ++j;
                while (j < n && is_digit(src[j])) ++j;
            }
            if (j < n && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < n && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < n && is_digit(src[k])) {
                    j = k;
                    while (j < n && is_digit(src[j])) ++j;
                }
            }
            t.type = Token::Num;
            t.text.assign(src.substr(i, j - i));
            t.num = std::strtod(t.text.c_str(), nullptr);
            t.end = j;
            i = j;
        } else if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < n && is_ident(src[j])) ++j;
            t.type = Token::Ident;
            t.text.assign(src.substr(i, j - i));
            t.end = j;
            i = j;
        } else {
            switch (c) {
            case '+': t.type = Token::Plus; break;
            case '-': t.type = Token::Minus; break;
            case '*': t.type = Token::Star; break;
            case '/': t.type = Token::Slash; break;
            case '^': t.type = Token::Caret; break;
            case '(': t.type = Token::LPar; break;
            case ')': t.type = Token::RPar; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "' at offset " +
                                     std::to_string(i),
                                 i, {});
            }
            t.text = c;
            t.end = i + 1;
            ++i;
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.begin = end.end = n;
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    ExprPtr run() {
        ExprPtr e = expr();
        if (peek().type != Token::End)
            fail("unexpected token '" + peek().text + "'",
                 {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
        std::ostringstream os;
        os << what << " at offset " << peek().begin;
        if (!expected.empty()) {
            os << "; expected ";
            for (std::size_t i = 0; i < expected.size(); ++i)
                os << (i ? ", " : "") << expected[i];
        }
        throw ParseError(os.str(), peek().begin, std::move(expected));
    }

    void expect_rpar() {
        if (peek().type != Token::RPar)
            fail("missing ')'", {"')'", "'+'", "'-'", "'*'", "'/'", "'^'"});
        advance();
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (peek().type == Token::Plus || peek().type == Token::Minus) {
            const bool add = advance().type == Token::Plus;
            ExprPtr rhs = term();
            lhs = binary(add ? BinaryOp::Add : BinaryOp::Sub, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        while (peek().type == Token::Star || peek().type == Token::Slash) {
            const bool mul = advance().type == Token::Star;
            ExprPtr rhs = factor();
            lhs = binary(mul ? BinaryOp::Mul : BinaryOp::Div, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr factor() {
        if (peek().type == Token::Minus) {
            const Token& minus = advance();
            ExprPtr a = power();
            auto n = new_node(NodeKind::Unary);
            n->child = a;
            n->span = {minus.begin, a->span.end};
            return n;
        }
        if (peek().type != Token::Num && peek().type != Token::Ident &&
            peek().type != Token::LPar)
            fail("expected an operand", {"number", "identifier", "'('", "'-'"});
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (peek().type == Token::Caret) {
            advance();
            ExprPtr exponent = factor();
            return binary(BinaryOp::Pow, base, exponent);
        }
        return base;
    }

    ExprPtr atom() {
        const Token& t = peek();
        switch (t.type) {
        case Token::Num: {
            advance();
            auto n = new_node(NodeKind::Number);
            n->number = t.num;
            n->span = {t.begin, t.end};
            return n;
        }
        case Token::Ident: {
            advance();
            if (peek().type == Token::LPar) {
                advance();
                ExprPtr arg = expr();
                const std::size_t close = peek().end;
                expect_rpar();
                auto n = new_node(NodeKind::Call);
                n->name = t.text;
                auto it = function_table().find(t.text);
                n->func = it == function_table().end() ? FuncKind::Unknown : it->second;
                n->child = arg;
                n->span = {t.begin, close};
                return n;
            }
            if (t.text == "xi1" || t.text == "xi2") {
                auto n = new_node(NodeKind::Variable);
                n->var_index = t.text == "xi1" ? 1 : 2;
                n->span = {t.begin, t.end};
                return n;
            }
            if (t.text == "pi" || t.text == "e") {
                auto n = new_node(NodeKind::Number);
                n->number = t.text == "pi" ? M_PI : M_E;
                n->span = {t.begin, t.end};
                return n;
            }
            auto n = new_node(NodeKind::Parameter);
            n->name = t.text;
            n->span = {t.begin, t.end};
            return n;
        }
        case Token::LPar: {
            advance();
            ExprPtr inner = expr();
            expect_rpar();
            return inner;
        }
        default:
            fail("expected an operand", {"number", "identifier", "'('"});
        }
    }

    ExprPtr binary(BinaryOp op, ExprPtr a, ExprPtr b) {
        auto n = new_node(NodeKind::Binary);
        n->op = op;
        n->span = {a->span.begin, b->span.end};
        n->child = std::move(a);
        n->rhs = std::move(b);
        return n;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// Printer precedence; atoms bind tightest.
int precedence(const ExprNode& n) {
    switch (n.kind) {
    case NodeKind::Number: return n.number < 0.0 ? 3 : 5;
    case NodeKind::Variable:
    case NodeKind::Parameter:
    case NodeKind::Call: return 5;
    case NodeKind::Unary: return 3;
    case NodeKind::Binary:
        switch (n.op) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
        }
    }
    return 5;
}

void print_node(std::string& out, const ExprNode& n);

void print_wrapped(std::string& out, const ExprNode& n, bool parens) {
    if (parens) out += '(';
    print_node(out, n);
    if (parens) out += ')';
}

void print_node(std::string& out, const ExprNode& n) {
    switch (n.kind) {
    case NodeKind::Number:
        out += format_double(n.number);
        return;
    case NodeKind::Variable:
        out += n.var_index == 1 ? "xi1" : "xi2";
        return;
    case NodeKind::Parameter:
        out += n.name;
        return;
    case NodeKind::Unary:
        out += '-';
        print_wrapped(out, *n.child, precedence(*n.child) <= 3);
        return;
    case NodeKind::Call:
        out += n.func == FuncKind::Unknown ? n.name : func_name(n.func);
        out += '(';
        print_node(out, *n.child);
        out += ')';
        return;
    case NodeKind::Binary: {
        const int p = precedence(n);
        const char* op = nullptr;
        switch (n.op) {
        case BinaryOp::Add: op = " + "; break;
        case BinaryOp::Sub: op = " - "; break;
        case BinaryOp::Mul: op = "*"; break;
        case BinaryOp::Div: op = "/"; break;
        case BinaryOp::Pow: op = "^"; break;
        }
        if (n.op == BinaryOp::Pow) {
            print_wrapped(out, *n.child, precedence(*n.child) < 5);
            out += op;
            print_wrapped(out, *n.rhs, precedence(*n.rhs) < 3);
        } else {
            print_wrapped(out, *n.child, precedence(*n.child) < p);
            out += op;
            print_wrapped(out, *n.rhs, precedence(*n.rhs) <= p);
        }
        return;
    }
    }
}

std::string span_suffix(const SourceSpan& s) {
    return " (source span " + std::to_string(s.begin) + ".." + std::to_string(s.end) + ")";
}

} // namespace

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

ExprPtr make_number(double v) {
    auto n = new_node(NodeKind::Number);
    n->number = v == 0.0 ? 0.0 : v; // normalize -0
    return n;
}

ExprPtr make_variable(int index) {
    if (index != 1 && index != 2)
        throw Error("make_variable: index must be 1 or 2");
    auto n = new_node(NodeKind::Variable);
    n->var_index = index;
    return n;
}

ExprPtr make_parameter(std::string name) {
    auto n = new_node(NodeKind::Parameter);
    n->name = std::move(name);
    return n;
}

ExprPtr make_unary_neg(ExprPtr a) {
    auto n = new_node(NodeKind::Unary);
    n->child = std::move(a);
    return n;
}

ExprPtr make_binary(BinaryOp op, ExprPtr a, ExprPtr b) {
    auto n = new_node(NodeKind::Binary);
    n->op = op;
    n->child = std::move(a);
    n->rhs = std::move(b);
    return n;
}

ExprPtr make_call(FuncKind f, ExprPtr a) {
    auto n = new_node(NodeKind::Call);
    n->func = f;
    n->name = func_name(f);
    n->child = std::move(a);
    return n;
}

ExprPtr parse_expr(std::string_view text) {
    return Parser(text).run();
}

std::string to_string(const ExprPtr& e) {
    std::string out;
    print_node(out, *e);
    return out;
}

bool ast_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
    case NodeKind::Number: return a->number == b->number;
    case NodeKind::Variable: return a->var_index == b->var_index;
    case NodeKind::Parameter: return a->name == b->name;
    case NodeKind::Unary: return ast_equal(a->child, b->child);
    case NodeKind::Binary:
        return a->op == b->op && ast_equal(a->child, b->child) && ast_equal(a->rhs, b->rhs);
    case NodeKind::Call:
        return a->func == b->func && a->name == b->name && ast_equal(a->child, b->child);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

Jet2 eval_jet(const ExprNode& node, const Jet2& xi1, const Jet2& xi2,
              const std::map<std::string, double>& params) {
    switch (node.kind) {
    case NodeKind::Number:
        return Jet2(node.number);
    case NodeKind::Variable:
        return node.var_index == 1 ? xi1 : xi2;
    case NodeKind::Parameter: {
        auto it = params.find(node.name);
        if (it == params.end())
            throw UnknownIdentifier("unbound parameter '" + node.name + "'" +
                                        span_suffix(node.span),
                                    node.span.begin);
        return Jet2(it->second);
    }
    case NodeKind::Unary:
        return -eval_jet(*node.child, xi1, xi2, params);
    case NodeKind::Binary: {
        const Jet2 a = eval_jet(*node.child, xi1, xi2, params);
        const Jet2 b = eval_jet(*node.rhs, xi1, xi2, params);
        try {
            switch (node.op) {
            case BinaryOp::Add: return a + b;
            case BinaryOp::Sub: return a - b;
            case BinaryOp::Mul: return a * b;
            case BinaryOp::Div: return a / b;
            case BinaryOp::Pow: return pow(a, b);
            }
        } catch (const DivisionByZero& e) {
            throw DivisionByZero(std::string(e.what()) + span_suffix(node.span));
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + span_suffix(node.span));
        }
        return Jet2(0.0); // unreachable
    }
    case NodeKind::Call: {
        const Jet2 a = eval_jet(*node.child, xi1, xi2, params);
        try {
            switch (node.func) {
            case FuncKind::Sin: return sin(a);
            case FuncKind::Cos: return cos(a);
            case FuncKind::Tan: return tan(a);
            case FuncKind::Exp: return exp(a);
            case FuncKind::Log: return log(a);
            case FuncKind::Sqrt: return sqrt(a);
            case FuncKind::Sinh: return sinh(a);
            case FuncKind::Cosh: return cosh(a);
            case FuncKind::Tanh: return tanh(a);
            case FuncKind::Asin: return asin(a);
            case FuncKind::Acos: return acos(a);
            case FuncKind::Atan: return atan(a);
            case FuncKind::Unknown:
                throw UnknownIdentifier("unknown function '" + node.name + "'" +
                                            span_suffix(node.span),
                                        node.span.begin);
            }
        } catch (const DivisionByZero& e) {
            throw DivisionByZero(std::string(e.what()) + span_suffix(node.span));
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + span_suffix(node.span));
        }
        return Jet2(0.0); // unreachable
    }
    }
    throw Error("corrupt expression node");
}

ExprPtr fold_constants(const ExprPtr& e) {
    switch (e->kind) {
    case NodeKind::Number:
    case NodeKind::Variable:
    case NodeKind::Parameter:
        return e;
    case NodeKind::Unary: {
        ExprPtr c = fold_constants(e->child);
        if (c->kind == NodeKind::Number) {
            auto n = std::const_pointer_cast<ExprNode>(make_number(-c->number));
            n->span = e->span;
            return n;
        }
        if (c == e->child) return e;
        auto n = new_node(NodeKind::Unary);
        n->child = c;
        n->span = e->span;
        return n;
    }
    case NodeKind::Binary:
    case NodeKind::Call: {
        ExprPtr a = fold_constants(e->child);
        ExprPtr b = e->rhs ? fold_constants(e->rhs) : nullptr;
        const bool foldable = a->kind == NodeKind::Number &&
                              (e->kind == NodeKind::Call || b->kind == NodeKind::Number);
        auto n = new_node(e->kind);
        n->op = e->op;
        n->func = e->func;
        n->name = e->name;
        n->span = e->span;
        n->child = a;
        n->rhs = b;
        if (foldable) {
            try {
                const Jet2 v = eval_jet(*n, Jet2(0.0), Jet2(0.0), {});
                auto folded = std::const_pointer_cast<ExprNode>(make_number(v.val));
                folded->span = e->span;
                return folded;
            } catch (const Error&) {
                // leave domain-violating constants unfolded; evaluation reports them
            }
        }
        if (a == e->child && b == e->rhs) return e;
        return n;
    }
    }
    return e;
}

// ---------------------------------------------------------------------------
// SurfaceExpr
// ---------------------------------------------------------------------------

namespace {

bool valid_param_name(const std::string& s) {
    if (s.empty()) return false;
    auto head = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    if (!head(s[0])) return false;
    for (char c : s)
        if (!head(c) && !(c >= '0' && c <= '9')) return false;
    return true;
}

void validate_names(const ExprNode& n, const std::map<std::string, double>& params) {
    switch (n.kind) {
    case NodeKind::Number:
    case NodeKind::Variable:
        return;
    case NodeKind::Parameter:
        if (!params.count(n.name))
            throw UnknownIdentifier("unknown identifier '" + n.name + "'" + span_suffix(n.span),
                                    n.span.begin);
        return;
    case NodeKind::Unary:
        validate_names(*n.child, params);
        return;
    case NodeKind::Binary:
        validate_names(*n.child, params);
        validate_names(*n.rhs, params);
        return;
    case NodeKind::Call:
        if (n.func == FuncKind::Unknown)
            throw UnknownIdentifier("unknown function '" + n.name + "'" + span_suffix(n.span),
                                    n.span.begin);
        validate_names(*n.child, params);
        return;
    }
}

} // namespace

void validate_expr(const ExprNode& node, const std::map<std::string, double>& params) {
    validate_names(node, params);
}

SurfaceExpr::SurfaceExpr(std::array<ExprPtr, 3> components, std::map<std::string, double> params,
                         ParamDomain domain)
    : components_(std::move(components)), params_(std::move(params)), domain_(domain) {
    if (!domain_.positive_measure())
        throw Error("parameter domain has empty measure (max must exceed min in each coordinate)");
    for (const auto& [name, value] : params_) {
        if (!valid_param_name(name))
            throw Error("invalid parameter name '" + name + "'");
        if (name == "xi1" || name == "xi2" || name == "pi" || name == "e" ||
            function_table().count(name))
            throw Error("parameter name '" + name + "' is reserved");
        (void)value;
    }
    for (const auto& c : components_)
        validate_names(*c, params_);
}

SurfaceExpr SurfaceExpr::parse(const std::array<std::string, 3>& components,
                               std::map<std::string, double> params, ParamDomain domain) {
    std::array<ExprPtr, 3> asts;
    for (std::size_t k = 0; k < 3; ++k)
        asts[k] = parse_expr(components[k]);
    return SurfaceExpr(std::move(asts), std::move(params), domain);
}

SurfaceExpr SurfaceExpr::from_asts(std::array<ExprPtr, 3> components,
                                   std::map<std::string, double> params, ParamDomain domain) {
    return SurfaceExpr(std::move(components), std::move(params), domain);
}

std::array<Jet2, 3> SurfaceExpr::eval(const Vec2& xi) const {
    if (!domain_.contains(xi)) {
        std::ostringstream os;
        os << "point (" << xi[0] << ", " << xi[1] << ") outside parameter domain [" << domain_.xi1_min
           << ", " << domain_.xi1_max << "] x [" << domain_.xi2_min << ", " << domain_.xi2_max << "]";
        throw OutsideParamDomain(os.str());
    }
    const Jet2 x1 = Jet2::variable(1, xi[0]);
    const Jet2 x2 = Jet2::variable(2, xi[1]);
    return {eval_jet(*components_[0], x1, x2, params_),
            eval_jet(*components_[1], x1, x2, params_),
            eval_jet(*components_[2], x1, x2, params_)};
}

} // namespace shellbend
