#pragma once

/// Expression language for parametric surfaces.
///
/// A surface is three scalar expressions in the coordinates xi1, xi2 and
/// named real parameters, parsed once into an immutable AST and evaluated
/// over Jet2 arithmetic. Grammar (precedence low to high):
///
///   expr    := term (("+"|"-") term)*
///   term    := factor (("*"|"/") factor)*
///   factor  := ("-")? power
///   power   := atom ("^" factor)?            -- right-associative
///   atom    := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
///
/// Reserved identifiers: xi1, xi2, pi, e, and the function names in
/// FuncKind. Everything else is a named parameter.

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "shellbend/jet.hpp"

namespace shellbend {

enum class NodeKind { Number, Variable, Parameter, Unary, Binary, Call };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class FuncKind { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh, Asin, Acos, Atan, Unknown };

/// Half-open byte range [begin, end) into the source text.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind = NodeKind::Number;
    SourceSpan span;

    double number = 0.0;             // Number
    int var_index = 1;               // Variable: 1 or 2
    std::string name;                // Parameter name or Call function name
    FuncKind func = FuncKind::Unknown; // Call
    BinaryOp op = BinaryOp::Add;     // Binary
    ExprPtr child;                   // Unary/Call operand, Binary lhs
    ExprPtr rhs;                     // Binary rhs
};

/// Node factories for programmatic AST construction (transforms, tests).
ExprPtr make_number(double v);
ExprPtr make_variable(int index);
ExprPtr make_parameter(std::string name);
ExprPtr make_unary_neg(ExprPtr a);
ExprPtr make_binary(BinaryOp op, ExprPtr a, ExprPtr b);
ExprPtr make_call(FuncKind f, ExprPtr a);

/// Parse expression text. Throws ParseError with byte offset and the
/// expected-token set on malformed input. Identifier resolution against
/// declared parameters happens later, at surface validation.
ExprPtr parse_expr(std::string_view text);

/// Precedence-aware printer; parse(print(parse(s))) == parse(s).
std::string to_string(const ExprPtr& e);

/// Structural equality, ignoring source spans.
bool ast_equal(const ExprPtr& a, const ExprPtr& b);

/// Bottom-up constant folding. Subtrees whose evaluation would raise a
/// domain error are left unfolded.
ExprPtr fold_constants(const ExprPtr& e);

/// Evaluate one expression over jets. xi are the variable seeds.
Jet2 eval_jet(const ExprNode& node, const Jet2& xi1, const Jet2& xi2,
              const std::map<std::string, double>& params);

/// Identifier resolution against declared parameters, as SurfaceExpr
/// construction performs it. Throws UnknownIdentifier with the source span.
void validate_expr(const ExprNode& node, const std::map<std::string, double>& params);

/// Rectangular parameter domain [xi1_min, xi1_max] x [xi2_min, xi2_max].
struct ParamDomain {
    double xi1_min = 0.0;
    double xi1_max = 0.0;
    double xi2_min = 0.0;
    double xi2_max = 0.0;

    bool contains(const Vec2& xi) const {
        return xi[0] >= xi1_min && xi[0] <= xi1_max && xi[1] >= xi2_min && xi[1] <= xi2_max;
    }
    bool positive_measure() const { return xi1_max > xi1_min && xi2_max > xi2_min; }
    bool operator==(const ParamDomain&) const = default;
};

/// A parametric map (xi1, xi2) -> R^3: three component ASTs, bound
/// parameter values, and the shared parameter domain. Immutable after
/// construction and safely shareable across threads.
class SurfaceExpr {
public:
    /// Parse and validate three component expressions. Throws ParseError,
    /// UnknownIdentifier (unresolvable name or unknown function), or Error
    /// (empty-measure domain, reserved parameter name).
    static SurfaceExpr parse(const std::array<std::string, 3>& components,
                             std::map<std::string, double> params, ParamDomain domain);

    /// Wrap pre-built ASTs (used by the symbolic transforms). Runs the
    /// same validation as parse().
    static SurfaceExpr from_asts(std::array<ExprPtr, 3> components,
                                 std::map<std::string, double> params, ParamDomain domain);

    /// Jets of the three ambient components at xi: values, gradients
    /// x^k_{,a} and Hessians x^k_{,ab}. Throws OutsideParamDomain when xi
    /// is not in the domain and DomainError (annotated with the source
    /// span) when a sub-expression leaves its real domain.
    std::array<Jet2, 3> eval(const Vec2& xi) const;

    const ExprPtr& component(int k) const { return components_[static_cast<std::size_t>(k)]; }
    const std::map<std::string, double>& params() const { return params_; }
    const ParamDomain& domain() const { return domain_; }

    /// Printed form of component k (canonical, reparseable).
    std::string component_text(int k) const { return to_string(component(k)); }

private:
    SurfaceExpr(std::array<ExprPtr, 3> components, std::map<std::string, double> params,
                ParamDomain domain);

    std::array<ExprPtr, 3> components_;
    std::map<std::string, double> params_;
    ParamDomain domain_;
};

} // namespace shellbend
