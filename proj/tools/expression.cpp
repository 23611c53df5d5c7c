#include "expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <utility>
#include <vector>

namespace blend::cli {

struct Expression::Node {
    enum class Kind { number, variable, negate, add, sub, mul, div, pow, call };
    Kind kind = Kind::number;
    double value = 0.0;
    double (*fn)(double) = nullptr;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

double (*lookup_function(std::string_view name))(double) {
    if (name == "sin") return [](double v) { return std::sin(v); };
    if (name == "cos") return [](double v) { return std::cos(v); };
    if (name == "tan") return [](double v) { return std::tan(v); };
    if (name == "exp") return [](double v) { return std::exp(v); };
    if (name == "ln" || name == "log") return [](double v) { return std::log(v); };
    if (name == "sqrt") return [](double v) { return std::sqrt(v); };
    if (name == "abs") return [](double v) { return std::fabs(v); };
    return nullptr;
}

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    NodePtr parse() {
        NodePtr root = expr();
        skip_space();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return root;
    }

private:
    // expr := term (('+'|'-') term)*
    NodePtr expr() {
        NodePtr lhs = term();
        while (true) {
            if (accept('+')) {
                lhs = make(Node::Kind::add, lhs, term());
            } else if (accept('-')) {
                lhs = make(Node::Kind::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    NodePtr term() {
        NodePtr lhs = unary();
        while (true) {
            if (accept('*')) {
                lhs = make(Node::Kind::mul, lhs, unary());
            } else if (accept('/')) {
                lhs = make(Node::Kind::div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    // unary := ('-'|'+') unary | power
    NodePtr unary() {
        if (accept('-')) {
            return make(Node::Kind::negate, unary());
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    // power := primary ('^' unary)?
    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) {
            return make(Node::Kind::pow, base, unary());
        }
        return base;
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= s_.size()) {
            fail("unexpected end of expression");
        }
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::string name = identifier();
            if (name == "x" || name == "t" || name == "theta") {
                return make(Node::Kind::variable);
            }
            if (name == "pi" || name == "e") {
                auto n = std::make_shared<Node>();
                n->value = name == "pi" ? std::numbers::pi : std::numbers::e;
                return n;
            }
            if (auto* fn = lookup_function(name)) {
                expect('(');
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::call;
                n->fn = fn;
                n->lhs = expr();
                expect(')');
                return n;
            }
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const std::string rest(s_.substr(pos_));
        char* end = nullptr;
        const double v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) {
            fail("malformed number");
        }
        pos_ += static_cast<std::size_t>(end - rest.c_str());
        auto n = std::make_shared<Node>();
        n->value = v;
        return n;
    }

    std::string identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ExpressionError("expression error at " + std::to_string(pos_) + ": " + msg);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

double eval(const Node& n, double x) {
    switch (n.kind) {
    case Node::Kind::number: return n.value;
    case Node::Kind::variable: return x;
    case Node::Kind::negate: return -eval(*n.lhs, x);
    case Node::Kind::add: return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Node::Kind::sub: return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Node::Kind::mul: return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Node::Kind::div: return eval(*n.lhs, x) / eval(*n.rhs, x);
    case Node::Kind::pow: return std::pow(eval(*n.lhs, x), eval(*n.rhs, x));
    case Node::Kind::call: return n.fn(eval(*n.lhs, x));
    }
    return 0.0;
}

} // namespace

Expression::Expression(std::string text, std::shared_ptr<const Node> root)
    : text_(std::move(text)), root_(std::move(root)) {}

Expression Expression::parse(std::string_view text) {
    return Expression(std::string(text), Parser(text).parse());
}

double Expression::operator()(double x) const {
    return eval(*root_, x);
}

} // namespace blend::cli
