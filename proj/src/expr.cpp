#include "wentzell/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "wentzell/errors.hpp"

namespace wentzell {

struct Expression::Node {
    enum class Op { constant, var_x, var_y, add, sub, mul, div, pow, neg, cos, sin, exp };
    Op op;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr l = nullptr, NodePtr r = nullptr, double v = 0.0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->value = v;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw Error(ErrorKind::config_error,
                    "expression parse error at position " + std::to_string(pos_) + ": " + why +
                        " in \"" + s_ + "\"");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (consume('+'))
                lhs = make(Node::Op::add, lhs, term());
            else if (consume('-'))
                lhs = make(Node::Op::sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (consume('*'))
                lhs = make(Node::Op::mul, lhs, unary());
            else if (consume('/'))
                lhs = make(Node::Op::div, lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (consume('-')) return make(Node::Op::neg, unary());
        if (consume('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (consume('^')) return make(Node::Op::pow, base, unary());  // right-assoc
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return ident();
        if (consume('(')) {
            NodePtr e = expr();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        fail("unexpected character");
    }

    NodePtr number() {
        size_t end = pos_;
        while (end < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' ||
                s_[end] == 'e' || s_[end] == 'E' ||
                ((s_[end] == '+' || s_[end] == '-') && end > pos_ &&
                 (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
            ++end;
        double v;
        try {
            size_t used = 0;
            v = std::stod(s_.substr(pos_, end - pos_), &used);
            end = pos_ + used;
        } catch (const std::exception&) {
            fail("bad numeric literal");
        }
        pos_ = end;
        return make(Node::Op::constant, nullptr, nullptr, v);
    }

    NodePtr ident() {
        size_t end = pos_;
        while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
        std::string name = s_.substr(pos_, end - pos_);
        pos_ = end;
        if (name == "x") return make(Node::Op::var_x);
        if (name == "y") return make(Node::Op::var_y);
        if (name == "pi") return make(Node::Op::constant, nullptr, nullptr, M_PI);
        Node::Op fop;
        if (name == "cos")
            fop = Node::Op::cos;
        else if (name == "sin")
            fop = Node::Op::sin;
        else if (name == "exp")
            fop = Node::Op::exp;
        else
            fail("unknown identifier '" + name + "'");
        if (!consume('(')) fail("expected '(' after function name");
        NodePtr arg = expr();
        if (!consume(')')) fail("expected ')'");
        return make(fop, arg);
    }
};

double eval_node(const Node* n, double x, double y) {
    switch (n->op) {
        case Node::Op::constant: return n->value;
        case Node::Op::var_x: return x;
        case Node::Op::var_y: return y;
        case Node::Op::add: return eval_node(n->lhs.get(), x, y) + eval_node(n->rhs.get(), x, y);
        case Node::Op::sub: return eval_node(n->lhs.get(), x, y) - eval_node(n->rhs.get(), x, y);
        case Node::Op::mul: return eval_node(n->lhs.get(), x, y) * eval_node(n->rhs.get(), x, y);
        case Node::Op::div: return eval_node(n->lhs.get(), x, y) / eval_node(n->rhs.get(), x, y);
        case Node::Op::pow:
            return std::pow(eval_node(n->lhs.get(), x, y), eval_node(n->rhs.get(), x, y));
        case Node::Op::neg: return -eval_node(n->lhs.get(), x, y);
        case Node::Op::cos: return std::cos(eval_node(n->lhs.get(), x, y));
        case Node::Op::sin: return std::sin(eval_node(n->lhs.get(), x, y));
        case Node::Op::exp: return std::exp(eval_node(n->lhs.get(), x, y));
    }
    return 0.0;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.root_ = Parser(text).run();
    e.text_ = text;
    return e;
}

double Expression::eval(double x, double y) const {
    if (!root_) throw Error(ErrorKind::config_error, "evaluating empty expression");
    return eval_node(root_.get(), x, y);
}

}  // namespace wentzell
