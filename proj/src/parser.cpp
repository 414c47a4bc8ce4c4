#include "diagon/parser.hpp"

#include <cctype>
#include <map>
#include <set>

namespace diagon {

ExprPtr Expr::number(Rat v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Number;
    e->value = std::move(v);
    return e;
}
ExprPtr Expr::var(std::string n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->name = std::move(n);
    return e;
}
ExprPtr Expr::binary(Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = {std::move(a), std::move(b)};
    return e;
}
ExprPtr Expr::neg(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Neg;
    e->args = {std::move(a)};
    return e;
}
ExprPtr Expr::pow(ExprPtr base, Rat ex) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Pow;
    e->args = {std::move(base)};
    e->exponent = std::move(ex);
    return e;
}
ExprPtr Expr::call(std::string n, std::vector<ExprPtr> a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Call;
    e->name = std::move(n);
    e->args = std::move(a);
    return e;
}

namespace {

struct Token {
    enum class Type { Int, Ident, Punct, End } type;
    std::string text;
    int line, col;
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
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) bump();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= s_.size()) {
            tok_.type = Token::Type::End;
            tok_.text.clear();
            return;
        }
        char c = s_[pos_];
        if (std::isdigit((unsigned char)c)) {
            std::string num;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
                num += s_[pos_];
                bump();
            }
            tok_ = {Token::Type::Int, num, tok_.line, tok_.col};
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string id;
            while (pos_ < s_.size() &&
                   (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) {
                id += s_[pos_];
                bump();
            }
            tok_ = {Token::Type::Ident, id, tok_.line, tok_.col};
            return;
        }
        if (c == '.' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '.') {
            bump();
            bump();
            tok_ = {Token::Type::Punct, "..", tok_.line, tok_.col};
            return;
        }
        bump();
        tok_ = {Token::Type::Punct, std::string(1, c), tok_.line, tok_.col};
    }
    void bump() {
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
    explicit Parser(const std::string& s) : lex_(s) {}

    ExprPtr parse_full() {
        ExprPtr e = parse_expr();
        expect_end();
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) {
        const Token& t = lex_.peek();
        throw ParseError(msg + (t.text.empty() ? "" : " near '" + t.text + "'"), t.line, t.col);
    }
    void expect_punct(const std::string& p) {
        if (lex_.peek().type != Token::Type::Punct || lex_.peek().text != p)
            fail("expected '" + p + "'");
        lex_.next();
    }
    bool accept_punct(const std::string& p) {
        if (lex_.peek().type == Token::Type::Punct && lex_.peek().text == p) {
            lex_.next();
            return true;
        }
        return false;
    }
    void expect_end() {
        if (lex_.peek().type != Token::Type::End) fail("trailing input");
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            if (accept_punct("+"))
                e = Expr::binary(Expr::Kind::Add, e, parse_term());
            else if (accept_punct("-"))
                e = Expr::binary(Expr::Kind::Sub, e, parse_term());
            else
                return e;
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        for (;;) {
            if (accept_punct("*"))
                e = Expr::binary(Expr::Kind::Mul, e, parse_unary());
            else if (accept_punct("/"))
                e = Expr::binary(Expr::Kind::Div, e, parse_unary());
            else
                return e;
        }
    }

    ExprPtr parse_unary() {
        if (accept_punct("-")) return Expr::neg(parse_unary());
        if (accept_punct("+")) return parse_unary();
        return parse_power();
    }

    Rat parse_exponent() {
        bool neg = false;
        if (accept_punct("(")) {
            if (accept_punct("-")) neg = true;
            if (lex_.peek().type != Token::Type::Int) fail("expected integer exponent");
            Int num(lex_.next().text);
            Int den(1);
            if (accept_punct("/")) {
                if (lex_.peek().type != Token::Type::Int) fail("expected exponent denominator");
                den = Int(lex_.next().text);
            }
            expect_punct(")");
            Rat e = rat(num, den);
            return neg ? Rat(-e) : e;
        }
        if (accept_punct("-")) neg = true;
        if (lex_.peek().type != Token::Type::Int) fail("expected integer exponent");
        Rat e{Int(lex_.next().text)};
        return neg ? Rat(-e) : e;
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (accept_punct("^")) return Expr::pow(base, parse_exponent());
        return base;
    }

    ExprPtr parse_atom() {
        const Token& t = lex_.peek();
        if (t.type == Token::Type::Int) {
            return Expr::number(Rat(Int(lex_.next().text)));
        }
        if (t.type == Token::Type::Ident) {
            std::string name = lex_.next().text;
            // F[p,q](...) hypergeometric head
            if (name == "F" && accept_punct("[")) {
                if (lex_.peek().type != Token::Type::Int) fail("expected p in F[p,q]");
                std::string p = lex_.next().text;
                expect_punct(",");
                if (lex_.peek().type != Token::Type::Int) fail("expected q in F[p,q]");
                std::string q = lex_.next().text;
                expect_punct("]");
                name = "F" + p + "_" + q;
                expect_punct("(");
                return parse_call(name);
            }
            if (accept_punct("(")) return parse_call(name);
            return Expr::var(name);
        }
        if (accept_punct("(")) {
            ExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        fail("expected a value");
    }

    // after consuming NAME '('
    ExprPtr parse_call(const std::string& name) {
        std::vector<ExprPtr> args;
        if (name == "sum") {
            // sum(k = 0..n, body)
            if (lex_.peek().type != Token::Type::Ident) fail("expected summation index");
            std::string idx = lex_.next().text;
            expect_punct("=");
            ExprPtr lo = parse_expr();
            expect_punct("..");
            ExprPtr hi = parse_expr();
            expect_punct(",");
            ExprPtr body = parse_expr();
            expect_punct(")");
            return Expr::call("sum", {Expr::var(idx), lo, hi, body});
        }
        if (!accept_punct(")")) {
            for (;;) {
                // argument lists may contain bracketed parameter lists
                if (accept_punct("[")) {
                    std::vector<ExprPtr> inner;
                    if (!accept_punct("]")) {
                        for (;;) {
                            inner.push_back(parse_expr());
                            if (accept_punct("]")) break;
                            expect_punct(",");
                        }
                    }
                    args.push_back(Expr::call("list", std::move(inner)));
                } else {
                    args.push_back(parse_expr());
                }
                if (accept_punct(")")) break;
                if (!accept_punct(",") && !accept_punct(";")) fail("expected ',' or ')'");
            }
        }
        return Expr::call(name, std::move(args));
    }

    Lexer lex_;
};

int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

void print_rec(const ExprPtr& e, std::string& out, int parent_prec) {
    int prec = precedence(e->kind);
    bool parens = prec < parent_prec;
    if (e->kind == Expr::Kind::Number && e->value < 0) parens = parent_prec > 1;
    if (parens) out += "(";
    switch (e->kind) {
        case Expr::Kind::Number:
            out += to_string(e->value);
            break;
        case Expr::Kind::Var:
            out += e->name;
            break;
        case Expr::Kind::Add:
            print_rec(e->args[0], out, prec);
            out += "+";
            print_rec(e->args[1], out, prec + 1);
            break;
        case Expr::Kind::Sub:
            print_rec(e->args[0], out, prec);
            out += "-";
            print_rec(e->args[1], out, prec + 1);
            break;
        case Expr::Kind::Mul:
            print_rec(e->args[0], out, prec);
            out += "*";
            print_rec(e->args[1], out, prec);
            break;
        case Expr::Kind::Div:
            print_rec(e->args[0], out, prec);
            out += "/";
            print_rec(e->args[1], out, prec + 1);
            break;
        case Expr::Kind::Neg:
            out += "-";
            print_rec(e->args[0], out, prec + 1);
            break;
        case Expr::Kind::Pow: {
            print_rec(e->args[0], out, prec + 1);
            out += "^";
            if (is_integer(e->exponent) && e->exponent >= 0)
                out += to_string(e->exponent);
            else
                out += "(" + to_string(e->exponent) + ")";
            break;
        }
        case Expr::Kind::Call: {
            if (e->name == "sum") {
                out += "sum(" + e->args[0]->name + "=";
                print_rec(e->args[1], out, 0);
                out += "..";
                print_rec(e->args[2], out, 0);
                out += ",";
                print_rec(e->args[3], out, 0);
                out += ")";
                break;
            }
            std::string head = e->name;
            if (head.size() > 1 && head[0] == 'F' && head.find('_') != std::string::npos &&
                std::isdigit((unsigned char)head[1])) {
                auto us = head.find('_');
                out += "F[" + head.substr(1, us - 1) + "," + head.substr(us + 1) + "]";
            } else {
                out += head;
            }
            out += "(";
            for (size_t i = 0; i < e->args.size(); ++i) {
                if (i) out += ",";
                const ExprPtr& a = e->args[i];
                if (a->kind == Expr::Kind::Call && a->name == "list") {
                    out += "[";
                    for (size_t j = 0; j < a->args.size(); ++j) {
                        if (j) out += ",";
                        print_rec(a->args[j], out, 0);
                    }
                    out += "]";
                } else {
                    print_rec(a, out, 0);
                }
            }
            out += ")";
            break;
        }
    }
    if (parens) out += ")";
}

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(text).parse_full(); }

std::string print(const ExprPtr& e) {
    std::string out;
    print_rec(e, out, 0);
    return out;
}

std::vector<std::string> collect_vars(const ExprPtr& e) {
    std::set<std::string> s;
    std::vector<ExprPtr> stack = {e};
    while (!stack.empty()) {
        ExprPtr cur = stack.back();
        stack.pop_back();
        if (cur->kind == Expr::Kind::Var) s.insert(cur->name);
        for (const auto& a : cur->args) stack.push_back(a);
    }
    return {s.begin(), s.end()};
}

MultiPoly<Rat> to_multipoly(const ExprPtr& e, const std::vector<std::string>& vars) {
    switch (e->kind) {
        case Expr::Kind::Number:
            return MultiPoly<Rat>::constant(e->value, vars);
        case Expr::Kind::Var: {
            for (size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == e->name)
                    return MultiPoly<Rat>::variable((int)i, vars, Rat(1));
            throw std::invalid_argument("to_multipoly: unknown variable " + e->name);
        }
        case Expr::Kind::Add:
            return to_multipoly(e->args[0], vars) + to_multipoly(e->args[1], vars);
        case Expr::Kind::Sub:
            return to_multipoly(e->args[0], vars) - to_multipoly(e->args[1], vars);
        case Expr::Kind::Neg:
            return -to_multipoly(e->args[0], vars);
        case Expr::Kind::Mul:
            return to_multipoly(e->args[0], vars) * to_multipoly(e->args[1], vars);
        case Expr::Kind::Div: {
            MultiPoly<Rat> den = to_multipoly(e->args[1], vars);
            for (const auto& [ee, cc] : den.terms)
                for (unsigned x : ee)
                    if (x) throw std::invalid_argument("to_multipoly: non-constant division");
            Rat c = den.constant_term();
            if (c == 0) throw std::invalid_argument("to_multipoly: division by zero");
            return ring<Rat>::inv(c) * to_multipoly(e->args[0], vars);
        }
        case Expr::Kind::Pow: {
            if (!is_integer(e->exponent) || e->exponent < 0)
                throw std::invalid_argument("to_multipoly: exponent must be a non-negative integer");
            return to_multipoly(e->args[0], vars).pow((unsigned)numer(e->exponent).get_ui());
        }
        case Expr::Kind::Call:
            throw std::invalid_argument("to_multipoly: unexpected function " + e->name);
    }
    throw std::logic_error("to_multipoly: unreachable");
}

namespace {

// rational function kept as factor lists on both sides, so that the
// syntactic factorization reaches the diagonal engine intact
struct RF {
    std::vector<MultiPoly<Rat>> num;
    std::vector<MultiPoly<Rat>> den;
};

RF rf_eval(const ExprPtr& e, const std::vector<std::string>& vars) {
    auto expand = [&](const std::vector<MultiPoly<Rat>>& fs) {
        MultiPoly<Rat> p = MultiPoly<Rat>::constant(Rat(1), vars);
        for (const auto& f : fs) p = p * f;
        return p;
    };
    switch (e->kind) {
        case Expr::Kind::Number:
        case Expr::Kind::Var:
            return {{to_multipoly(e, vars)}, {}};
        case Expr::Kind::Neg: {
            RF a = rf_eval(e->args[0], vars);
            a.num.push_back(MultiPoly<Rat>::constant(Rat(-1), vars));
            return a;
        }
        case Expr::Kind::Mul: {
            RF a = rf_eval(e->args[0], vars), b = rf_eval(e->args[1], vars);
            for (auto& f : b.num) a.num.push_back(std::move(f));
            for (auto& f : b.den) a.den.push_back(std::move(f));
            return a;
        }
        case Expr::Kind::Div: {
            RF a = rf_eval(e->args[0], vars), b = rf_eval(e->args[1], vars);
            for (auto& f : b.den) a.num.push_back(std::move(f));
            for (auto& f : b.num) a.den.push_back(std::move(f));
            return a;
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            RF a = rf_eval(e->args[0], vars), b = rf_eval(e->args[1], vars);
            MultiPoly<Rat> lhs = expand(a.num) * expand(b.den);
            MultiPoly<Rat> rhs = expand(b.num) * expand(a.den);
            RF out;
            out.num = {e->kind == Expr::Kind::Add ? lhs + rhs : lhs - rhs};
            out.den = a.den;
            for (const auto& f : b.den) out.den.push_back(f);
            return out;
        }
        case Expr::Kind::Pow: {
            if (!is_integer(e->exponent))
                throw std::invalid_argument("to_ratfun: fractional exponent");
            long k = numer(e->exponent).get_si();
            RF a = rf_eval(e->args[0], vars);
            RF out;
            unsigned ak = (unsigned)(k >= 0 ? k : -k);
            for (unsigned i = 0; i < ak; ++i) {
                for (const auto& f : a.num) out.num.push_back(f);
                for (const auto& f : a.den) out.den.push_back(f);
            }
            if (k < 0) std::swap(out.num, out.den);
            return out;
        }
        case Expr::Kind::Call:
            throw std::invalid_argument("to_ratfun: unexpected function " + e->name);
    }
    throw std::logic_error("to_ratfun: unreachable");
}

}  // namespace

RationalFunctionRep to_ratfun(const ExprPtr& e, std::vector<std::string> vars) {
    if (vars.empty()) vars = collect_vars(e);
    RF rf = rf_eval(e, vars);
    MultiPoly<Rat> num = MultiPoly<Rat>::constant(Rat(1), vars);
    for (const auto& f : rf.num) num = num * f;
    std::vector<MultiPoly<Rat>> factors;
    for (auto& f : rf.den)
        if (!(f.terms.size() == 1 && f.constant_term() == 1)) factors.push_back(std::move(f));
    return RationalFunctionRep(vars, num, factors);
}

namespace {

LinForm to_linform(const ExprPtr& e, const std::string& idx) {
    // linear in n and the inner index
    MultiPoly<Rat> p = to_multipoly(e, {"n", idx});
    LinForm lf;
    for (const auto& [ee, c] : p.terms) {
        if (!is_integer(c)) throw std::invalid_argument("binsum: non-integer linear form");
        long ci = (long)numer(c).get_si();
        if (ee[0] == 0 && ee[1] == 0) lf.c = ci;
        else if (ee[0] == 1 && ee[1] == 0) lf.n = ci;
        else if (ee[0] == 0 && ee[1] == 1) lf.k = ci;
        else throw std::invalid_argument("binsum: index form is not linear");
    }
    return lf;
}

void gather_binfactors(const ExprPtr& e, const std::string& idx, std::vector<BinFactor>& out) {
    if (e->kind == Expr::Kind::Mul) {
        gather_binfactors(e->args[0], idx, out);
        gather_binfactors(e->args[1], idx, out);
        return;
    }
    if (e->kind == Expr::Kind::Pow) {
        if (!is_integer(e->exponent) || e->exponent < 1)
            throw std::invalid_argument("binsum: powers must be positive integers");
        std::vector<BinFactor> inner;
        gather_binfactors(e->args[0], idx, inner);
        unsigned p = (unsigned)numer(e->exponent).get_ui();
        for (auto& f : inner) {
            f.power *= p;
            out.push_back(f);
        }
        return;
    }
    if (e->kind == Expr::Kind::Call && e->name == "binom" && e->args.size() == 2) {
        BinFactor f;
        f.top = to_linform(e->args[0], idx);
        f.bottom = to_linform(e->args[1], idx);
        f.power = 1;
        out.push_back(f);
        return;
    }
    throw std::invalid_argument("binsum: expected a product of binom(...) factors");
}

}  // namespace

BinSumExpr to_binsum(const ExprPtr& e) {
    if (e->kind != Expr::Kind::Call || e->name != "sum" || e->args.size() != 4)
        throw std::invalid_argument("to_binsum: expected sum(k=0..n, ...)");
    const std::string idx = e->args[0]->name;
    if (!(e->args[1]->kind == Expr::Kind::Number && e->args[1]->value == 0))
        throw std::invalid_argument("to_binsum: lower bound must be 0");
    if (!(e->args[2]->kind == Expr::Kind::Var && e->args[2]->name == "n"))
        throw std::invalid_argument("to_binsum: upper bound must be n");
    BinSumExpr b;
    gather_binfactors(e->args[3], idx, b.factors);
    return b;
}

}  // namespace diagon
