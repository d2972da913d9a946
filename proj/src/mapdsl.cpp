#include "singan/mapdsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "singan/errors.hpp"

namespace singan {

namespace {

const std::set<std::string> kKeywords = {"map",  "kind",   "forward", "backward",
                                         "param", "scalar", "pair",    "const",
                                         "linrec", "mulrec", "list"};

const long kMaxExponent = 1000;
const int kMaxDepth = 200;

std::string line_of(const std::string& src, int line) {
    std::istringstream in(src);
    std::string s;
    for (int i = 0; i < line && std::getline(in, s); ++i) {
    }
    return s;
}

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line, col, line_of(src, line));
    }

    char peek() const { return pos < src.size() ? src[pos] : '\0'; }
    char advance() {
        char c = src[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        static const std::string symbols = "+-*/^()=,[]{}:;";
        while (pos < src.size()) {
            char c = peek();
            if (c == '\n' || c == ' ' || c == '\t' || c == '\r') {
                advance();
                continue;
            }
            if (c == '#') {
                while (pos < src.size() && peek() != '\n') advance();
                continue;
            }
            Token t;
            t.line = line;
            t.col = col;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string w;
                while (pos < src.size() &&
                       (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                    w += advance();
                t.kind = kKeywords.count(w) ? Token::Kind::Keyword : Token::Kind::Ident;
                t.lexeme = std::move(w);
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string w;
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(peek())))
                    w += advance();
                t.kind = Token::Kind::Integer;
                t.lexeme = std::move(w);
            } else if (c == '"') {
                int l0 = line, c0 = col;
                advance();
                std::string w;
                while (pos < src.size() && peek() != '"' && peek() != '\n') w += advance();
                if (peek() != '"')
                    throw ParseError("unterminated string", l0, c0, line_of(src, l0));
                advance();
                t.kind = Token::Kind::Str;
                t.lexeme = std::move(w);
            } else if (symbols.find(c) != std::string::npos) {
                t.kind = Token::Kind::Symbol;
                t.lexeme = std::string(1, advance());
            } else {
                fail("illegal character '" + std::string(1, c) + "'");
            }
            out.push_back(std::move(t));
        }
        return out;
    }
};

struct Parser {
    std::string src;
    std::vector<Token> toks;
    size_t pos = 0;
    int depth = 0;

    Parser(std::string s, std::vector<Token> t) : src(std::move(s)), toks(std::move(t)) {
        Token end;
        end.kind = Token::Kind::End;
        if (!toks.empty()) {
            end.line = toks.back().line;
            end.col = toks.back().col + static_cast<int>(toks.back().lexeme.size());
        }
        toks.push_back(end);
    }

    const Token& cur() const { return toks[pos]; }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        throw ParseError(msg, at.line, at.col, line_of(src, at.line));
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, cur()); }

    bool at_symbol(char c) const {
        return cur().kind == Token::Kind::Symbol && cur().lexeme[0] == c;
    }
    bool at_keyword(const std::string& w) const {
        return cur().kind == Token::Kind::Keyword && cur().lexeme == w;
    }
    void expect_symbol(char c) {
        if (!at_symbol(c)) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    std::string expect_keyword_of(std::initializer_list<const char*> ws) {
        for (const char* w : ws)
            if (at_keyword(w)) return toks[pos++].lexeme;
        std::string opts;
        for (const char* w : ws) opts += (opts.empty() ? "'" : " or '") + std::string(w) + "'";
        fail("expected " + opts);
    }

    // --- expressions ---------------------------------------------------

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& pp) : p(pp) {
            if (++p.depth > kMaxDepth) p.fail("expression too deeply nested");
        }
        ~DepthGuard() { --p.depth; }
    };

    static AstPtr fold(AstPtr e) {
        bool foldable = true;
        auto is_num = [](const AstPtr& n) { return n && n->kind == Ast::Kind::Num; };
        switch (e->kind) {
            case Ast::Kind::Neg: foldable = is_num(e->a); break;
            case Ast::Kind::Pow: foldable = is_num(e->a); break;
            case Ast::Kind::Add:
            case Ast::Kind::Sub:
            case Ast::Kind::Mul:
            case Ast::Kind::Div: foldable = is_num(e->a) && is_num(e->b); break;
            default: foldable = false;
        }
        if (!foldable) return e;
        auto v = ast_fold_constant(e);  // may throw DomainError on x/0
        return v ? ast_num(*v) : e;
    }

    AstPtr parse_expression() {
        DepthGuard g(*this);
        AstPtr e = parse_term();
        while (at_symbol('+') || at_symbol('-')) {
            char op = toks[pos++].lexeme[0];
            AstPtr r = parse_term();
            e = fold(op == '+' ? ast_add(e, r) : ast_sub(e, r));
        }
        return e;
    }

    AstPtr parse_term() {
        DepthGuard g(*this);
        AstPtr e = parse_unary();
        while (at_symbol('*') || at_symbol('/')) {
            const Token& t = cur();
            char op = toks[pos++].lexeme[0];
            AstPtr r = parse_unary();
            try {
                e = fold(op == '*' ? ast_mul(e, r) : ast_div(e, r));
            } catch (const DomainError&) {
                fail("division by zero in constant expression", t);
            }
        }
        return e;
    }

    AstPtr parse_unary() {
        DepthGuard g(*this);
        if (at_symbol('-')) {
            ++pos;
            return fold(ast_neg(parse_unary()));
        }
        return parse_power();
    }

    AstPtr parse_power() {
        DepthGuard g(*this);
        AstPtr base = parse_primary();
        if (!at_symbol('^')) return base;
        const Token& caret = cur();
        ++pos;
        AstPtr e = parse_unary();  // right-associative: x^2^3 = x^(2^3)
        auto v = ast_fold_constant(e);
        if (!v || !is_integer(*v)) fail("exponent must be an integer constant", caret);
        if (v->get_num() > kMaxExponent || v->get_num() < -kMaxExponent)
            fail("exponent magnitude exceeds 1000", caret);
        try {
            return fold(ast_pow(base, v->get_num().get_si()));
        } catch (const DomainError&) {
            fail("zero to a negative power in constant expression", caret);
        }
    }

    AstPtr parse_primary() {
        DepthGuard g(*this);
        const Token& t = cur();
        switch (t.kind) {
            case Token::Kind::Integer: {
                ++pos;
                return ast_num(Rational(Integer(t.lexeme, 10)));
            }
            case Token::Kind::Ident: {
                ++pos;
                if (t.lexeme == "x" || t.lexeme == "X") return ast_x();
                if (t.lexeme == "y" || t.lexeme == "Y") return ast_y();
                return ast_param(t.lexeme);
            }
            case Token::Kind::Symbol:
                if (t.lexeme[0] == '(') {
                    ++pos;
                    AstPtr e = parse_expression();
                    expect_symbol(')');
                    return e;
                }
                fail("unexpected '" + t.lexeme + "' in expression");
            case Token::Kind::Keyword: fail("unexpected keyword '" + t.lexeme + "' in expression");
            case Token::Kind::Str: fail("unexpected string in expression");
            case Token::Kind::End: fail("unexpected end of input in expression");
        }
        fail("unexpected token");
    }

    // --- file level ------------------------------------------------------

    // a field keyword, '}' or ';' ends an expression spec
    bool at_spec_end() const {
        return at_symbol('}') || at_symbol(';') || cur().kind == Token::Kind::Keyword ||
               cur().kind == Token::Kind::End;
    }

    std::pair<AstPtr, AstPtr> parse_exprspec() {
        if (at_symbol('(')) {
            size_t mark = pos;
            ++pos;
            // tentatively read "(expr, expr)"; rewind when it turns out to be
            // a parenthesized scalar expression
            try {
                AstPtr e1 = parse_expression();
                if (at_symbol(',')) {
                    ++pos;
                    AstPtr e2 = parse_expression();
                    expect_symbol(')');
                    if (at_spec_end()) return {e1, e2};
                }
            } catch (const ParseError&) {
            }
            pos = mark;
        }
        AstPtr e = parse_expression();
        if (!at_spec_end()) fail("unexpected '" + cur().lexeme + "' after rule expression");
        return {e, nullptr};
    }

    Rational parse_const_value(const char* what) {
        const Token& t = cur();
        AstPtr e = parse_expression();
        auto v = ast_fold_constant(e);
        if (!v) fail(std::string(what) + " must be a rational constant", t);
        return *v;
    }

    std::vector<Rational> parse_value_list(const char* what) {
        expect_symbol('[');
        std::vector<Rational> vals;
        vals.push_back(parse_const_value(what));
        while (at_symbol(',')) {
            ++pos;
            vals.push_back(parse_const_value(what));
        }
        expect_symbol(']');
        return vals;
    }

    std::vector<Rational> parse_named_list(const std::string& name, const char* what) {
        if (cur().kind != Token::Kind::Ident || cur().lexeme != name)
            fail("expected '" + name + "='");
        ++pos;
        expect_symbol('=');
        return parse_value_list(what);
    }

    ParamSeq parse_paramspec() {
        const Token& head = cur();
        std::string w = expect_keyword_of({"const", "list", "linrec", "mulrec"});
        ParamSeq s;
        if (w == "const") {
            s.kind = ParamSeq::Kind::Constant;
            s.constant = parse_const_value("constant parameter");
            return s;
        }
        if (w == "list") {
            s.kind = ParamSeq::Kind::Explicit;
            s.values = parse_value_list("list entry");
            return s;
        }
        if (w == "linrec") {
            s.kind = ParamSeq::Kind::LinRec;
            s.coeffs = parse_named_list("coeffs", "recurrence coefficient");
            s.init = parse_named_list("init", "initial value");
            if (s.coeffs.empty() || is_zero(s.coeffs.back()))
                fail("linrec: last coefficient must be nonzero", head);
            if (s.init.size() != s.coeffs.size())
                fail("linrec: init length must match coeffs length", head);
            return s;
        }
        s.kind = ParamSeq::Kind::MulRec;
        auto exps = parse_named_list("exponents", "exponent");
        for (const Rational& e : exps) {
            if (!is_integer(e)) fail("mulrec: exponents must be integers", head);
            if (e.get_num() > kMaxExponent || e.get_num() < -kMaxExponent)
                fail("mulrec: exponent magnitude exceeds 1000", head);
            s.exponents.push_back(e.get_num().get_si());
        }
        s.init = parse_named_list("init", "initial value");
        if (s.exponents.empty() || (s.exponents.back() != 1 && s.exponents.back() != -1))
            fail("mulrec: last exponent must be 1 or -1", head);
        if (s.init.size() != s.exponents.size())
            fail("mulrec: init length must match exponents length", head);
        for (const Rational& v : s.init)
            if (is_zero(v)) fail("mulrec: initial values must be nonzero", head);
        return s;
    }

    MapInstance parse_mapblock(const ParseOptions& opt) {
        const Token& head = cur();
        expect_keyword_of({"map"});
        if (cur().kind != Token::Kind::Str) fail("expected map name string");
        MapInstance m;
        m.name = toks[pos++].lexeme;
        expect_symbol('{');

        bool kind_set = false, fwd_set = false, bwd_set = false;
        AstPtr fwd1, fwd2, bwd1, bwd2;
        while (!at_symbol('}')) {
            if (at_symbol(';')) {
                ++pos;
                continue;
            }
            const Token& ft = cur();
            std::string f = expect_keyword_of({"kind", "forward", "backward", "param"});
            if (f == "kind") {
                expect_symbol(':');
                if (kind_set) fail("duplicate kind", ft);
                kind_set = true;
                m.kind = expect_keyword_of({"scalar", "pair"}) == "scalar" ? MapKind::Scalar
                                                                           : MapKind::Pair;
            } else if (f == "forward") {
                expect_symbol(':');
                if (fwd_set) fail("duplicate forward rule", ft);
                fwd_set = true;
                std::tie(fwd1, fwd2) = parse_exprspec();
            } else if (f == "backward") {
                expect_symbol(':');
                if (bwd_set) fail("duplicate backward rule", ft);
                bwd_set = true;
                std::tie(bwd1, bwd2) = parse_exprspec();
            } else {
                if (cur().kind != Token::Kind::Ident) fail("expected parameter name");
                const Token& pt = cur();
                std::string pname = toks[pos++].lexeme;
                if (pname == "x" || pname == "y" || pname == "X" || pname == "Y")
                    fail("parameter name '" + pname + "' collides with a variable", pt);
                if (m.params.count(pname)) fail("duplicate parameter '" + pname + "'", pt);
                expect_symbol(':');
                m.params.emplace(pname, parse_paramspec());
            }
        }
        expect_symbol('}');

        // semantic checks
        if (!fwd_set) fail("map '" + m.name + "' has no forward rule", head);
        bool pair = m.kind == MapKind::Pair;
        if (pair && !fwd2) fail("pair map '" + m.name + "' needs a two-component forward rule", head);
        if (!pair && fwd2) fail("scalar map '" + m.name + "' takes a single forward rule", head);
        if (pair && !bwd_set)
            fail("pair map '" + m.name + "' must declare a backward rule", head);
        if (bwd_set) {
            if (pair && !bwd2)
                fail("pair map '" + m.name + "' needs a two-component backward rule", head);
            if (!pair && bwd2)
                fail("scalar map '" + m.name + "' takes a single backward rule", head);
        }
        m.fwd_x = fwd1;
        m.fwd_y = fwd2;
        m.bwd_x = bwd1;
        m.bwd_y = bwd2;

        std::set<std::string> used;
        for (const AstPtr& e : {m.fwd_x, m.fwd_y, m.bwd_x, m.bwd_y}) collect_params(e, used);
        for (const std::string& p : used)
            if (!m.params.count(p)) fail("undeclared parameter '" + p + "'", head);

        if (opt.derive_backward && m.is_scalar() && !m.has_backward()) {
            try {
                ensure_backward(m);
            } catch (const Error& e) {
                fail("map '" + m.name + "': " + e.what(), head);
            }
        }
        return m;
    }

    std::vector<MapInstance> parse_file(const ParseOptions& opt) {
        std::vector<MapInstance> maps;
        while (at_symbol(';')) ++pos;
        do {
            maps.push_back(parse_mapblock(opt));
            while (at_symbol(';')) ++pos;
        } while (cur().kind != Token::Kind::End);
        return maps;
    }
};

std::string seq_to_dsl(const ParamSeq& s) {
    auto list = [](const std::vector<Rational>& v) {
        std::string out = "[";
        for (size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
        return out + "]";
    };
    switch (s.kind) {
        case ParamSeq::Kind::Constant: return "const " + to_string(s.constant);
        case ParamSeq::Kind::Explicit: return "list " + list(s.values);
        case ParamSeq::Kind::LinRec: return "linrec coeffs=" + list(s.coeffs) + " init=" + list(s.init);
        case ParamSeq::Kind::MulRec: {
            std::string out = "mulrec exponents=[";
            for (size_t i = 0; i < s.exponents.size(); ++i)
                out += (i ? ", " : "") + std::to_string(s.exponents[i]);
            return out + "] init=" + list(s.init);
        }
    }
    throw DomainError("corrupt parameter sequence");
}

}  // namespace

std::vector<Token> tokenize(const std::string& src) { return Lexer(src).run(); }

AstPtr parse_expr(const std::vector<Token>& tokens) {
    Parser p("", tokens);
    AstPtr e = p.parse_expression();
    if (p.cur().kind != Token::Kind::End) p.fail("unexpected trailing tokens after expression");
    return e;
}

std::vector<MapInstance> parse_mapfile(const std::string& src, const ParseOptions& opt) {
    Parser p(src, tokenize(src));
    return p.parse_file(opt);
}

std::string pretty_print(const MapInstance& m) {
    const bool pair = !m.is_scalar();
    const std::string xn = pair ? "X" : "x", yn = pair ? "Y" : "y";
    auto spec = [&](const AstPtr& a, const AstPtr& b) {
        if (b) return "(" + to_string(a, xn, yn) + ", " + to_string(b, xn, yn) + ")";
        return to_string(a, xn, yn);
    };
    std::string out = "map \"" + m.name + "\" {\n";
    out += "  kind: " + std::string(pair ? "pair" : "scalar") + "\n";
    out += "  forward: " + spec(m.fwd_x, m.fwd_y) + "\n";
    if (m.has_backward()) out += "  backward: " + spec(m.bwd_x, m.bwd_y) + "\n";
    for (const auto& [name, s] : m.params) out += "  param " + name + ": " + seq_to_dsl(s) + "\n";
    out += "}\n";
    return out;
}

bool ast_equal(const AstPtr& a, const AstPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Ast::Kind::Num: return a->num == b->num;
        case Ast::Kind::X:
        case Ast::Kind::Y: return true;
        case Ast::Kind::Param: return a->param == b->param;
        case Ast::Kind::Pow: return a->exp == b->exp && ast_equal(a->a, b->a);
        case Ast::Kind::Neg: return ast_equal(a->a, b->a);
        default: return ast_equal(a->a, b->a) && ast_equal(a->b, b->b);
    }
}

}  // namespace singan
