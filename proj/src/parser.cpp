#include "schwartz/parser.hpp"

#include "schwartz/errors.hpp"

#include <cctype>
#include <optional>

namespace schwartz {

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!consume(c)) throw ParseError(std::string("expected ") + what, pos);
    }

    // Identifier or keyword: [a-z]+
    std::optional<std::string> ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) return std::nullopt;
        return text.substr(start, pos - start);
    }

    // Unsigned decimal literal: digits with optional fraction part.
    std::optional<std::string> decimal() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) return std::nullopt;
        if (pos < text.size() && text[pos] == '.') {
            std::size_t dot = pos++;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == dot + 1) throw ParseError("digits expected after decimal point", pos);
        }
        return text.substr(start, pos - start);
    }

    long integer(const char* what) {
        skip_ws();
        bool negative = consume('-');
        auto digits = decimal();
        if (!digits || digits->find('.') != std::string::npos)
            throw ParseError(std::string("expected ") + what, pos);
        long v = std::stol(*digits);
        return negative ? -v : v;
    }
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_{text} {}

    PiecewiseFn parse_function() {
        lex_.skip_ws();
        if (starts_with_keyword("piecewise")) {
            PiecewiseFn f = parse_piecewise();
            finish();
            return f;
        }
        Expr e = parse_expr();
        finish();
        return PiecewiseFn::single(std::move(e));
    }

    Expr parse_bare_expr() {
        Expr e = parse_expr();
        finish();
        return e;
    }

private:
    Lexer lex_;

    void finish() {
        if (!lex_.eof()) throw ParseError("unexpected trailing input", lex_.pos);
    }

    bool starts_with_keyword(const std::string& kw) {
        lex_.skip_ws();
        std::size_t save = lex_.pos;
        auto id = lex_.ident();
        if (id && *id == kw) return true;
        lex_.pos = save;
        return false;
    }

    PiecewiseFn parse_piecewise() {
        lex_.expect('(', "'(' after piecewise");
        std::vector<Piece> pieces;
        std::optional<int> blend;
        while (true) {
            lex_.skip_ws();
            std::size_t save = lex_.pos;
            auto id = lex_.ident();
            if (id && *id == "blend") {
                lex_.expect(':', "':' after blend");
                long j = lex_.integer("blend order");
                if (j < 0) throw ParseError("blend order must be nonnegative", save);
                blend = static_cast<int>(j);
                break;
            }
            lex_.pos = save;
            pieces.push_back(parse_piece());
            if (!lex_.consume(';')) break;
        }
        lex_.expect(')', "')' closing piecewise");
        return PiecewiseFn::from_pieces(std::move(pieces), blend);
    }

    struct BoundValue {
        std::optional<Rational> finite;
        int inf_sign = 0; // -1 / +1 when infinite
    };

    Piece parse_piece() {
        Interval iv;
        lex_.skip_ws();
        std::size_t at = lex_.pos;
        if (lex_.consume('['))
            iv.lo_closed = true;
        else if (lex_.consume('('))
            iv.lo_closed = false;
        else
            throw ParseError("expected interval", lex_.pos);
        BoundValue lo = parse_bound();
        lex_.expect(',', "',' in interval");
        BoundValue hi = parse_bound();
        if (lex_.consume(']'))
            iv.hi_closed = true;
        else if (lex_.consume(')'))
            iv.hi_closed = false;
        else
            throw ParseError("expected ')' or ']' closing interval", lex_.pos);
        if (lo.inf_sign > 0 || hi.inf_sign < 0)
            throw ParseError("interval endpoints must increase", at);
        iv.lo = lo.finite;
        iv.hi = hi.finite;
        if (!iv.lo && iv.lo_closed) throw ParseError("interval cannot be closed at -inf", at);
        if (!iv.hi && iv.hi_closed) throw ParseError("interval cannot be closed at inf", at);
        if (iv.lo && iv.hi && *iv.lo >= *iv.hi)
            throw ParseError("interval endpoints must increase", at);
        lex_.expect(':', "':' after interval");
        Expr body = parse_expr();
        return {iv, std::move(body)};
    }

    // bound := [-] (decimal [/ digits] | inf)
    BoundValue parse_bound() {
        lex_.skip_ws();
        bool negative = lex_.consume('-');
        std::size_t at = lex_.pos;
        if (auto id = lex_.ident()) {
            if (*id == "inf") return {std::nullopt, negative ? -1 : 1};
            throw ParseError("expected a rational bound or inf", at);
        }
        auto digits = lex_.decimal();
        if (!digits) throw ParseError("expected a rational bound or inf", at);
        Rational q = rational_from_decimal(*digits);
        if (lex_.consume('/')) {
            auto den = lex_.decimal();
            if (!den || den->find('.') != std::string::npos)
                throw ParseError("expected integer denominator", lex_.pos);
            q /= rational_from_decimal(*den);
        }
        if (negative) q = -q;
        return {q, 0};
    }

    // expr := term (('+'|'-') term)*
    Expr parse_expr() {
        Expr e = parse_term();
        while (true) {
            if (lex_.consume('+'))
                e = Expr::add(std::move(e), parse_term());
            else if (lex_.consume('-'))
                e = Expr::sub(std::move(e), parse_term());
            else
                return e;
        }
    }

    // term := factor (('*'|'/') factor)*
    Expr parse_term() {
        Expr e = parse_factor();
        while (true) {
            if (lex_.consume('*'))
                e = Expr::mul(std::move(e), parse_factor());
            else if (lex_.consume('/'))
                e = Expr::div(std::move(e), parse_factor());
            else
                return e;
        }
    }

    // factor := '-' factor | power
    Expr parse_factor() {
        if (lex_.consume('-')) return Expr::neg(parse_factor());
        return parse_power();
    }

    // power := atom ('^' [-]INT)*
    Expr parse_power() {
        Expr e = parse_atom();
        while (lex_.consume('^')) {
            long k = lex_.integer("integer exponent after '^'");
            e = Expr::powi(std::move(e), k);
        }
        return e;
    }

    Expr parse_atom() {
        lex_.skip_ws();
        std::size_t at = lex_.pos;
        if (lex_.consume('(')) {
            Expr e = parse_expr();
            lex_.expect(')', "')'");
            return e;
        }
        if (auto digits = lex_.decimal()) return Expr::number(rational_from_decimal(*digits));
        if (auto id = lex_.ident()) {
            if (*id == "x") return Expr::var();
            if (*id == "e") return Expr::e();
            if (*id == "pi") return Expr::pi();
            if (*id == "exp" || *id == "log" || *id == "sin" || *id == "cos" || *id == "sqrt") {
                lex_.expect('(', "'(' after function name");
                Expr arg = parse_expr();
                lex_.expect(')', "')' closing call");
                if (*id == "exp") return Expr::exp(std::move(arg));
                if (*id == "log") return Expr::log(std::move(arg));
                if (*id == "sin") return Expr::sin(std::move(arg));
                if (*id == "cos") return Expr::cos(std::move(arg));
                return Expr::sqrt(std::move(arg));
            }
            throw ParseError("unknown identifier '" + *id + "'", at);
        }
        throw ParseError("syntax error", at);
    }
};

} // namespace

PiecewiseFn parse(const std::string& text) { return Parser(text).parse_function(); }

Expr parse_expr(const std::string& text) { return Parser(text).parse_bare_expr(); }

} // namespace schwartz
