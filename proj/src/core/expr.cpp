#include "core/expr.hpp"

#include <cctype>
#include <sstream>

namespace lefvar {

bool FormExpr::operator==(const FormExpr& o) const
{
    return kind == o.kind && number == o.number && index == o.index && mode == o.mode
        && children == o.children;
}

namespace {

struct Token {
    enum class Kind { number, ident, plus, minus, star, hat, slash, lparen, rparen, lbracket,
                      rbracket, comma, end };
    Kind kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            advance();
        int line = line_, col = col_;
        if (pos_ >= src_.size())
            return {Token::Kind::end, "", line, col};
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                text += src_[pos_];
                advance();
            }
            return {Token::Kind::number, text, line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string text;
            while (pos_ < src_.size()
                   && (std::isalnum(static_cast<unsigned char>(src_[pos_])))) {
                text += src_[pos_];
                advance();
            }
            return {Token::Kind::ident, text, line, col};
        }
        advance();
        switch (c) {
            case '+': return {Token::Kind::plus, "+", line, col};
            case '-': return {Token::Kind::minus, "-", line, col};
            case '*': return {Token::Kind::star, "*", line, col};
            case '^': return {Token::Kind::hat, "^", line, col};
            case '/': return {Token::Kind::slash, "/", line, col};
            case '(': return {Token::Kind::lparen, "(", line, col};
            case ')': return {Token::Kind::rparen, ")", line, col};
            case '[': return {Token::Kind::lbracket, "[", line, col};
            case ']': return {Token::Kind::rbracket, "]", line, col};
            case ',': return {Token::Kind::comma, ",", line, col};
            default:
                throw Error(Errc::syntax_error, std::string("unexpected character '") + c + "'",
                            line, col);
        }
    }

private:
    void advance()
    {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(const std::string& src, int n) : lexer_(src), n_(n) { current_ = lexer_.next(); }

    FormExpr parse()
    {
        FormExpr e = expr();
        expect(Token::Kind::end, "end of input");
        return e;
    }

private:
    [[noreturn]] void error(const std::string& msg)
    {
        throw Error(Errc::syntax_error, msg, current_.line, current_.column);
    }

    void bump() { current_ = lexer_.next(); }

    void expect(Token::Kind kind, const std::string& what)
    {
        if (current_.kind != kind)
            error("expected " + what);
        if (kind != Token::Kind::end)
            bump();
    }

    FormExpr expr()
    {
        FormExpr lhs = term();
        while (current_.kind == Token::Kind::plus || current_.kind == Token::Kind::minus) {
            FormExpr::Kind op = current_.kind == Token::Kind::plus ? FormExpr::Kind::add
                                                                   : FormExpr::Kind::sub;
            bump();
            FormExpr node;
            node.kind = op;
            node.children = {std::move(lhs), term()};
            lhs = std::move(node);
        }
        return lhs;
    }

    FormExpr term()
    {
        FormExpr lhs = unary();
        while (current_.kind == Token::Kind::star) {
            bump();
            FormExpr node;
            node.kind = FormExpr::Kind::mul;
            node.children = {std::move(lhs), unary()};
            lhs = std::move(node);
        }
        return lhs;
    }

    FormExpr unary()
    {
        if (current_.kind == Token::Kind::minus) {
            bump();
            FormExpr node;
            node.kind = FormExpr::Kind::neg;
            node.children = {unary()};
            return node;
        }
        return wpow();
    }

    FormExpr wpow()
    {
        FormExpr lhs = atom();
        while (current_.kind == Token::Kind::hat) {
            bump();
            FormExpr node;
            node.kind = FormExpr::Kind::wedge;
            node.children = {std::move(lhs), atom()};
            lhs = std::move(node);
        }
        return lhs;
    }

    long parse_signed_int()
    {
        bool neg = false;
        if (current_.kind == Token::Kind::minus) {
            neg = true;
            bump();
        }
        if (current_.kind != Token::Kind::number)
            error("expected integer");
        long v = std::stol(current_.text);
        bump();
        return neg ? -v : v;
    }

    FormExpr atom()
    {
        if (current_.kind == Token::Kind::number) {
            FormExpr node;
            node.kind = FormExpr::Kind::number;
            mpz_class num(current_.text);
            bump();
            if (current_.kind == Token::Kind::slash) {
                bump();
                if (current_.kind != Token::Kind::number)
                    error("expected denominator");
                mpz_class den(current_.text);
                if (den == 0)
                    error("zero denominator");
                bump();
                node.number = Rational(num, den);
                node.number.canonicalize();
            } else {
                node.number = Rational(num);
            }
            return node;
        }
        if (current_.kind == Token::Kind::lparen) {
            bump();
            FormExpr inner = expr();
            expect(Token::Kind::rparen, "')'");
            return inner;
        }
        if (current_.kind == Token::Kind::ident) {
            std::string id = current_.text;
            int line = current_.line, col = current_.column;
            if (id == "i") {
                bump();
                FormExpr node;
                node.kind = FormExpr::Kind::imag_unit;
                return node;
            }
            if (id == "w") {
                bump();
                FormExpr node;
                node.kind = FormExpr::Kind::omega_ref;
                return node;
            }
            if (id == "e") {
                bump();
                expect(Token::Kind::lbracket, "'['");
                FormExpr node;
                node.kind = FormExpr::Kind::character;
                node.mode.push_back(int(parse_signed_int()));
                while (current_.kind == Token::Kind::comma) {
                    bump();
                    node.mode.push_back(int(parse_signed_int()));
                }
                expect(Token::Kind::rbracket, "']'");
                if (int(node.mode.size()) != 2 * n_)
                    throw Error(Errc::syntax_error,
                                "mode vector needs " + std::to_string(2 * n_) + " entries", line,
                                col);
                return node;
            }
            bool barred = false;
            std::string digits;
            if (id.rfind("dzb", 0) == 0) {
                barred = true;
                digits = id.substr(3);
            } else if (id.rfind("dz", 0) == 0) {
                digits = id.substr(2);
            } else {
                error("unknown symbol '" + id + "'");
            }
            if (digits.empty()
                || digits.find_first_not_of("0123456789") != std::string::npos)
                error("malformed generator '" + id + "'");
            int index = std::stoi(digits);
            if (index < 1 || index > n_)
                throw Error(Errc::index_out_of_range,
                            "generator index " + std::to_string(index) + " outside 1.."
                                + std::to_string(n_),
                            line, col);
            bump();
            FormExpr node;
            node.kind = barred ? FormExpr::Kind::dzb : FormExpr::Kind::dz;
            node.index = index;
            return node;
        }
        error("expected a value");
    }

    Lexer lexer_;
    Token current_;
    int n_;
};

int precedence(FormExpr::Kind k)
{
    switch (k) {
        case FormExpr::Kind::add:
        case FormExpr::Kind::sub: return 1;
        case FormExpr::Kind::mul: return 2;
        case FormExpr::Kind::neg: return 3;
        case FormExpr::Kind::wedge: return 4;
        default: return 5;
    }
}

void print_rec(const FormExpr& e, int parent_prec, std::string& out)
{
    int prec = precedence(e.kind);
    bool parens = prec < parent_prec;
    if (parens)
        out += "(";
    switch (e.kind) {
        case FormExpr::Kind::number: out += e.number.get_str(); break;
        case FormExpr::Kind::imag_unit: out += "i"; break;
        case FormExpr::Kind::omega_ref: out += "w"; break;
        case FormExpr::Kind::dz: out += "dz" + std::to_string(e.index); break;
        case FormExpr::Kind::dzb: out += "dzb" + std::to_string(e.index); break;
        case FormExpr::Kind::character: {
            out += "e[";
            for (std::size_t i = 0; i < e.mode.size(); ++i) {
                if (i)
                    out += ",";
                out += std::to_string(e.mode[i]);
            }
            out += "]";
            break;
        }
        case FormExpr::Kind::add:
            print_rec(e.children[0], prec, out);
            out += " + ";
            print_rec(e.children[1], prec + 1, out);
            break;
        case FormExpr::Kind::sub:
            print_rec(e.children[0], prec, out);
            out += " - ";
            print_rec(e.children[1], prec + 1, out);
            break;
        case FormExpr::Kind::mul:
            print_rec(e.children[0], prec, out);
            out += "*";
            print_rec(e.children[1], prec + 1, out);
            break;
        case FormExpr::Kind::neg:
            out += "-";
            print_rec(e.children[0], prec, out);
            break;
        case FormExpr::Kind::wedge:
            print_rec(e.children[0], prec, out);
            out += "^";
            print_rec(e.children[1], prec + 1, out);
            break;
    }
    if (parens)
        out += ")";
}

bool is_scalar_valued(const FourierForm<Scalar>& x)
{
    for (const auto& [k, f] : x.modes())
        for (const auto& [m, c] : f.terms())
            if (m.degree() != 0)
                return false;
    return true;
}

} // namespace

FormExpr parse_form(const std::string& src, int N)
{
    require(N >= 1, Errc::dimension_mismatch, "dimension must be positive");
    Parser parser(src, N);
    return parser.parse();
}

std::string print_expr(const FormExpr& e)
{
    std::string out;
    print_rec(e, 0, out);
    return out;
}

FourierForm<Scalar> elaborate(const FormExpr& e, const Form<Scalar>& omega, const ModeSet& modes)
{
    int N = omega.dim();
    switch (e.kind) {
        case FormExpr::Kind::number:
            return FourierForm<Scalar>::constant(Scalar(e.number) * Form<Scalar>::unit(N));
        case FormExpr::Kind::imag_unit:
            return FourierForm<Scalar>::constant(Scalar::i() * Form<Scalar>::unit(N));
        case FormExpr::Kind::omega_ref: return FourierForm<Scalar>::constant(omega);
        case FormExpr::Kind::dz: return FourierForm<Scalar>::constant(Form<Scalar>::dz(N, e.index));
        case FormExpr::Kind::dzb:
            return FourierForm<Scalar>::constant(Form<Scalar>::dzb(N, e.index));
        case FormExpr::Kind::character: {
            require(modes.contains(e.mode), Errc::mode_overflow,
                    "character mode outside the declared set");
            return FourierForm<Scalar>::mode(e.mode, Form<Scalar>::unit(N));
        }
        case FormExpr::Kind::add:
            return elaborate(e.children[0], omega, modes) + elaborate(e.children[1], omega, modes);
        case FormExpr::Kind::sub:
            return elaborate(e.children[0], omega, modes) - elaborate(e.children[1], omega, modes);
        case FormExpr::Kind::neg: return -elaborate(e.children[0], omega, modes);
        case FormExpr::Kind::mul: {
            FourierForm<Scalar> lhs = elaborate(e.children[0], omega, modes);
            FourierForm<Scalar> rhs = elaborate(e.children[1], omega, modes);
            require(is_scalar_valued(lhs) || is_scalar_valued(rhs), Errc::syntax_error,
                    "'*' needs a scalar operand; use '^' to wedge forms");
            return wedge(lhs, rhs, modes);
        }
        case FormExpr::Kind::wedge:
            return wedge(elaborate(e.children[0], omega, modes),
                         elaborate(e.children[1], omega, modes), modes);
    }
    fail(Errc::invariant_violation, "unhandled expression node");
}

Form<Scalar> as_constant(const FourierForm<Scalar>& x)
{
    require(x == x.mode_zero_part(), Errc::bad_descriptor,
            "expression must be constant (no nonzero modes)");
    return x.constant_part();
}

namespace {

std::string mono_str(const Mono& m, int dim)
{
    std::string out;
    for (int j = 1; j <= dim; ++j)
        if (m.z & (std::uint32_t(1) << (j - 1)))
            out += (out.empty() ? "" : "^") + ("dz" + std::to_string(j));
    for (int j = 1; j <= dim; ++j)
        if (m.zb & (std::uint32_t(1) << (j - 1)))
            out += (out.empty() ? "" : "^") + ("dzb" + std::to_string(j));
    return out;
}

std::string term_str(const Scalar& c, const Mono& m, int dim, const ModeKey* mode)
{
    std::string body = mono_str(m, dim);
    std::string out;
    if (body.empty())
        out = c.str();
    else if (c == Scalar(1))
        out = body;
    else if (c == Scalar(-1))
        out = "-" + body;
    else
        out = c.str() + "*" + body;
    if (mode != nullptr && !is_zero_mode(*mode)) {
        std::string e = "e[";
        for (std::size_t i = 0; i < mode->size(); ++i) {
            if (i)
                e += ",";
            e += std::to_string((*mode)[i]);
        }
        e += "]";
        out = (body.empty() && !(c == Scalar(1))) ? out + "*" + e
              : body.empty()                      ? e
                                                  : out + "*" + e;
    }
    return out;
}

std::string join_terms(std::vector<std::string> terms)
{
    if (terms.empty())
        return "0";
    std::string out = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (!terms[i].empty() && terms[i][0] == '-')
            out += " - " + terms[i].substr(1);
        else
            out += " + " + terms[i];
    }
    return out;
}

} // namespace

std::string print_form(const Form<Scalar>& f)
{
    std::vector<std::string> terms;
    for (const auto& [m, c] : f.terms())
        terms.push_back(term_str(c, m, f.dim(), nullptr));
    return join_terms(std::move(terms));
}

std::string print_fourier(const FourierForm<Scalar>& x)
{
    std::vector<std::string> terms;
    for (const auto& [k, f] : x.modes())
        for (const auto& [m, c] : f.terms())
            terms.push_back(term_str(c, m, x.dim(), &k));
    return join_terms(std::move(terms));
}

} // namespace lefvar
