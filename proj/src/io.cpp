#include "germcalc/textio.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace germcalc {

namespace {

std::string monomial_string(int xk, int yk) {
    std::string out;
    if (xk > 0) {
        out += "x";
        if (xk > 1) out += "^" + std::to_string(xk);
    }
    if (yk > 0) {
        if (!out.empty()) out += "*";
        out += "y";
        if (yk > 1) out += "^" + std::to_string(yk);
    }
    return out;
}

void append_rat_term(std::string& out, const Rat& v, const std::string& mono) {
    bool neg = sgn(v) < 0;
    Rat magv = abs(v);
    std::string mag = magv.get_str();
    if (out.empty()) {
        if (neg) out += "-";
    } else {
        out += neg ? " - " : " + ";
    }
    if (mono.empty())
        out += mag;
    else if (mag == "1")
        out += mono;
    else
        out += mag + "*" + mono;
}

} // namespace

std::string render_series(const Series2<Rat>& s) {
    std::string out;
    for (int d = 0; d <= s.order(); ++d)
        for (int xk = d; xk >= 0; --xk) {
            const Rat& v = s.coeff(xk, d - xk);
            if (rat_is_zero(v)) continue;
            append_rat_term(out, v, monomial_string(xk, d - xk));
        }
    return out.empty() ? "0" : out;
}

std::string render_series(const Series2<LambdaPoly>& s) {
    std::string out;
    for (int d = 0; d <= s.order(); ++d)
        for (int xk = d; xk >= 0; --xk) {
            const LambdaPoly& v = s.coeff(xk, d - xk);
            if (v.is_zero()) continue;
            std::string mono = monomial_string(xk, d - xk);
            if (v.degree() == 0) {
                append_rat_term(out, v.coeff(0), mono);
                continue;
            }
            if (!out.empty()) out += " + ";
            out += "(" + v.to_string() + ")";
            if (!mono.empty()) out += "*" + mono;
        }
    return out.empty() ? "0" : out;
}

std::string render_series(const Series1<Rat>& s, const std::string& var) {
    std::string out;
    for (int k = 0; k <= s.order(); ++k) {
        const Rat& v = s.coeff(k);
        if (rat_is_zero(v)) continue;
        std::string mono;
        if (k > 0) {
            mono = var;
            if (k > 1) mono += "^" + std::to_string(k);
        }
        append_rat_term(out, v, mono);
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Text parser for the canonical rendering.

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return {Token::End, ""};
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '/') {
                std::size_t save = pos_;
                ++pos_;
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                        ++pos_;
                } else {
                    pos_ = save;
                }
            }
            return {Token::Number, s_.substr(start, pos_ - start)};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return {Token::Ident, s_.substr(start, pos_ - start)};
        }
        ++pos_;
        switch (c) {
            case '+': return {Token::Plus, "+"};
            case '-': return {Token::Minus, "-"};
            case '*': return {Token::Star, "*"};
            case '^': return {Token::Caret, "^"};
            case '(': return {Token::LParen, "("};
            case ')': return {Token::RParen, ")"};
            default: throw ParseError(std::string("unexpected character '") + c + "'");
        }
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

class SeriesParser {
public:
    SeriesParser(const std::string& text, int order) : lex_(text), out_(order) { advance(); }

    Series2<LambdaPoly> run() {
        parse_series();
        if (cur_.kind != Token::End) throw ParseError("trailing input after series");
        return out_;
    }

private:
    void advance() { cur_ = lex_.next(); }

    bool accept(Token::Kind k) {
        if (cur_.kind != k) return false;
        advance();
        return true;
    }

    int parse_int() {
        if (cur_.kind != Token::Number || cur_.text.find('/') != std::string::npos)
            throw ParseError("expected an integer exponent");
        int v = std::stoi(cur_.text);
        advance();
        return v;
    }

    // number [ '*' 'lam' ['^' int] ] | 'lam' ['^' int]
    void parse_lambda_term(LambdaPoly& acc, int sign) {
        Rat mag(1);
        bool have_num = false;
        if (cur_.kind == Token::Number) {
            mag = rat_from_string(cur_.text);
            advance();
            have_num = true;
        }
        int power = 0;
        if ((have_num && accept(Token::Star)) || !have_num) {
            if (cur_.kind != Token::Ident || cur_.text != "lam")
                throw ParseError("expected 'lam' in lambda polynomial");
            advance();
            power = 1;
            if (accept(Token::Caret)) power = parse_int();
        }
        acc += LambdaPoly::monomial(power, sign < 0 ? Rat(-mag) : mag);
    }

    LambdaPoly parse_lambda_poly() {
        LambdaPoly acc;
        int sign = 1;
        if (accept(Token::Minus)) sign = -1;
        else accept(Token::Plus);
        parse_lambda_term(acc, sign);
        for (;;) {
            if (accept(Token::Plus)) sign = 1;
            else if (accept(Token::Minus)) sign = -1;
            else break;
            parse_lambda_term(acc, sign);
        }
        return acc;
    }

    // [coefficient] ['*'] monomials | coefficient
    void parse_term(int sign) {
        LambdaPoly coeff = LambdaPoly(Rat(1));
        bool have_coeff = false;
        if (cur_.kind == Token::Number) {
            coeff = LambdaPoly(rat_from_string(cur_.text));
            advance();
            have_coeff = true;
        } else if (cur_.kind == Token::LParen) {
            advance();
            coeff = parse_lambda_poly();
            if (!accept(Token::RParen)) throw ParseError("expected ')'");
            have_coeff = true;
        }
        int xk = 0, yk = 0;
        bool have_mono = false;
        bool expect_star = have_coeff;
        for (;;) {
            if (expect_star) {
                if (cur_.kind != Token::Star) break;
                advance();
            }
            if (cur_.kind != Token::Ident) {
                if (expect_star) throw ParseError("expected a variable after '*'");
                break;
            }
            if (cur_.text == "x" || cur_.text == "y") {
                bool is_x = cur_.text == "x";
                advance();
                int p = 1;
                if (accept(Token::Caret)) p = parse_int();
                (is_x ? xk : yk) += p;
                have_mono = true;
                expect_star = true;
            } else {
                throw ParseError("unexpected identifier '" + cur_.text + "'");
            }
        }
        if (!have_coeff && !have_mono) throw ParseError("empty term");
        if (xk + yk > out_.order())
            throw ParseError("term of degree " + std::to_string(xk + yk) +
                             " beyond order " + std::to_string(out_.order()));
        LambdaPoly v = sign < 0 ? -coeff : coeff;
        out_.at(xk, yk) += v;
    }

    void parse_series() {
        int sign = 1;
        if (accept(Token::Minus)) sign = -1;
        else accept(Token::Plus);
        parse_term(sign);
        for (;;) {
            if (accept(Token::Plus)) sign = 1;
            else if (accept(Token::Minus)) sign = -1;
            else break;
            parse_term(sign);
        }
    }

    Lexer lex_;
    Token cur_;
    Series2<LambdaPoly> out_;
};

} // namespace

Series2<LambdaPoly> parse_series2_text(const std::string& text, int order) {
    return SeriesParser(text, order).run();
}

std::optional<Series2<Rat>> lower_to_rat(const Series2<LambdaPoly>& s) {
    Series2<Rat> out(s.order());
    for (int d = 0; d <= s.order(); ++d)
        for (int yk = 0; yk <= d; ++yk) {
            const LambdaPoly& v = s.coeff(d - yk, yk);
            if (v.degree() > 0) return std::nullopt;
            if (!v.is_zero()) out.at(d - yk, yk) = v.coeff(0);
        }
    return out;
}

// ---------------------------------------------------------------------------
// JSON conversions.

nlohmann::json series_to_json(const Series2<Rat>& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (int d = 0; d <= s.order(); ++d)
        for (int xk = d; xk >= 0; --xk) {
            const Rat& v = s.coeff(xk, d - xk);
            if (rat_is_zero(v)) continue;
            arr.push_back({{"xk", xk}, {"yk", d - xk}, {"c", rat_to_string(v)}});
        }
    return arr;
}

nlohmann::json series_to_json(const Series2<LambdaPoly>& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (int d = 0; d <= s.order(); ++d)
        for (int xk = d; xk >= 0; --xk) {
            const LambdaPoly& v = s.coeff(xk, d - xk);
            if (v.is_zero()) continue;
            nlohmann::json c = nlohmann::json::array();
            for (int i = 0; i <= v.degree(); ++i) c.push_back(rat_to_string(v.coeff(i)));
            arr.push_back({{"xk", xk}, {"yk", d - xk}, {"c", c}});
        }
    return arr;
}

nlohmann::json series_to_json(const Series1<Rat>& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (int k = 0; k <= s.order(); ++k) coeffs.push_back(rat_to_string(s.coeff(k)));
    return {{"order", s.order()}, {"coeffs", coeffs}};
}

namespace {

void term_indices(const nlohmann::json& term, int& xk, int& yk) {
    if (!term.is_object() || !term.contains("xk") || !term.contains("yk") || !term.contains("c"))
        throw ParseError("series term must be an object with fields xk, yk, c");
    if (!term["xk"].is_number_integer() || !term["yk"].is_number_integer())
        throw ParseError("term exponents must be integers");
    xk = term["xk"].get<int>();
    yk = term["yk"].get<int>();
    if (xk < 0 || yk < 0) throw ParseError("term exponents must be nonnegative");
}

} // namespace

Series2<Rat> series2_from_json_rat(const nlohmann::json& terms, int order) {
    if (!terms.is_array()) throw ParseError("series literal must be an array of terms");
    Series2<Rat> out(order);
    for (const auto& term : terms) {
        int xk = 0, yk = 0;
        term_indices(term, xk, yk);
        if (!term["c"].is_string())
            throw ParseError("coefficient must be a rational string \"p/q\"");
        if (xk + yk > order) continue; // beyond the truncation order: ignored
        out.at(xk, yk) += rat_from_string(term["c"].get<std::string>());
    }
    return out;
}

Series2<LambdaPoly> series2_from_json_lambda(const nlohmann::json& terms, int order) {
    if (!terms.is_array()) throw ParseError("series literal must be an array of terms");
    Series2<LambdaPoly> out(order);
    for (const auto& term : terms) {
        int xk = 0, yk = 0;
        term_indices(term, xk, yk);
        if (xk + yk > order) continue;
        const auto& c = term["c"];
        if (c.is_string()) {
            out.at(xk, yk) += LambdaPoly(rat_from_string(c.get<std::string>()));
        } else if (c.is_array()) {
            std::vector<Rat> coeffs;
            for (const auto& entry : c) {
                if (!entry.is_string()) throw ParseError("lambda coefficient entries must be strings");
                coeffs.push_back(rat_from_string(entry.get<std::string>()));
            }
            out.at(xk, yk) += LambdaPoly::from_coeffs(std::move(coeffs));
        } else {
            throw ParseError("coefficient must be a string or an array of strings");
        }
    }
    return out;
}

GermSpec germ_spec_from_json(const nlohmann::json& doc, std::optional<int> order_override) {
    if (!doc.is_object()) throw ParseError("germ spec must be a JSON object");
    if (!doc.contains("delta")) throw ParseError("germ spec is missing field 'delta'");
    if (!doc.contains("w")) throw ParseError("germ spec is missing field 'w'");
    int order = 0;
    if (order_override) {
        order = *order_override;
    } else if (doc.contains("order")) {
        if (!doc["order"].is_number_integer()) throw ParseError("field 'order' must be an integer");
        order = doc["order"].get<int>();
    } else {
        throw ParseError("germ spec has no 'order' field and no order was supplied");
    }
    return GermSpec(series2_from_json_rat(doc["delta"], order),
                    series2_from_json_rat(doc["w"], order), order);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json to_json(const HilbertReport& rep) {
    return {{"k", rep.k},
            {"inverse_spectral_norm", format_double(rep.inverse_spectral_norm)},
            {"asymptotic_prediction", format_double(rep.asymptotic_prediction)},
            {"ratio", format_double(rep.ratio)}};
}

nlohmann::json to_json(const GrowthReport& rep) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : rep.points)
        points.push_back({{"degree", p.degree},
                          {"max_abs_coeff", format_double(p.max_abs_coeff)},
                          {"root_test", format_double(p.root_test)},
                          {"windowed_root_test", format_double(p.windowed_root_test)}});
    return {{"window", rep.window}, {"trend", rep.trend}, {"points", points}};
}

std::string to_csv(const HilbertReport& rep, bool header) {
    std::ostringstream os;
    if (header) os << "k,inverse_spectral_norm,asymptotic_prediction,ratio\n";
    os << rep.k << ',' << format_double(rep.inverse_spectral_norm) << ','
       << format_double(rep.asymptotic_prediction) << ',' << format_double(rep.ratio) << '\n';
    return os.str();
}

std::string to_csv(const GrowthReport& rep) {
    std::ostringstream os;
    os << "degree,max_abs_coeff,root_test,windowed_root_test\n";
    for (const auto& p : rep.points)
        os << p.degree << ',' << format_double(p.max_abs_coeff) << ','
           << format_double(p.root_test) << ',' << format_double(p.windowed_root_test) << '\n';
    return os.str();
}

} // namespace germcalc
