#include "ltk/parse.hpp"

#include "ltk/errors.hpp"

#include <cctype>

namespace ltk {

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw InvalidInput("polynomial parse error at position " + std::to_string(i) + ": " + msg);
    }
    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() const { return i >= s.size(); }
    char peek() const { return s[i]; }

    Int digits() {
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected digits");
        return Int(s.substr(start, i - start));
    }

    // term := coefficient ['*' varpart] | varpart ; varpart := 'x' ['^' digits]
    void term(int sign, std::vector<Int>& acc) {
        Int coef = 1;
        bool have_coef = false;
        if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            coef = digits();
            have_coef = true;
            ws();
            if (!eof() && peek() == '*') {
                ++i;
                ws();
                if (eof() || peek() != 'x') fail("expected 'x' after '*'");
            }
        }
        long deg = 0;
        if (!eof() && peek() == 'x') {
            ++i;
            deg = 1;
            ws();
            if (!eof() && peek() == '^') {
                ++i;
                ws();
                Int d = digits();
                if (d > 1024) fail("exponent too large");
                deg = d.get_si();
            }
        } else if (!have_coef) {
            fail("expected a coefficient or 'x'");
        }
        if (acc.size() <= static_cast<size_t>(deg)) acc.resize(static_cast<size_t>(deg) + 1, Int(0));
        acc[static_cast<size_t>(deg)] += sign * coef;
    }
};

} // namespace

IntPoly parse_poly(const std::string& text) {
    Parser p{text};
    std::vector<Int> acc;
    p.ws();
    if (p.eof()) p.fail("empty polynomial");
    int sign = 1;
    if (p.peek() == '-') {
        sign = -1;
        ++p.i;
        p.ws();
    } else if (p.peek() == '+') {
        ++p.i;
        p.ws();
    }
    p.term(sign, acc);
    p.ws();
    while (!p.eof()) {
        char c = p.peek();
        if (c == '+')
            sign = 1;
        else if (c == '-')
            sign = -1;
        else
            p.fail("expected '+' or '-'");
        ++p.i;
        p.ws();
        p.term(sign, acc);
        p.ws();
    }
    IntPoly out(std::move(acc));
    if (out.is_zero()) p.fail("the zero polynomial is not a valid input");
    return out;
}

std::string poly_to_text(const IntPoly& f) { return f.to_string("x"); }

} // namespace ltk
