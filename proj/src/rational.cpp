#include "tvar/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tvar {

Rat rat_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t i = 0;
    auto expect_digits = [&](std::size_t start) {
        std::size_t j = start;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == start) throw std::invalid_argument("malformed rational literal: " + text);
        return j;
    };
    if (text[i] == '+' || text[i] == '-') ++i;
    i = expect_digits(i);
    if (i < text.size()) {
        if (text[i] != '/') throw std::invalid_argument("malformed rational literal: " + text);
        std::size_t j = i + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-'))
            throw std::invalid_argument("malformed rational literal: " + text);
        j = expect_digits(i + 1);
        if (j != text.size()) throw std::invalid_argument("malformed rational literal: " + text);
    }
    Rat r;
    const std::string body = (text[0] == '+') ? text.substr(1) : text;
    if (r.set_str(body, 10) != 0) throw std::invalid_argument("malformed rational literal: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) {
    return r.get_str();
}

bool rat_is_integer(const Rat& r) {
    return r.get_den() == 1;
}

static long mpz_checked_long(const mpz_class& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("rational out of machine range");
    return z.get_si();
}

long rat_ceil(const Rat& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return mpz_checked_long(q);
}

long rat_floor(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return mpz_checked_long(q);
}

long rat_to_long(const Rat& r) {
    if (!rat_is_integer(r)) throw std::invalid_argument("expected integer, got " + rat_str(r));
    return mpz_checked_long(r.get_num());
}

long rat_denominator(const Rat& r) {
    return mpz_checked_long(r.get_den());
}

}  // namespace tvar
