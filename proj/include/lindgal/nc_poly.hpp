#pragma once

#include <complex>
#include <string>
#include <vector>

namespace lindgal {

// One creation/annihilation letter acting on a given mode.
struct Letter {
    int mode = 0;
    bool dagger = false;

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.mode == b.mode && a.dagger == b.dagger;
    }
};

// Non-commutative polynomial in creation/annihilation letters.
// Words are kept as written; no normal ordering is performed, so two
// different term lists may represent the same operator.
class NCPoly {
public:
    struct Term {
        std::complex<double> coeff;
        std::vector<Letter> word;  // operator-product order, leftmost factor first
    };

    explicit NCPoly(int modes = 1);

    static NCPoly annihilation(int mode, int modes);
    static NCPoly creation(int mode, int modes);
    static NCPoly identity(int modes);
    static NCPoly number(int mode, int modes);  // a† a

    // Text grammar: terms joined by '+', each "coeff * letters" with letters
    // from {a0, ad0, a1, ad1, ...} or the literal "1" for the identity word.
    // Coefficients are "re" or "(re,im)". Example: "1*a0 a0 + (-4,0)*1".
    static NCPoly parse(const std::string& text, int modes);

    int modes() const { return modes_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Max word length over terms; 0 for the zero polynomial.
    int degree() const;

    // Word-reverse, dagger-swap, coefficient-conjugate.
    NCPoly adjoint() const;

    NCPoly& add_term(std::complex<double> coeff, std::vector<Letter> word);

    friend NCPoly operator+(const NCPoly& a, const NCPoly& b);
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
    friend NCPoly operator*(std::complex<double> c, const NCPoly& p);

    std::string to_string() const;

private:
    int modes_;
    std::vector<Term> terms_;
};

}  // namespace lindgal
