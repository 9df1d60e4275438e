#include "lindgal/nc_poly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace lindgal {

NCPoly::NCPoly(int modes) : modes_(modes) {
    if (modes < 1) throw std::invalid_argument("NCPoly: need at least one mode");
}

NCPoly NCPoly::annihilation(int mode, int modes) {
    NCPoly p(modes);
    p.add_term(1.0, {Letter{mode, false}});
    return p;
}

NCPoly NCPoly::creation(int mode, int modes) {
    NCPoly p(modes);
    p.add_term(1.0, {Letter{mode, true}});
    return p;
}

NCPoly NCPoly::identity(int modes) {
    NCPoly p(modes);
    p.add_term(1.0, {});
    return p;
}

NCPoly NCPoly::number(int mode, int modes) {
    NCPoly p(modes);
    p.add_term(1.0, {Letter{mode, true}, Letter{mode, false}});
    return p;
}

int NCPoly::degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.word.size()));
    return d;
}

NCPoly NCPoly::adjoint() const {
    NCPoly p(modes_);
    for (const auto& t : terms_) {
        std::vector<Letter> w(t.word.rbegin(), t.word.rend());
        for (auto& l : w) l.dagger = !l.dagger;
        p.add_term(std::conj(t.coeff), std::move(w));
    }
    return p;
}

NCPoly& NCPoly::add_term(std::complex<double> coeff, std::vector<Letter> word) {
    for (const auto& l : word) {
        if (l.mode < 0 || l.mode >= modes_)
            throw std::out_of_range("NCPoly: letter mode out of range");
    }
    if (coeff != std::complex<double>(0.0)) terms_.push_back({coeff, std::move(word)});
    return *this;
}

NCPoly operator+(const NCPoly& a, const NCPoly& b) {
    if (a.modes_ != b.modes_) throw std::invalid_argument("NCPoly: mode count mismatch");
    NCPoly p(a.modes_);
    p.terms_ = a.terms_;
    p.terms_.insert(p.terms_.end(), b.terms_.begin(), b.terms_.end());
    return p;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    if (a.modes_ != b.modes_) throw std::invalid_argument("NCPoly: mode count mismatch");
    NCPoly p(a.modes_);
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            std::vector<Letter> w = ta.word;
            w.insert(w.end(), tb.word.begin(), tb.word.end());
            p.add_term(ta.coeff * tb.coeff, std::move(w));
        }
    return p;
}

NCPoly operator*(std::complex<double> c, const NCPoly& p) {
    NCPoly q(p.modes_);
    if (c == std::complex<double>(0.0)) return q;
    for (const auto& t : p.terms_) q.add_term(c * t.coeff, t.word);
    return q;
}

namespace {

std::vector<std::string> split_terms(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') depth++;
        if (c == ')') depth--;
        if (c == '+' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\n\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\n\r");
    return s.substr(b, e - b + 1);
}

std::complex<double> parse_coeff(const std::string& s) {
    std::string t = trim(s);
    if (t.empty()) throw std::invalid_argument("NCPoly parse: empty coefficient");
    if (t.front() == '(') {
        if (t.back() != ')') throw std::invalid_argument("NCPoly parse: unbalanced coefficient parentheses in '" + t + "'");
        std::string inner = t.substr(1, t.size() - 2);
        size_t comma = inner.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("NCPoly parse: expected (re,im) in '" + t + "'");
        return {std::stod(inner.substr(0, comma)), std::stod(inner.substr(comma + 1))};
    }
    size_t pos = 0;
    double re = std::stod(t, &pos);
    if (trim(t.substr(pos)) != "")
        throw std::invalid_argument("NCPoly parse: trailing characters in coefficient '" + t + "'");
    return {re, 0.0};
}

}  // namespace

NCPoly NCPoly::parse(const std::string& text, int modes) {
    NCPoly p(modes);
    for (const std::string& raw : split_terms(text)) {
        std::string term = trim(raw);
        if (term.empty()) throw std::invalid_argument("NCPoly parse: empty term");
        size_t star = term.find('*');
        if (star == std::string::npos)
            throw std::invalid_argument("NCPoly parse: term '" + term + "' lacks 'coeff * letters'");
        std::complex<double> coeff = parse_coeff(term.substr(0, star));
        std::string letters = trim(term.substr(star + 1));
        std::vector<Letter> word;
        std::istringstream iss(letters);
        std::string tok;
        bool identity_word = false;
        while (iss >> tok) {
            if (tok == "1") {
                identity_word = true;
                continue;
            }
            bool dag = false;
            std::string body = tok;
            if (body.rfind("ad", 0) == 0) {
                dag = true;
                body = body.substr(2);
            } else if (body.rfind("a", 0) == 0) {
                body = body.substr(1);
            } else {
                throw std::invalid_argument("NCPoly parse: unknown letter '" + tok + "'");
            }
            if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("NCPoly parse: unknown letter '" + tok + "'");
            int mode = std::stoi(body);
            if (mode >= modes)
                throw std::out_of_range("NCPoly parse: letter '" + tok + "' exceeds mode count");
            word.push_back({mode, dag});
        }
        if (identity_word && !word.empty())
            throw std::invalid_argument("NCPoly parse: '1' cannot be mixed with letters in a word");
        if (letters.empty())
            throw std::invalid_argument("NCPoly parse: term '" + term + "' has no letters (use '1')");
        p.add_term(coeff, std::move(word));
    }
    return p;
}

std::string NCPoly::to_string() const {
    if (terms_.empty()) return "0*1";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.coeff.real() << "," << t.coeff.imag() << ")*";
        if (t.word.empty()) {
            os << "1";
        } else {
            bool fl = true;
            for (const auto& l : t.word) {
                if (!fl) os << " ";
                fl = false;
                os << (l.dagger ? "ad" : "a") << l.mode;
            }
        }
    }
    return os.str();
}

}  // namespace lindgal
