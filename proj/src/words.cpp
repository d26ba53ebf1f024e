#include "hyp/words.hpp"

#include <algorithm>
#include <cctype>

namespace hyp {

char letter_char(Letter x) { return "abAB"[x & 3]; }

namespace {

struct Parser {
    std::string_view s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*' || s[i] == '.'))
            ++i;
    }

    Word sequence() {
        Word out;
        for (skip(); i < s.size() && s[i] != ')'; skip()) {
            Word atom = factor();
            out.insert(out.end(), atom.begin(), atom.end());
        }
        return out;
    }

    Word factor() {
        Word base;
        char ch = s[i];
        if (ch == '(') {
            ++i;
            base = sequence();
            if (i >= s.size() || s[i] != ')') throw ParseError("unbalanced parenthesis");
            ++i;
        } else if (ch == 'a' || ch == 'b' || ch == 'A' || ch == 'B') {
            base.push_back(ch == 'a' ? 0 : ch == 'b' ? 1 : ch == 'A' ? 2 : 3);
            ++i;
        } else {
            throw ParseError(std::string("unexpected character '") + ch + "'");
        }
        skip();
        if (i < s.size() && s[i] == '^') {
            ++i;
            bool neg = false;
            if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
            std::size_t start = i;
            long n = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                n = n * 10 + (s[i++] - '0');
                if (n > 1000000) throw ParseError("exponent too large");
            }
            if (i == start) throw ParseError("missing exponent after ^");
            if (neg) base = inverse(base);
            Word rep;
            rep.reserve(base.size() * std::size_t(n));
            for (long k = 0; k < n; ++k) rep.insert(rep.end(), base.begin(), base.end());
            return rep;
        }
        return base;
    }
};

}  // namespace

Word parse_word(std::string_view text) {
    Parser p{text};
    Word w = p.sequence();
    if (p.i != text.size()) throw ParseError("unbalanced parenthesis");
    return w;
}

std::string to_string(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Letter x : w) s.push_back(letter_char(x));
    return s;
}

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (Letter x : w) {
        if (!out.empty() && out.back() == inv(x))
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (Letter& x : out) x = inv(x);
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == inv(r[hi - 1])) {
        ++lo;
        --hi;
    }
    return Word(r.begin() + std::ptrdiff_t(lo), r.begin() + std::ptrdiff_t(hi));
}

namespace {

Word least_rotation(const Word& w) {
    std::size_t n = w.size(), best = 0;
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            Letter x = w[(r + k) % n], y = w[(best + k) % n];
            if (x != y) {
                if (x < y) best = r;
                break;
            }
        }
    }
    Word out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = w[(best + k) % n];
    return out;
}

}  // namespace

Word canonical_rotation(const Word& w) {
    Word f = least_rotation(w);
    Word b = least_rotation(inverse(w));
    return std::min(f, b);
}

CyclicWord CyclicWord::from_letters(const Word& raw) {
    Word r = cyclic_reduce(raw);
    if (r.empty()) throw TrivialClassError("word reduces to the identity");
    CyclicWord c;
    c.w_ = canonical_rotation(r);
    return c;
}

std::pair<Word, int> CyclicWord::primitive_root() const {
    std::size_t n = w_.size();
    for (std::size_t p = 1; p <= n; ++p) {
        if (n % p) continue;
        bool ok = true;
        for (std::size_t k = p; k < n && ok; ++k) ok = w_[k] == w_[k - p];
        if (ok) return {Word(w_.begin(), w_.begin() + std::ptrdiff_t(p)), int(n / p)};
    }
    return {w_, 1};
}

void CyclicWord::require_primitive() const {
    auto [root, e] = primitive_root();
    if (e != 1) throw MultiplicityError(to_string(root), e);
}

}  // namespace hyp
