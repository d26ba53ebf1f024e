#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyp {

// Letters: 0 = a, 1 = b, 2 = A (a^-1), 3 = B (b^-1).
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

constexpr Letter inv(Letter x) { return Letter((x + 2) & 3); }
char letter_char(Letter x);

struct TrivialClassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MultiplicityError : std::runtime_error {
    std::string root;
    int exponent;
    MultiplicityError(const std::string& r, int e)
        : std::runtime_error("non-primitive word: (" + r + ")^" + std::to_string(e)), root(r), exponent(e) {}
};

// Accepts a, b, A, B, parenthesised groups and ^n (n may be negative).
Word parse_word(std::string_view text);
std::string to_string(const Word& w);

Word free_reduce(const Word& w);
Word inverse(const Word& w);

class CyclicWord {
public:
    // Free + cyclic reduction and canonical rotation. Throws TrivialClassError if empty.
    static CyclicWord from_letters(const Word& raw);
    static CyclicWord parse(std::string_view text) { return from_letters(parse_word(text)); }

    const Word& letters() const { return w_; }
    std::size_t size() const { return w_.size(); }
    std::string str() const { return to_string(w_); }

    // Shortest p with w = u^(n/p); returns {u, n/p}.
    std::pair<Word, int> primitive_root() const;
    bool is_primitive() const { return primitive_root().second == 1; }
    void require_primitive() const;

    bool operator==(const CyclicWord&) const = default;
    auto operator<=>(const CyclicWord&) const = default;

private:
    Word w_;
};

Word cyclic_reduce(const Word& w);
// Least rotation of w and of its inverse under the order a < b < A < B.
Word canonical_rotation(const Word& cyclically_reduced);

}  // namespace hyp
