#pragma once

// SL(2,Z) arithmetic and the canonical alternating-sign factorization
//   gamma = sign * (S T^{l_{nu+1}}) ... (S T^{l_1}) (S T^{l_0}).

#include "lvvmf/arith.hpp"

#include <cstdint>
#include <iterator>
#include <string>
#include <variant>
#include <vector>

namespace lvvmf {

struct GammaMatrix {
    Integer a = 1, b = 0, c = 0, d = 1;

    static GammaMatrix identity() { return {}; }
    static GammaMatrix S() { return {0, -1, 1, 0}; }
    static GammaMatrix T(const Integer& l = 1) { return {1, l, 0, 1}; }
    /// S T^l = [[0,-1],[1,l]].
    static GammaMatrix ST(const Integer& l) { return {0, -1, 1, l}; }

    Integer det() const { return a * d - b * c; }
    bool unimodular() const { return det() == 1; }
    GammaMatrix inverse() const { return {d, -b, -c, a}; }
    GammaMatrix negated() const { return {-a, -b, -c, -d}; }
    IntegerMatrix matrix() const { return IntegerMatrix{{a, b}, {c, d}}; }

    friend bool operator==(const GammaMatrix& x, const GammaMatrix& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

/// Throws std::invalid_argument unless ad - bc = 1.
GammaMatrix make_gamma(const Integer& a, const Integer& b, const Integer& c, const Integer& d);

GammaMatrix compose(const GammaMatrix& g1, const GammaMatrix& g2);
inline GammaMatrix operator*(const GammaMatrix& g1, const GammaMatrix& g2) { return compose(g1, g2); }

std::string to_string(const GammaMatrix& g);

struct EichlerWord {
    int sign = 1;
    std::vector<Integer> exponents;  // l_0, l_1, ..., l_{nu+1}

    /// nu = length - 2; a single factor S T^{l_0} has nu = -1.
    long nu() const { return static_cast<long>(exponents.size()) - 2; }
    const Integer& first() const { return exponents.front(); }
    const Integer& last() const { return exponents.back(); }
    bool single_factor() const { return exponents.size() == 1; }

    friend bool operator==(const EichlerWord& x, const EichlerWord& y) {
        return x.sign == y.sign && x.exponents == y.exponents;
    }
};

std::string to_string(const EichlerWord& w);

/// gamma = sign * T^b, the c = 0 case.
struct Translation {
    int sign = 1;
    Integer b = 0;
};

using Decomposition = std::variant<EichlerWord, Translation>;

/// Empty string when the word has the alternating sign pattern
/// l_1 > 0, (-1)^{j-1} l_j > 0 for 1 <= j <= nu, (-1)^nu l_{nu+1} >= 0;
/// otherwise a description of the first offending position.
std::string sign_pattern_error(const EichlerWord& w);

/// Throws std::invalid_argument if g is not unimodular. Never throws for c = 0.
Decomposition eichler_decompose(const GammaMatrix& g);

/// As eichler_decompose but requires c != 0 (std::invalid_argument otherwise).
EichlerWord decompose_word(const GammaMatrix& g);

/// Throws std::invalid_argument on an empty word, a bad sign flag or a
/// broken sign pattern.
GammaMatrix reconstruct(const EichlerWord& w);
GammaMatrix reconstruct(const Translation& t);

/// P_0 = S T^{l_0}, P_{j+1} = (S T^{l_{j+1}}) P_j. Unsigned: the last entry
/// equals sign * gamma.
std::vector<GammaMatrix> prefix_products(const EichlerWord& w);

struct WordBoundReport {
    bool pass = true;
    std::string l0_case;      // "negative", "zero" or "positive"
    bool trailing_zero = false;
    double max_ratio = 0;     // product / bound in the final display inequality
    std::vector<std::string> violations;
};

/// Checks the product bounds on |l_0 ... l_j| against the entries of
/// gamma, together with the per-step sign and size invariants of the
/// prefix products, all in exact integer arithmetic.
WordBoundReport verify_word_bounds(const EichlerWord& w, const GammaMatrix& g);

/// Whether l_{nu+1} != 0 exactly when |a/c| < 1, and l_nu = +-floor(|a/c|)
/// in the other case. Single-factor words are exempt.
struct TailDichotomy {
    bool exempt = false;
    bool holds = true;
    std::string detail;
};

TailDichotomy check_tail_dichotomy(const EichlerWord& w, const GammaMatrix& g);

/// 2nu+4, 2nu+3, 2nu+1 or 2nu depending on which of l_0, l_{nu+1} vanish.
/// A single factor counts 2 (l_0 != 0) or 1 (gamma = S).
long eichler_length(const EichlerWord& w);

/// L(gamma) / (ln|c| + 1).
double lame_ratio(const EichlerWord& w, const GammaMatrix& g);

/// One gamma per coprime (c, d) with 1 <= c <= c_max, |d| <= d_max, in
/// order of c then d, with a the least nonnegative inverse of d mod c.
class GammaRange {
public:
    GammaRange(std::int64_t c_max, std::int64_t d_max, std::int64_t c_min = 1);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = GammaMatrix;
        using difference_type = std::ptrdiff_t;
        using pointer = const GammaMatrix*;
        using reference = const GammaMatrix&;

        iterator() = default;
        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }
        iterator& operator++();
        iterator operator++(int) {
            iterator t = *this;
            ++*this;
            return t;
        }
        friend bool operator==(const iterator& x, const iterator& y) {
            return x.done_ == y.done_ && (x.done_ || (x.c_ == y.c_ && x.d_ == y.d_));
        }

    private:
        friend class GammaRange;
        void settle();
        std::int64_t c_ = 0, d_ = 0, c_max_ = 0, d_max_ = 0;
        bool done_ = true;
        GammaMatrix current_;
    };

    iterator begin() const;
    iterator end() const { return {}; }

private:
    std::int64_t c_min_, c_max_, d_max_;
};

GammaRange enumerate_gamma(std::int64_t c_max, std::int64_t d_max);

/// The canonical representative for the coprime pair (c, d), c >= 1.
GammaMatrix canonical_gamma(std::int64_t c, std::int64_t d);

}  // namespace lvvmf
