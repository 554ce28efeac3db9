#include "lvvmf/jordan.hpp"

#include <algorithm>
#include <cmath>

namespace lvvmf {

JordanBlock::JordanBlock(long size, Rational angle) : m(size), mu(frac(angle)) {
    if (size < 1) throw std::invalid_argument("Jordan block size must be >= 1");
}

long JordanSpec::s() const {
    long s = 0;
    for (const auto& b : blocks) s = std::max(s, b.m);
    return s;
}

long JordanSpec::dim() const {
    long n = 0;
    for (const auto& b : blocks) n += b.m;
    return n;
}

ComplexMatrix PhasedMatrix::to_complex() const {
    const Complex z = unit_root(turn);
    ComplexMatrix r(unit.rows(), unit.cols());
    for (std::size_t i = 0; i < unit.rows(); ++i)
        for (std::size_t j = 0; j < unit.cols(); ++j) r(i, j) = unit(i, j).get_d() * z;
    return r;
}

CyclotomicMatrix PhasedMatrix::to_cyclotomic() const {
    const Cyclotomic z = Cyclotomic::root_of_unity(turn);
    CyclotomicMatrix r(unit.rows(), unit.cols());
    for (std::size_t i = 0; i < unit.rows(); ++i)
        for (std::size_t j = 0; j < unit.cols(); ++j) r(i, j) = z * Cyclotomic(Rational(unit(i, j)));
    return r;
}

ComplexMatrix block_matrix(const JordanBlock& b) {
    const Complex lam = b.lambda();
    ComplexMatrix r(b.m, b.m, Complex(0.0, 0.0));
    for (long i = 0; i < b.m; ++i) {
        r(i, i) = lam;
        if (i + 1 < b.m) r(i + 1, i) = lam;
    }
    return r;
}

PhasedMatrix block_power_exact(const JordanBlock& b, const Integer& l) {
    PhasedMatrix r;
    r.turn = frac(b.mu * Rational(l));
    r.unit = IntegerMatrix(b.m, b.m, Integer(0));
    for (long i = 0; i < b.m; ++i) {
        const Integer c = binomial(l, i);
        for (long j = 0; j + i < b.m; ++j) r.unit(j + i, j) = c;
    }
    return r;
}

ComplexMatrix block_power(const JordanBlock& b, long l) { return block_power_exact(b, Integer(l)).to_complex(); }

ComplexMatrix rhoT_matrix(const JordanSpec& spec) {
    std::vector<ComplexMatrix> blocks;
    for (const auto& b : spec.blocks) blocks.push_back(block_matrix(b));
    return block_diagonal(blocks);
}

ComplexMatrix rhoT_power(const JordanSpec& spec, long l) {
    std::vector<ComplexMatrix> blocks;
    for (const auto& b : spec.blocks) blocks.push_back(block_power(b, l));
    return block_diagonal(blocks);
}

double norm_bound_constant(const JordanSpec& spec, long l_range) {
    if (l_range < 1) throw std::invalid_argument("l_range must be >= 1");
    if (spec.blocks.empty()) throw std::invalid_argument("empty Jordan spec");
    const long s = spec.s();
    // |lambda| = 1, so the norm of a block power is its largest |C(l, i)|.
    Rational best = 0;
    for (long l = -l_range; l <= l_range; ++l) {
        if (l == 0) continue;
        Integer norm = 0;
        for (const auto& b : spec.blocks)
            for (long i = 0; i < b.m; ++i) norm = std::max(norm, abs(binomial(Integer(l), i)));
        Integer scale = 1;
        mpz_pow_ui(scale.get_mpz_t(), Integer(std::labs(l)).get_mpz_t(), static_cast<unsigned long>(s - 1));
        const Rational ratio(norm, scale);
        if (ratio > best) best = ratio;
    }
    return best.get_d();
}

CyclotomicMatrix ModifiedBasis::matrix() const {
    const std::size_t m = diagonal_turns.size();
    CyclotomicMatrix d(m, m, Cyclotomic(0));
    for (std::size_t i = 0; i < m; ++i) d(i, i) = Cyclotomic::root_of_unity(diagonal_turns[i]);
    return d;
}

ModifiedBasis modified_from_standard(long m, const Rational& mu) {
    if (m < 1) throw std::invalid_argument("block size must be >= 1");
    ModifiedBasis basis;
    for (long i = 0; i < m; ++i) basis.diagonal_turns.push_back(frac(mu * i));

    const Cyclotomic lam = Cyclotomic::root_of_unity(mu);
    CyclotomicMatrix standard(m, m, Cyclotomic(0));
    CyclotomicMatrix d_inv(m, m, Cyclotomic(0));
    for (long i = 0; i < m; ++i) {
        standard(i, i) = lam;
        if (i + 1 < m) standard(i + 1, i) = Cyclotomic(1);
        d_inv(i, i) = Cyclotomic::root_of_unity(-basis.diagonal_turns[i]);
    }
    const CyclotomicMatrix target = block_power_exact(JordanBlock(m, mu), 1).to_cyclotomic();
    basis.verified = basis.matrix() * standard * d_inv == target;
    return basis;
}

UnipotentForm canonicalize_unipotent(const IntegerMatrix& m) {
    if (!m.square() || m.rows() == 0) throw std::invalid_argument("canonicalize_unipotent needs a square matrix");
    const std::size_t p = m.rows();
    const RationalMatrix n = to_rational(m) - RationalMatrix::identity(p);

    std::vector<RationalMatrix> powers{RationalMatrix::identity(p)};
    std::vector<std::size_t> ranks{p};
    while (ranks.back() > 0) {
        if (powers.size() > p)
            throw UnsupportedInput(
                "rho(T) is not unipotent; supply the Jordan blocks and basis change in the representation file");
        powers.push_back(powers.back() * n);
        ranks.push_back(rank(powers.back()));
    }
    const std::size_t top = powers.size() - 1;  // N^top = 0, N^{top-1} != 0

    // Blocks of size exactly k: r_{k-1} - 2 r_k + r_{k+1}.
    auto rank_at = [&](std::size_t k) { return k < ranks.size() ? ranks[k] : std::size_t{0}; };
    std::vector<std::vector<Rational>> chosen;
    UnipotentForm out;
    for (std::size_t k = top; k >= 1; --k) {
        const long want = static_cast<long>(rank_at(k - 1)) - 2 * static_cast<long>(rank_at(k)) +
                          static_cast<long>(rank_at(k + 1));
        if (want <= 0) continue;
        const RationalMatrix kernel = nullspace(powers[k]);
        long got = 0;
        for (std::size_t col = 0; col < kernel.cols() && got < want; ++col) {
            std::vector<std::vector<Rational>> chain;
            std::vector<Rational> v(p);
            for (std::size_t i = 0; i < p; ++i) v[i] = kernel(i, col);
            for (std::size_t t = 0; t < k; ++t) {
                chain.push_back(v);
                std::vector<Rational> w(p, Rational(0));
                for (std::size_t i = 0; i < p; ++i)
                    for (std::size_t j = 0; j < p; ++j) w[i] += n(i, j) * v[j];
                v = std::move(w);
            }
            std::vector<std::vector<Rational>> trial = chosen;
            trial.insert(trial.end(), chain.begin(), chain.end());
            RationalMatrix cols(p, trial.size());
            for (std::size_t j = 0; j < trial.size(); ++j)
                for (std::size_t i = 0; i < p; ++i) cols(i, j) = trial[j][i];
            if (rank(cols) != trial.size()) continue;
            chosen = std::move(trial);
            out.spec.blocks.emplace_back(static_cast<long>(k), Rational(0));
            ++got;
        }
        if (got != want) throw std::logic_error("Jordan chain selection failed");
    }
    if (chosen.size() != p) throw std::logic_error("Jordan chains do not span");
    RationalMatrix basis(p, p);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t i = 0; i < p; ++i) basis(i, j) = chosen[j][i];
    out.basis_change = inverse(basis);

    std::vector<IntegerMatrix> blocks;
    for (const auto& b : out.spec.blocks) blocks.push_back(block_power_exact(b, 1).unit);
    const RationalMatrix assembled = to_rational(block_diagonal(blocks));
    if (!(out.basis_change * to_rational(m) * basis == assembled))
        throw std::logic_error("Jordan basis change failed its exact check");
    return out;
}

}  // namespace lvvmf
