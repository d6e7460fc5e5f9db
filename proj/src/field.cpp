#include "stsrank/field.hpp"

#include "stsrank/error.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace stsrank {

namespace {

std::uint64_t ipow(std::uint64_t base, unsigned exp)
{
    std::uint64_t r = 1;
    while (exp--)
        r *= base;
    return r;
}

int inverse_mod(int a, int p)
{
    // p is small; Fermat is plenty fast.
    int result = 1;
    int base = a % p;
    int e = p - 2;
    while (e > 0) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

std::size_t rank_gf2(const FieldMatrix& m)
{
    const std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::uint64_t> rows(m.rows() * words, 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.at(r, c))
                rows[r * words + c / 64] |= std::uint64_t{1} << (c % 64);

    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t pivot = rank;
        while (pivot < m.rows() && !(rows[pivot * words + w] & bit))
            ++pivot;
        if (pivot == m.rows())
            continue;
        if (pivot != rank)
            std::swap_ranges(rows.begin() + pivot * words, rows.begin() + (pivot + 1) * words,
                             rows.begin() + rank * words);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (rows[r * words + w] & bit)
                for (std::size_t k = w; k < words; ++k)
                    rows[r * words + k] ^= rows[rank * words + k];
        }
        ++rank;
    }
    return rank;
}

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::uint8_t>& a, std::size_t rows, std::size_t cols, int p)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot * cols + c] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        if (pivot != r)
            std::swap_ranges(a.begin() + pivot * cols, a.begin() + (pivot + 1) * cols, a.begin() + r * cols);
        const int inv = inverse_mod(a[r * cols + c], p);
        for (std::size_t k = c; k < cols; ++k)
            a[r * cols + k] = static_cast<std::uint8_t>(a[r * cols + k] * inv % p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i * cols + c] == 0)
                continue;
            const int factor = a[i * cols + c];
            for (std::size_t k = c; k < cols; ++k)
                a[i * cols + k] =
                    static_cast<std::uint8_t>((a[i * cols + k] + (p - factor) * a[r * cols + k]) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

bool is_prime(int p)
{
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

CodeSpec CodeSpec::make(int p, int n, int t)
{
    if (p != 2 && p != 3)
        throw ParameterError("field must be 2 or 3, got " + std::to_string(p));
    const int maxN = p == 2 ? 62 : 39;
    if (n < 2 || n > maxN)
        throw ParameterError("n must lie in [2, " + std::to_string(maxN) + "], got " + std::to_string(n));
    if (t < 1 || t > n - 1)
        throw ParameterError("t must satisfy 1 <= t <= n-1, got n=" + std::to_string(n) +
                             " t=" + std::to_string(t));
    return CodeSpec(static_cast<Field>(p), static_cast<unsigned>(n), static_cast<unsigned>(t));
}

std::uint64_t CodeSpec::length() const noexcept
{
    return binary() ? ipow(2, n_) - 1 : ipow(3, n_);
}

std::uint64_t CodeSpec::T() const noexcept
{
    return binary() ? ipow(2, t_) - 1 : ipow(3, t_);
}

std::uint64_t CodeSpec::M() const noexcept
{
    return binary() ? ipow(2, n_ - t_) - 1 : ipow(3, n_ - t_);
}

unsigned CodeSpec::checkRows() const noexcept
{
    return binary() ? n_ - t_ : n_ - t_ + 1;
}

std::string CodeSpec::label() const
{
    return std::string(binary() ? "binary" : "ternary") + " (" + std::to_string(n_) + "," +
           std::to_string(t_) + ")";
}

FieldMatrix::FieldMatrix(int p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols)
{
    if (!is_prime(p) || p > 255)
        throw ParameterError("matrix field must be a prime below 256, got " + std::to_string(p));
    if (rows == 0 || cols == 0)
        throw ParameterError("matrix must have at least one row and one column");
    entries_.assign(rows * cols, 0);
}

FieldMatrix FieldMatrix::from_rows(int p, const std::vector<std::vector<int>>& rows)
{
    if (rows.empty())
        throw ParameterError("matrix must have at least one row");
    FieldMatrix m(p, rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols())
            throw ParameterError("ragged matrix rows");
        for (std::size_t c = 0; c < m.cols(); ++c)
            m.set(r, c, rows[r][c]);
    }
    return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, int value)
{
    if (value < 0 || value >= p_)
        throw ParameterError("matrix entry " + std::to_string(value) + " outside GF(" + std::to_string(p_) + ")");
    entries_[r * cols_ + c] = static_cast<std::uint8_t>(value);
}

std::vector<std::uint8_t> FieldMatrix::column(std::size_t c) const
{
    std::vector<std::uint8_t> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = at(r, c);
    return out;
}

std::size_t matrix_rank(const FieldMatrix& m)
{
    if (m.prime() == 2)
        return rank_gf2(m);
    std::vector<std::uint8_t> a(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        std::copy(m.row(r).begin(), m.row(r).end(), a.begin() + r * m.cols());
    return rref(a, m.rows(), m.cols(), m.prime()).size();
}

std::vector<std::vector<std::uint8_t>> null_space_basis(const FieldMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    const int p = m.prime();
    std::vector<std::uint8_t> a(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        std::copy(m.row(r).begin(), m.row(r).end(), a.begin() + r * cols);
    const auto pivots = rref(a, rows, cols, p);

    std::vector<bool> isPivot(cols, false);
    for (auto c : pivots)
        isPivot[c] = true;

    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (isPivot[free])
            continue;
        std::vector<std::uint8_t> x(cols, 0);
        x[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            const int coeff = a[i * cols + free];
            x[pivots[i]] = static_cast<std::uint8_t>((p - coeff) % p);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

FieldMatrix build_parity_check(const CodeSpec& spec, std::uint64_t maxColumns)
{
    const std::uint64_t v = spec.length();
    if (v > maxColumns)
        throw ResourceError("H_{n,t} for " + spec.label() + " has " + std::to_string(v) +
                            " columns, above the cap of " + std::to_string(maxColumns));

    const unsigned digits = spec.n() - spec.t();
    const int p = spec.prime();
    FieldMatrix h(p, spec.checkRows(), static_cast<std::size_t>(v));

    // Writes the base-p digits of `value` into column c, most significant digit
    // in row `firstRow`.
    auto write_vector = [&](std::size_t c, std::uint64_t value, unsigned firstRow) {
        for (unsigned d = 0; d < digits; ++d) {
            const unsigned rowIdx = firstRow + digits - 1 - d;
            h.set(rowIdx, c, static_cast<int>(value % p));
            value /= p;
        }
    };

    std::size_t c = 0;
    if (spec.binary()) {
        c = static_cast<std::size_t>(spec.T()); // zero columns first
        const std::uint64_t copies = spec.T() + 1;
        for (std::uint64_t value = 1; value <= spec.M(); ++value)
            for (std::uint64_t k = 0; k < copies; ++k)
                write_vector(c++, value, 0);
    } else {
        const std::uint64_t copies = spec.T();
        for (std::uint64_t value = 0; value < spec.M(); ++value)
            for (std::uint64_t k = 0; k < copies; ++k) {
                h.set(0, c, 1);
                write_vector(c++, value, 1);
            }
    }
    return h;
}

bool is_codeword(const FieldMatrix& h, std::span<const std::uint8_t> x)
{
    if (x.size() != h.cols())
        throw ParameterError("vector length " + std::to_string(x.size()) + " does not match " +
                             std::to_string(h.cols()) + " columns");
    const int p = h.prime();
    for (auto e : x)
        if (e >= p)
            throw ParameterError("vector entry outside GF(" + std::to_string(p) + ")");
    for (std::size_t r = 0; r < h.rows(); ++r) {
        unsigned acc = 0;
        const auto row = h.row(r);
        for (std::size_t c = 0; c < h.cols(); ++c)
            acc = (acc + row[c] * x[c]) % p;
        if (acc != 0)
            return false;
    }
    return true;
}

} // namespace stsrank
