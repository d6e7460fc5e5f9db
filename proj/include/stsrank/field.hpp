#pragma once

// Exact linear algebra over small prime fields and the parity-check
// matrices of the codes C_{n,t}.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace stsrank {

enum class Field : int { Binary = 2, Ternary = 3 };

/// Parameters (p, n, t) of the code C_{n,t}. Construct through make(), which
/// enforces 1 <= t <= n-1 and keeps every derived size inside 64 bits.
class CodeSpec {
public:
    static CodeSpec make(int p, int n, int t);

    Field field() const noexcept { return field_; }
    int prime() const noexcept { return static_cast<int>(field_); }
    bool binary() const noexcept { return field_ == Field::Binary; }
    unsigned n() const noexcept { return n_; }
    unsigned t() const noexcept { return t_; }

    /// Code length: 2^n - 1 (binary) or 3^n (ternary).
    std::uint64_t length() const noexcept;
    /// 2^t - 1 (binary) or 3^t (ternary).
    std::uint64_t T() const noexcept;
    /// Number of column groups: 2^(n-t) - 1 (binary) or 3^(n-t) (ternary).
    std::uint64_t M() const noexcept;
    /// Row count of H_{n,t}: n - t (binary) or n - t + 1 (ternary).
    unsigned checkRows() const noexcept;

    std::string label() const;

    auto operator<=>(const CodeSpec&) const = default;

private:
    CodeSpec(Field f, unsigned n, unsigned t) : field_(f), n_(n), t_(t) {}

    Field field_;
    unsigned n_;
    unsigned t_;
};

/// Dense matrix over GF(p), p a prime below 256. Entries are stored one per byte.
class FieldMatrix {
public:
    FieldMatrix(int p, std::size_t rows, std::size_t cols);

    /// Entries must already be reduced into [0, p).
    static FieldMatrix from_rows(int p, const std::vector<std::vector<int>>& rows);

    int prime() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::uint8_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, int value);

    std::span<const std::uint8_t> row(std::size_t r) const
    {
        return {entries_.data() + r * cols_, cols_};
    }

    std::vector<std::uint8_t> column(std::size_t c) const;

    bool operator==(const FieldMatrix&) const = default;

private:
    int p_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint8_t> entries_;
};

bool is_prime(int p);

/// Rank over GF(p) by exact Gaussian elimination. GF(2) rows are packed into
/// 64-bit words.
std::size_t matrix_rank(const FieldMatrix& m);

/// A basis of { x : m x = 0 } over GF(p), one vector per row of the result.
std::vector<std::vector<std::uint8_t>> null_space_basis(const FieldMatrix& m);

/// H_{n,t} with columns in ascending lexicographic order (row 0 most significant).
/// Binary: (n-t) x (2^n - 1); 2^t - 1 zero columns, then 2^t copies of every
/// nonzero vector of GF(2)^{n-t}. Ternary: (n-t+1) x 3^n; all-ones first row and
/// 3^t copies of every vector of GF(3)^{n-t} below it.
FieldMatrix build_parity_check(const CodeSpec& spec, std::uint64_t maxColumns = 1u << 22);

/// True iff H x = 0 over GF(p). Throws ParameterError on length mismatch or
/// an entry outside [0, p).
bool is_codeword(const FieldMatrix& h, std::span<const std::uint8_t> x);

} // namespace stsrank
