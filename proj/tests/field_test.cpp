#include "oracles.hpp"
#include "stsrank/dual.hpp"
#include "stsrank/error.hpp"
#include "stsrank/field.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stsrank;

TEST(CodeSpec, DerivedSizes)
{
    const auto b = CodeSpec::make(2, 5, 2);
    EXPECT_EQ(b.length(), 31u);
    EXPECT_EQ(b.T(), 3u);
    EXPECT_EQ(b.M(), 7u);
    EXPECT_EQ(b.checkRows(), 3u);
    const auto t = CodeSpec::make(3, 3, 1);
    EXPECT_EQ(t.length(), 27u);
    EXPECT_EQ(t.T(), 3u);
    EXPECT_EQ(t.M(), 9u);
    EXPECT_EQ(t.checkRows(), 3u);
}

TEST(CodeSpec, RejectsBadParameters)
{
    EXPECT_THROW(CodeSpec::make(5, 3, 1), ParameterError);
    EXPECT_THROW(CodeSpec::make(2, 3, 0), ParameterError);
    EXPECT_THROW(CodeSpec::make(2, 3, 3), ParameterError);
    EXPECT_THROW(CodeSpec::make(3, 1, 1), ParameterError);
}

TEST(FieldMatrix, EntriesAreValidated)
{
    FieldMatrix m(3, 2, 2);
    EXPECT_THROW(m.set(0, 0, 3), ParameterError);
    EXPECT_THROW(FieldMatrix(2, 0, 3), ParameterError);
    EXPECT_THROW(FieldMatrix(4, 1, 1), ParameterError);
}

TEST(MatrixRank, Identity)
{
    EXPECT_EQ(matrix_rank(FieldMatrix::from_rows(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3u);
}

TEST(MatrixRank, FanoAndAffinePlane)
{
    EXPECT_EQ(matrix_rank(incidence_matrix(classic::fano(), 2)), 4u);
    EXPECT_EQ(matrix_rank(incidence_matrix(classic::affine_plane_3(), 3)), 6u);
}

TEST(MatrixRank, AgreesWithPlainElimination)
{
    std::mt19937_64 rng(7);
    for (int p : {2, 3, 5}) {
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t r = 1 + rng() % 12, c = 1 + rng() % 90;
            std::vector<std::vector<int>> rows(r, std::vector<int>(c));
            for (auto& row : rows)
                for (auto& x : row)
                    x = static_cast<int>(rng() % p);
            EXPECT_EQ(matrix_rank(FieldMatrix::from_rows(p, rows)), oracle::rank_mod(rows, p));
        }
    }
}

TEST(MatrixRank, InvariantUnderRowAndColumnPermutation)
{
    std::mt19937_64 rng(11);
    for (int p : {2, 3}) {
        const auto d = p == 2 ? classic::projective_space(3) : classic::affine_space(3);
        auto rows = oracle::incidence(d);
        const std::size_t base = matrix_rank(FieldMatrix::from_rows(p, rows));
        for (int trial = 0; trial < 20; ++trial) {
            std::shuffle(rows.begin(), rows.end(), rng);
            std::vector<std::size_t> perm(rows[0].size());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            auto shuffled = rows;
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < perm.size(); ++j)
                    shuffled[i][j] = rows[i][perm[j]];
            EXPECT_EQ(matrix_rank(FieldMatrix::from_rows(p, shuffled)), base);
        }
    }
}

TEST(ParityCheck, BinaryThreeOne)
{
    const auto h = build_parity_check(CodeSpec::make(2, 3, 1));
    // columns 00,01,01,10,10,11,11
    EXPECT_EQ(h, FieldMatrix::from_rows(2, {{0, 0, 0, 1, 1, 1, 1}, {0, 1, 1, 0, 0, 1, 1}}));
}

TEST(ParityCheck, TernaryTwoOne)
{
    const auto h = build_parity_check(CodeSpec::make(3, 2, 1));
    EXPECT_EQ(h, FieldMatrix::from_rows(3, {{1, 1, 1, 1, 1, 1, 1, 1, 1}, {0, 0, 0, 1, 1, 1, 2, 2, 2}}));
}

TEST(ParityCheck, BinaryThreeTwo)
{
    EXPECT_EQ(build_parity_check(CodeSpec::make(2, 3, 2)), FieldMatrix::from_rows(2, {{0, 0, 0, 1, 1, 1, 1}}));
}

TEST(ParityCheck, MatchesMultisetRuleAndHasFullRowRank)
{
    for (int p : {2, 3})
        for (int n = 2; n <= (p == 2 ? 10 : 7); ++n)
            for (int t = 1; t < n; ++t) {
                const auto spec = CodeSpec::make(p, n, t);
                const auto h = build_parity_check(spec);
                const auto cols = oracle::parity_columns(p, n, t);
                ASSERT_EQ(h.cols(), cols.size());
                for (std::size_t c = 0; c < cols.size(); c += 1 + cols.size() / 64)
                    for (std::size_t r = 0; r < h.rows(); ++r)
                        ASSERT_EQ(h.at(r, c), cols[c][r]) << spec.label();
                EXPECT_EQ(matrix_rank(h), spec.checkRows()) << spec.label();
            }
}

TEST(IsCodeword, Examples)
{
    const auto h = build_parity_check(CodeSpec::make(2, 3, 1));
    EXPECT_TRUE(is_codeword(h, std::vector<std::uint8_t>(7, 0)));
    EXPECT_TRUE(is_codeword(h, std::vector<std::uint8_t>{1, 1, 1, 0, 0, 0, 0}));
    // column 0 is the zero column, so only e_0 is a weight-1 codeword
    for (int i = 0; i < 7; ++i) {
        std::vector<std::uint8_t> e(7, 0);
        e[i] = 1;
        EXPECT_EQ(is_codeword(h, e), i == 0) << i;
    }
    EXPECT_THROW(is_codeword(h, std::vector<std::uint8_t>(6, 0)), ParameterError);
}

TEST(DualStructure, Fano)
{
    const auto r = verify_dual_structure(incidence_matrix(classic::fano(), 2));
    EXPECT_EQ(r.corank, 3u);
    ASSERT_EQ(r.weightHistogram.size(), 1u);
    EXPECT_EQ(r.weightHistogram.at(4), 7u);
    EXPECT_TRUE(r.passed);
}

TEST(DualStructure, AffinePlane)
{
    const auto r = verify_dual_structure(incidence_matrix(classic::affine_plane_3(), 3));
    EXPECT_EQ(r.corank, 3u);
    EXPECT_EQ(r.allOnesMultiples, 2u);
    EXPECT_EQ(r.weightHistogram.at(9), 2u);
    EXPECT_EQ(r.weightHistogram.at(6), 24u);
    EXPECT_TRUE(r.passed);
}

TEST(DualStructure, Rejections)
{
    EXPECT_THROW(verify_dual_structure(FieldMatrix(2, 1, 1)), DomainError);
    Limits tight;
    tight.dualCorankCap = 2;
    EXPECT_THROW(verify_dual_structure(incidence_matrix(classic::fano(), 2), tight), ResourceError);
}

TEST(DualStructure, ClassicalSpaces)
{
    for (unsigned d = 2; d <= 4; ++d)
        EXPECT_TRUE(verify_dual_structure(incidence_matrix(classic::projective_space(d), 2)).passed);
    for (unsigned d = 2; d <= 3; ++d)
        EXPECT_TRUE(verify_dual_structure(incidence_matrix(classic::affine_space(d), 3)).passed);
}
