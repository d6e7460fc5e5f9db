#include "oracles.hpp"
#include "stsrank/designs.hpp"
#include "stsrank/error.hpp"
#include "stsrank/geometry.hpp"

#include <gtest/gtest.h>

using namespace stsrank;

TEST(TripleSystem, RejectsUnsortedInput)
{
    EXPECT_THROW(TripleSystem(3, {{0, 2, 1}}), DomainError);
    EXPECT_THROW(TripleSystem(7, {{1, 2, 3}, {0, 1, 2}}), DomainError);
    EXPECT_THROW(TripleSystem(3, {{0, 1, 2}, {0, 1, 2}}), DomainError);
    EXPECT_THROW(TripleSystem(3, {{0, 1, 3}}), DomainError);
    EXPECT_EQ(TripleSystem::normalized(3, {{2, 1, 0}}), TripleSystem(3, {{0, 1, 2}}));
}

TEST(ValidateSts, Fano)
{
    EXPECT_TRUE(validate_sts(classic::fano()).isSts);
}

TEST(ValidateSts, MissingBlock)
{
    auto blocks = classic::fano().blocks();
    blocks.pop_back();
    const auto cert = validate_sts(TripleSystem(7, blocks));
    EXPECT_FALSE(cert.isSts);
    ASSERT_TRUE(cert.failingPair);
    EXPECT_EQ(cert.failingPair->count, 0u);
}

TEST(ValidateSts, WeightThreeDesignIsNotAnSts)
{
    EXPECT_FALSE(validate_sts(*weight3_design(CodeSpec::make(2, 3, 1))).isSts);
}

TEST(ValidateSts, ReplicationAndBlockCount)
{
    for (const auto& d : {classic::fano(), classic::affine_plane_3(), classic::projective_space(3),
                          classic::affine_space(3), classic::projective_space(4)}) {
        ASSERT_TRUE(validate_sts(d).isSts);
        EXPECT_TRUE(oracle::is_sts(d));
        const Point v = d.points();
        EXPECT_EQ(d.size(), std::size_t{v} * (v - 1) / 6);
        const auto a = incidence_matrix(d, 2);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            int s = 0;
            for (auto x : a.row(r))
                s += x;
            EXPECT_EQ(s, 3);
        }
        for (std::size_t c = 0; c < a.cols(); ++c) {
            const auto col = a.column(c);
            EXPECT_EQ(std::count(col.begin(), col.end(), 1), (v - 1) / 2);
        }
    }
}

TEST(IncidenceMatrix, SingleBlock)
{
    EXPECT_EQ(incidence_matrix(TripleSystem(3, {{0, 1, 2}}), 2), FieldMatrix::from_rows(2, {{1, 1, 1}}));
    EXPECT_THROW(incidence_matrix(TripleSystem(3, {}), 2), DomainError);
}

TEST(StsRank, Examples)
{
    EXPECT_EQ(sts_rank(classic::fano(), 2), 4u);
    EXPECT_EQ(sts_rank(classic::affine_plane_3(), 3), 6u);
    EXPECT_EQ(sts_rank(classic::fano(), 5), 7u);
    EXPECT_THROW(sts_rank(*weight3_design(CodeSpec::make(2, 3, 1)), 2), DomainError);
    EXPECT_THROW(sts_rank(classic::fano(), 4), ParameterError);
}

TEST(StsRank, ClassicalSpacesMeetTheLowerBound)
{
    // PG(n-1,2): 2^n - 1 - n;  AG(n,3): 3^n - 1 - n
    for (unsigned n = 3; n <= 5; ++n) {
        const auto d = classic::projective_space(n - 1);
        EXPECT_EQ(sts_rank(d, 2), oracle::rank_mod(oracle::incidence(d), 2));
        EXPECT_EQ(sts_rank(d, 2), (1u << n) - 1 - n);
    }
    for (unsigned n = 2; n <= 3; ++n) {
        const auto d = classic::affine_space(n);
        EXPECT_EQ(sts_rank(d, 3), oracle::ipow(3, n) - 1 - n);
    }
}

TEST(TripleSystem, RelabelAndSubset)
{
    const auto f = classic::fano();
    std::vector<Point> perm{6, 5, 4, 3, 2, 1, 0};
    EXPECT_EQ(f.relabeled(perm), oracle::apply(f, perm));
    EXPECT_TRUE(f.subset_of(f));
}
