#include <gtest/gtest.h>

#include "nrt/codetools.hpp"
#include "nrt/reduction.hpp"
#include "oracles.hpp"
#include "shapes.hpp"

using namespace nrt;

namespace {

const Field gf2 = field_create(2);
const Field gf3 = field_create(3);

const Matrix example_input(gf2, {{1, 1, 1, 0, 1, 1, 1, 1},
                                 {1, 0, 1, 0, 0, 1, 1, 0},
                                 {1, 1, 1, 0, 0, 1, 1, 1},
                                 {0, 0, 0, 0, 1, 1, 0, 0}});
const Matrix example_output(gf2, {{0, 1, 0, 0, 0, 0, 0, 1},
                                  {0, 0, 1, 0, 0, 0, 1, 0},
                                  {0, 0, 0, 0, 1, 0, 0, 0},
                                  {0, 0, 0, 0, 0, 1, 0, 0}});

std::size_t max_bottom_weight(const Matrix& m, std::size_t s1) {
    std::size_t w = 0;
    for (std::size_t r = s1; r < m.rows(); ++r) w = std::max(w, oracle::chain_weight({m.row(r).begin(), m.row(r).end()}));
    return w;
}

}  // namespace

TEST(Admissible, Examples) {
    const auto split = BlockSplit::protect(1, 2);
    EXPECT_TRUE(is_admissible(Matrix(gf3, {{1, 2}, {0, 2}}), split));
    EXPECT_FALSE(is_admissible(Matrix(gf3, {{1, 0}, {1, 1}}), split));
    EXPECT_FALSE(is_admissible(Matrix(gf3, {{2, 0}, {0, 1}}), split));
    EXPECT_FALSE(is_admissible(Matrix(gf3, {{1, 1}, {0, 0}}), split));
    EXPECT_TRUE(is_admissible(Matrix(gf3, {{0, 1}, {1, 0}}), BlockSplit::protect(0, 2)));
    EXPECT_THROW(BlockSplit::protect(3, 2), Error);
}

TEST(TmReduced, Examples) {
    EXPECT_TRUE(is_tm_reduced(Matrix(gf2, {{0, 1, 0, 0}, {0, 0, 1, 0}})));
    EXPECT_TRUE(is_tm_reduced(Matrix(gf2, {{1, 1}, {0, 1}})));  // pivots after reordering
    EXPECT_FALSE(is_tm_reduced(Matrix(gf2, {{1, 1}, {1, 1}})));
    EXPECT_FALSE(is_tm_reduced(Matrix(gf3, {{2, 0}})));
    EXPECT_TRUE(is_tm_reduced(Matrix(gf3, 3, 3)));
}

TEST(TmReduced, GreedyAgreesWithPermutationSearch) {
    std::mt19937_64 rng(31);
    for (std::uint32_t q : {2u, 3u}) {
        const auto f = field_create(q);
        for (int i = 0; i < 500; ++i) {
            const auto m = oracle::structured_matrix(f, 1 + i % 5, 1 + i % 6, rng);
            ASSERT_EQ(is_tm_reduced(m), oracle::tm_reduced_by_permutation(m)) << m.shape_string();
        }
    }
}

TEST(TmReduced, RowOrderIsAPermutation) {
    const Matrix m(gf2, {{0, 1, 1}, {1, 0, 0}, {0, 0, 1}});
    const auto order = tm_reduced_row_order(m);
    ASSERT_TRUE(order);
    auto sorted = *order;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(TmReduce, OutputIsReducedAndEqualsMTimesTTranspose) {
    std::mt19937_64 rng(32);
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        const auto f = field_create(q);
        for (int i = 0; i < 250; ++i) {
            const auto m = i % 2 ? random_matrix(f, 1 + i % 6, 1 + i % 7, rng)
                                 : oracle::structured_matrix(f, 1 + i % 6, 1 + i % 7, rng);
            const auto red = tm_reduce(m);
            ASSERT_TRUE(is_tm_reduced(red.reduced));
            ASSERT_EQ(red.reduced, mat_mul(m, transpose(red.transform.matrix())));
        }
    }
}

TEST(TmReduce, EqualWeightRowsGiveTriangularPair) {
    // Both rows of weight 3: the lower one becomes e_3, the upper one e_k + l e_3.
    const auto red = tm_reduce(Matrix(gf3, {{1, 0, 2}, {2, 1, 1}}));
    EXPECT_EQ(red.reduced.submatrix(1, 0, 1, 3), Matrix(gf3, {{0, 0, 1}}));
    EXPECT_TRUE(shapes::bidimensional_type(red.reduced));
}

TEST(OneChain, WorkedExampleBlock) {
    const Matrix block = example_input.submatrix(0, 0, 4, 4);
    const auto form = one_chain_standard_form(block);
    EXPECT_EQ(form.weights, (std::vector<std::size_t>{2, 3}));
    EXPECT_EQ(form.reduced, Matrix(gf2, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}));
    EXPECT_TRUE(verify_witness(block, form.reduced, form.witness));
    EXPECT_THROW(one_chain_standard_form(block, CodeSpace(gf2, 2, 2)), Error);
}

TEST(OneChain, WeightsMatchAttainedWeights) {
    std::mt19937_64 rng(33);
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        const auto f = field_create(q);
        for (int i = 0; i < 125; ++i) {
            const std::size_t m = 1 + i % 6, k = 1 + (i / 6) % m;
            const auto g = random_matrix(f, k, m, rng);
            const auto form = one_chain_standard_form(g);
            const auto expected = oracle::attained_chain_weights(g);
            ASSERT_EQ(form.weights, expected);
            for (std::size_t r = 0; r < k; ++r) {
                const auto row = form.reduced.submatrix(r, 0, 1, m);
                if (r < expected.size())
                    ASSERT_EQ(row, canonical_vector(expected[r], m, f));
                else
                    ASSERT_TRUE(row.is_zero());
            }
        }
    }
}

TEST(BlockReduce, WorkedExampleSecondBlock) {
    // Second block of the worked example after the first block left two free rows.
    const Matrix block(gf2, {{0, 0, 1, 1}, {0, 1, 1, 0}, {1, 1, 0, 0}, {0, 1, 1, 1}});
    const auto red = block_reduce(block, BlockSplit::protect(2, 4));
    EXPECT_FALSE(shapes::lemma_shape_issue(red.reduced, 2, max_bottom_weight(block, 2)).has_value());
    EXPECT_TRUE(is_admissible(red.witness.row_transform, BlockSplit::protect(2, 4)));
    EXPECT_TRUE(verify_witness(block, red.reduced, red.witness));
}

TEST(BlockReduce, ShapeAndAdmissibility) {
    std::mt19937_64 rng(34);
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        const auto f = field_create(q);
        for (int i = 0; i < 250; ++i) {
            const std::size_t k = 1 + i % 6, m = 1 + (i / 3) % 6, s1 = (i / 7) % (k + 1);
            auto g = oracle::structured_matrix(f, k, m, rng);
            if (i % 5 == 0)
                for (std::size_t r = s1; r < k; ++r)
                    for (std::size_t c = 0; c < m; ++c) g.set(r, c, 0);
            const auto split = BlockSplit::protect(s1, k);
            const auto red = block_reduce(g, split);
            const auto issue = shapes::lemma_shape_issue(red.reduced, s1, max_bottom_weight(g, s1));
            ASSERT_FALSE(issue) << *issue;
            ASSERT_TRUE(has_block_reduced_shape(red.reduced, split));
            ASSERT_TRUE(is_admissible(red.witness.row_transform, split));
            ASSERT_TRUE(verify_witness(g, red.reduced, red.witness));
        }
    }
}

TEST(Triangular, WorkedExample) {
    const CodeSpace space(gf2, 4, 2);
    const auto form = nrt_triangular_form(example_input, space);
    EXPECT_EQ(form.reduced, example_output);
    EXPECT_TRUE(is_nrt_triangular(form.reduced, space));
    EXPECT_FALSE(is_nrt_triangular(example_input, space));
    EXPECT_TRUE(verify_witness(example_input, form.reduced, form.witness));
}

TEST(Triangular, CheckReportsFailures) {
    const CodeSpace space(gf2, 2, 2);
    const auto report = check_nrt_triangular(Matrix(gf2, {{1, 1, 0, 0}, {0, 0, 0, 1}}), space);
    EXPECT_FALSE(report.ok());
    EXPECT_FALSE(report.blocks[0].ok());
    const auto echelon = check_nrt_triangular(Matrix(gf2, {{1, 0, 0, 1}, {0, 0, 0, 0}}), space);
    EXPECT_EQ(echelon.trailing_zeros, (std::vector<std::size_t>{1, 1}));
    EXPECT_TRUE(echelon.ok());
    const auto rising = check_nrt_triangular(Matrix(gf2, {{1, 0, 0, 0}, {0, 0, 0, 0}}), space);
    EXPECT_EQ(rising.trailing_zeros, (std::vector<std::size_t>{1, 2}));
    EXPECT_FALSE(rising.block_echelon);
    EXPECT_THROW(check_nrt_triangular(Matrix(gf2, 1, 3), space), Error);
}

TEST(Triangular, AlreadyTriangularStaysTriangular) {
    const CodeSpace space(gf2, 4, 2);
    const auto form = nrt_triangular_form(example_output, space);
    EXPECT_TRUE(is_nrt_triangular(form.reduced, space));
    EXPECT_TRUE(verify_witness(example_output, form.reduced, form.witness));
}

TEST(Triangular, ZeroAndRankDeficientInputs) {
    const CodeSpace space(gf3, 3, 2);
    const Matrix zero(gf3, 2, 6);
    const auto form = nrt_triangular_form(zero, space);
    EXPECT_EQ(form.reduced, zero);
    EXPECT_TRUE(is_nrt_triangular(form.reduced, space));

    const Matrix dup(gf3, {{1, 2, 0, 0, 1, 1}, {2, 1, 0, 0, 2, 2}, {0, 0, 1, 1, 0, 0}});
    const auto red = nrt_triangular_form(dup, space);
    EXPECT_TRUE(is_nrt_triangular(red.reduced, space));
    EXPECT_TRUE(red.reduced.row_is_zero(2));
    EXPECT_EQ(rank(red.reduced), 2u);
}

TEST(Triangular, SingleCoordinateChainsGiveHammingForm) {
    std::mt19937_64 rng(35);
    for (std::uint32_t q : {2u, 3u}) {
        const auto f = field_create(q);
        for (int i = 0; i < 50; ++i) {
            const std::size_t n = 2 + i % 6, k = 1 + i % n;
            const CodeSpace space(f, 1, n);
            const auto g = random_matrix(f, k, n, rng);
            const auto form = nrt_triangular_form(g, space);
            ASSERT_TRUE(is_nrt_triangular(form.reduced, space));
            ASSERT_EQ(oracle::nrt_distribution(form.reduced, 1, n), oracle::hamming_distribution(g));
        }
    }
}

TEST(Triangular, RandomCodesSatisfyAllGuarantees) {
    std::mt19937_64 rng(36);
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        const auto f = field_create(q);
        for (int i = 0; i < 100; ++i) {
            const std::size_t k = 1 + i % 6, m = 1 + (i / 2) % 6, n = 1 + (i / 5) % 4;
            const CodeSpace space(f, m, n);
            const auto g = i % 3 ? random_matrix(f, k, m * n, rng) : oracle::structured_matrix(f, k, m * n, rng);
            const auto form = nrt_triangular_form(g, space, true);
            ASSERT_TRUE(is_nrt_triangular(form.reduced, space));
            ASSERT_TRUE(verify_witness(g, form.reduced, form.witness));
            ASSERT_EQ(rank(form.reduced), rank(g));
            if (code_size(q, rank(g)) <= (1u << 12)) {
                const auto a = weight_distribution(g, space), b = weight_distribution(form.reduced, space);
                ASSERT_EQ(a.counts, b.counts);
            }
            for (const auto& step : form.steps) {
                ASSERT_TRUE(step.row_transform.has_value());
                ASSERT_TRUE(is_admissible(*step.row_transform, BlockSplit::protect(step.s1, k)));
            }
        }
    }
}

TEST(Triangular, TwoChainShapes) {
    std::mt19937_64 rng(37);
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        const auto f = field_create(q);
        for (int i = 0; i < 50; ++i) {
            const std::size_t m = 1 + i % 6;
            const std::size_t k = 1 + i % std::min<std::size_t>(2 * m, 6);
            const auto g = shapes::random_full_rank(f, k, 2 * m, rng);
            ASSERT_TRUE(shapes::two_chain_form(nrt_triangular_form(g, CodeSpace(f, m, 2)).reduced, m));
        }
    }
}

TEST(Triangular, TwoRowTypesWheneverAttainable) {
    std::mt19937_64 rng(39);
    int attainable = 0;
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        const auto f = field_create(q);
        for (int i = 0; i < 50; ++i) {
            const std::size_t m = 1 + i % 5;
            const CodeSpace space(f, m, 2 + i % 3);
            const auto g = shapes::random_full_rank(f, 2, space.length(), rng);
            const auto red = nrt_triangular_form(g, space).reduced;
            bool typed = true;
            for (std::size_t j = 0; j < space.n; ++j) typed = typed && shapes::bidimensional_type(shapes::block_of(red, m, j));
            const bool possible = shapes::two_row_types_attainable(g, m);
            ASSERT_EQ(typed, possible) << "q=" << q << " instance " << i;
            attainable += possible;
        }
    }
    EXPECT_GT(attainable, 0);
}

TEST(Triangular, TwoRowTypesCanBeUnattainable) {
    // Three single-coordinate chains whose kernels are three distinct lines:
    // every basis leaves some chain with two equal nonzero rows.
    const Matrix g(gf2, {{1, 0, 1}, {0, 1, 1}});
    EXPECT_FALSE(shapes::two_row_types_attainable(g, 1));
    const CodeSpace space(gf2, 1, 3);
    const auto red = nrt_triangular_form(g, space).reduced;
    EXPECT_TRUE(is_nrt_triangular(red, space));
    bool typed = true;
    for (std::size_t j = 0; j < 3; ++j) typed = typed && shapes::bidimensional_type(shapes::block_of(red, 1, j));
    EXPECT_FALSE(typed);
}

TEST(Triangular, Deterministic) {
    std::mt19937_64 rng(38);
    const CodeSpace space(field_create(4), 3, 3);
    const auto g = random_matrix(space.field, 4, 9, rng);
    const auto a = nrt_triangular_form(g, space), b = nrt_triangular_form(g, space);
    EXPECT_EQ(a.reduced, b.reduced);
    EXPECT_EQ(a.witness.row_transform, b.witness.row_transform);
    EXPECT_EQ(a.witness.iso, b.witness.iso);
}
