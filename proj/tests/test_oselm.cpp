#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "prolearn/oselm.hpp"
#include "helpers.hpp"

using namespace prolearn;

namespace {

// Residual of a +1/-1 target fit on one labeled set.
double fit_residual(const OnlineState& state, const Matrix& xs,
                    const std::vector<std::string>& labels) {
    Matrix h = state.projection.hidden_matrix(xs);
    Matrix t = encode_targets(labels, state.classes);
    return frobenius_norm(subtract(matmul(h, state.beta), t));
}

Matrix slice_rows(const Matrix& xs, std::size_t begin, std::size_t end) {
    Matrix out(end - begin, xs.cols());
    for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = 0; j < xs.cols(); ++j) out(i - begin, j) = xs(i, j);
    return out;
}

std::vector<std::string> slice_labels(const std::vector<std::string>& labels, std::size_t begin,
                                      std::size_t end) {
    return {labels.begin() + begin, labels.begin() + end};
}

} // namespace

TEST_CASE("initialization matches the batch solution on the same block") {
    const std::size_t n0 = 30, dim = 4, hidden = 10;
    auto data = testutil::make_labeled(n0, dim, {"x", "y", "z"}, 13);
    RandomProjection proj(dim, hidden, Activation::Sigmoid, 14);
    Matrix xs = rows_to_matrix(data.xs);

    OnlineState state = init_online(proj, xs, data.labels);
    BatchModel batch = train_batch(proj, xs, data.labels);

    CHECK(state.classes == batch.classes);
    CHECK(max_abs_diff(state.beta, batch.beta) < 1e-8);
    CHECK(state.samples_seen == n0);
    CHECK(state.weight_updates == n0 * state.classes.size());
    CHECK(state.last_h.rows() == n0);
    CHECK(state.last_h.cols() == hidden);
}

TEST_CASE("a square initial block is fitted with zero residual") {
    // dim 8 keeps the square hidden matrix comfortably non-singular.
    const std::size_t n0 = 12, dim = 8;
    auto data = testutil::make_labeled(n0, dim, {"x", "y"}, 19);
    RandomProjection proj(dim, n0, Activation::Sigmoid, 20);
    OnlineState state = init_online(proj, rows_to_matrix(data.xs), data.labels);
    CHECK(fit_residual(state, rows_to_matrix(data.xs), data.labels) < 1e-6);
}

TEST_CASE("initialization preconditions") {
    RandomProjection proj(3, 10, Activation::Sigmoid, 2);
    SECTION("block smaller than the hidden layer") {
        auto data = testutil::make_labeled(6, 3, {"x", "y"}, 3);
        CHECK_THROWS_AS(init_online(proj, rows_to_matrix(data.xs), data.labels),
                        InsufficientDataError);
    }
    SECTION("single-class block") {
        std::mt19937_64 rng(4);
        auto xs = testutil::random_rows(12, 3, rng);
        std::vector<std::string> labels(12, "only");
        CHECK_THROWS_AS(init_online(proj, rows_to_matrix(xs), labels), InsufficientDataError);
    }
    SECTION("label count mismatch") {
        std::mt19937_64 rng(5);
        auto xs = testutil::random_rows(12, 3, rng);
        std::vector<std::string> labels(7, "x");
        CHECK_THROWS_AS(init_online(proj, rows_to_matrix(xs), labels), DimensionError);
    }
}

TEST_CASE("a single-sample update shrinks that sample's residual") {
    const std::size_t dim = 4, hidden = 10;
    auto data = testutil::make_labeled(30, dim, {"x", "y"}, 23);
    RandomProjection proj(dim, hidden, Activation::Sigmoid, 24);
    OnlineState state = init_online(proj, rows_to_matrix(data.xs), data.labels);

    std::mt19937_64 rng(25);
    Matrix one = rows_to_matrix(testutil::random_rows(1, dim, rng));
    std::vector<std::string> l1{"y"};

    double before = fit_residual(state, one, l1);
    update_chunk(state, one, l1);
    double after = fit_residual(state, one, l1);
    CHECK(after < before);
    CHECK(state.samples_seen == 31);
}

TEST_CASE("any chunking of the stream reaches the batch solution") {
    const std::size_t n = 120, dim = 4, hidden = 10, n0 = 30;
    auto data = testutil::make_labeled(n, dim, {"a", "b", "c"}, 41);
    RandomProjection proj(dim, hidden, Activation::Sigmoid, 42);
    Matrix xs = rows_to_matrix(data.xs);
    BatchModel oracle = train_batch(proj, xs, data.labels);

    auto run_chunked = [&](const std::vector<std::size_t>& cuts) {
        OnlineState state =
            init_online(proj, slice_rows(xs, 0, n0), slice_labels(data.labels, 0, n0));
        std::size_t at = n0;
        for (std::size_t cut : cuts) {
            update_chunk(state, slice_rows(xs, at, cut), slice_labels(data.labels, at, cut));
            at = cut;
        }
        return state;
    };

    SECTION("one sample at a time") {
        std::vector<std::size_t> cuts;
        for (std::size_t i = n0 + 1; i <= n; ++i) cuts.push_back(i);
        OnlineState state = run_chunked(cuts);
        CHECK(max_abs_diff(state.beta, oracle.beta) < 1e-6);
        CHECK(state.weight_updates == n * state.classes.size());
    }
    SECTION("one big chunk") {
        OnlineState state = run_chunked({n});
        CHECK(max_abs_diff(state.beta, oracle.beta) < 1e-6);
        CHECK(state.weight_updates == n * state.classes.size());
    }
    SECTION("random chunk boundaries") {
        std::mt19937_64 rng(43);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<std::size_t> cuts;
            std::size_t at = n0;
            while (at < n) {
                at = std::min(n, at + 1 + uniform_index(rng, 25));
                cuts.push_back(at);
            }
            OnlineState state = run_chunked(cuts);
            CHECK(max_abs_diff(state.beta, oracle.beta) < 1e-6);
        }
    }
}

TEST_CASE("the tracked inverse Gram matrix stays consistent and symmetric") {
    const std::size_t n = 60, dim = 3, hidden = 8, n0 = 20;
    auto data = testutil::make_labeled(n, dim, {"a", "b"}, 51);
    RandomProjection proj(dim, hidden, Activation::Sigmoid, 52);
    Matrix xs = rows_to_matrix(data.xs);
    Matrix h_all = proj.hidden_matrix(xs);

    OnlineState state =
        init_online(proj, slice_rows(xs, 0, n0), slice_labels(data.labels, 0, n0));

    auto check_m = [&](std::size_t upto) {
        Matrix h_seen = slice_rows(h_all, 0, upto);
        Matrix direct = invert(matmul(transpose(h_seen), h_seen));
        CHECK(max_abs_diff(state.m, direct) < 1e-6);
        CHECK(max_abs_diff(state.m, transpose(state.m)) < 1e-8);
    };

    check_m(n0);
    std::size_t at = n0;
    for (std::size_t chunk : {1u, 7u, 12u, 20u}) {
        update_chunk(state, slice_rows(xs, at, at + chunk),
                     slice_labels(data.labels, at, at + chunk));
        at += chunk;
        check_m(at);
    }
}

TEST_CASE("chunk updates enforce the registry and reject empty chunks") {
    auto data = testutil::make_labeled(30, 3, {"x", "y"}, 61);
    RandomProjection proj(3, 10, Activation::Sigmoid, 62);
    OnlineState state = init_online(proj, rows_to_matrix(data.xs), data.labels);

    std::mt19937_64 rng(63);
    auto xs = testutil::random_rows(2, 3, rng);
    SECTION("unseen label") {
        CHECK_THROWS_AS(update_chunk(state, xs, {"x", "novel"}), UnknownClassError);
    }
    SECTION("empty chunk") {
        CHECK_THROWS_AS(update_chunk(state, std::vector<std::vector<double>>{},
                                     std::vector<std::string>{}),
                        EmptyChunkError);
    }
    SECTION("label count mismatch") {
        CHECK_THROWS_AS(update_chunk(state, xs, {"x"}), DimensionError);
    }
}

TEST_CASE("bookkeeping fields track the stream") {
    const std::size_t dim = 3, hidden = 8;
    auto data = testutil::make_labeled(40, dim, {"a", "b"}, 71);
    RandomProjection proj(dim, hidden, Activation::Sigmoid, 72);
    Matrix xs = rows_to_matrix(data.xs);

    OnlineState state =
        init_online(proj, slice_rows(xs, 0, 20), slice_labels(data.labels, 0, 20));
    std::uint64_t updates_before = state.weight_updates;

    update_chunk(state, slice_rows(xs, 20, 27), slice_labels(data.labels, 20, 27));
    CHECK(state.samples_seen == 27);
    CHECK(state.last_h.rows() == 7);
    CHECK(state.weight_updates == updates_before + 7 * state.classes.size());
    CHECK(max_abs_diff(state.last_h,
                       proj.hidden_matrix(slice_rows(xs, 20, 27))) == 0.0);

    update_chunk(state, slice_rows(xs, 27, 40), slice_labels(data.labels, 27, 40));
    CHECK(state.samples_seen == 40);
    CHECK(state.last_h.rows() == 13);
    // With a static registry the counter lands on total samples x classes,
    // matching the fixed-model accounting column.
    CHECK(state.weight_updates == 40 * state.classes.size());
}
