#include <doctest.h>

#include "oracles.hpp"

#include "sepscope/errors.hpp"
#include "sepscope/maxls.hpp"
#include "sepscope/measures.hpp"

#include <set>

using namespace sepscope;

namespace {

Matrix rows2(std::initializer_list<std::pair<double, double>> pts) {
    Matrix m(static_cast<Index>(pts.size()), 2);
    Index k = 0;
    for (auto [x, y] : pts) m.row(k++) << x, y;
    return m;
}

Vector e1() {
    Vector v(2);
    v << 1, 0;
    return v;
}

}  // namespace

TEST_CASE("small example") {
    const auto t = BinaryTask::from_sets(rows2({{0, 0}, {3, 0}, {4, 0}}), rows2({{1, 0}}));
    const auto g = violation_edges(t, e1());
    CHECK(g.major_side == 1);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0] == std::pair<Index, Index>{0, 0});
    CHECK(g.a_vertices == std::vector<Index>{0});
    CHECK(g.b_vertices == std::vector<Index>{0});

    const auto r = greedy_maxls(t, e1());
    REQUIRE(r.removed.size() == 1);
    CHECK(r.removed[0].set == SetSide::a);  // larger class loses the tie
    CHECK(r.removed[0].index == 0);
    CHECK(r.removed[0].degree == 1);
    CHECK(r.kept_a.size() == 2);
    CHECK(r.kept_b.size() == 1);
    CHECK_FALSE(r.empty_side);
    CHECK(verify_separable(kept_task(t, r), e1()));
    CHECK_FALSE(verify_separable(t, e1()));
}

TEST_CASE("separable task has no violations") {
    const auto t = BinaryTask::from_sets(rows2({{2, 0}, {3, 1}}), rows2({{0, 0}, {-1, 5}}));
    CHECK(violation_edges(t, e1()).edges.empty());
    const auto r = greedy_maxls(t, e1());
    CHECK(r.removed.empty());
    CHECK(r.kept_a.size() == 2);
    CHECK(r.kept_b.size() == 2);
}

TEST_CASE("boundary pairs count as violations") {
    const auto t = BinaryTask::from_sets(rows2({{1, 0}, {2, 0}}), rows2({{1, 3}}));
    const auto g = violation_edges(t, e1());
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0] == std::pair<Index, Index>{0, 0});
    CHECK_FALSE(verify_separable(t, e1()));
}

TEST_CASE("major side ties go positive") {
    const auto t = BinaryTask::from_sets(rows2({{0, 0}, {1, 0}}), rows2({{0.5, 0}}));
    const auto g = violation_edges(t, e1());
    CHECK(g.major_side == 1);
    CHECK(g.edges == std::vector<std::pair<Index, Index>>{{0, 0}});
}

TEST_CASE("negative major side") {
    const auto t = BinaryTask::from_sets(rows2({{0, 0}, {1, 0}, {5, 0}}), rows2({{3, 0}, {4, 0}}));
    const auto g = violation_edges(t, e1());
    CHECK(g.major_side == -1);
    CHECK(g.edges == std::vector<std::pair<Index, Index>>{{2, 0}, {2, 1}});
    const auto r = greedy_maxls(g, 3, 2);
    CHECK(r.removed.size() == 1);
    CHECK(r.removed[0].index == 2);
    CHECK(r.removed[0].degree == 2);
}

TEST_CASE("all-zero projections") {
    const auto t = BinaryTask::from_sets(rows2({{0, 1}}), rows2({{0, 2}}));
    CHECK_THROWS_AS(violation_edges(t, e1()), DegenerateError);
}

TEST_CASE("edges equal brute-force enumeration") {
    std::mt19937_64 gen(31);
    for (int k = 0; k < 100; ++k) {
        const auto t = oracle::random_task(gen, 1 + k % 13, 1 + k % 9, 1 + k % 3, 0.3);
        Vector w = oracle::random_matrix(gen, t.dim(), 1).col(0);
        const auto p = project(t, w);
        const double tol = k % 5 == 0 ? 0.2 : default_zero_tol(as_span(p.alpha), as_span(p.beta));
        std::uint64_t pos = 0, neg = 0;
        for (Index i = 0; i < t.i_count(); ++i)
            for (Index j = 0; j < t.j_count(); ++j) {
                const double d = p.alpha(i) - p.beta(j);
                pos += d > tol;
                neg += d < -tol;
            }
        if (pos + neg == 0) {
            CHECK_THROWS_AS(violation_edges(t, w, tol), DegenerateError);
            continue;
        }
        const auto g = violation_edges(t, w, tol);
        const int major = pos >= neg ? 1 : -1;
        CHECK(g.major_side == major);
        std::vector<std::pair<Index, Index>> expect;
        std::vector<Index> deg_a(static_cast<std::size_t>(t.i_count())), deg_b(static_cast<std::size_t>(t.j_count()));
        for (Index i = 0; i < t.i_count(); ++i)
            for (Index j = 0; j < t.j_count(); ++j) {
                const double d = p.alpha(i) - p.beta(j);
                const bool strict_major = major > 0 ? d > tol : d < -tol;
                if (!strict_major) {
                    expect.emplace_back(i, j);
                    ++deg_a[static_cast<std::size_t>(i)];
                    ++deg_b[static_cast<std::size_t>(j)];
                }
            }
        CHECK(g.edges == expect);
        CHECK(g.a_degree == deg_a);
        CHECK(g.b_degree == deg_b);
    }
}

TEST_CASE("greedy output is separable, deterministic and consistent") {
    std::mt19937_64 gen(32);
    for (int k = 0; k < 200; ++k) {
        const auto t = oracle::random_task(gen, 1 + k % 17, 1 + k % 11, 1 + k % 4, 0.5);
        const Vector w = oracle::random_matrix(gen, t.dim(), 1).col(0);
        const auto p = project(t, w);
        const double tol = default_zero_tol(as_span(p.alpha), as_span(p.beta));
        const auto r = greedy_maxls(t, w, tol);
        const auto again = greedy_maxls(t, w, tol);
        CHECK(r.kept_a == again.kept_a);
        CHECK(r.removed.size() == again.removed.size());
        const auto kept = static_cast<Index>(r.kept_a.size() + r.kept_b.size());
        CHECK(kept == t.i_count() + t.j_count() - static_cast<Index>(r.removed.size()));
        CHECK(r.empty_side == (r.kept_a.empty() || r.kept_b.empty()));
        const auto sub = kept_task(t, r);
        CHECK(verify_separable(sub, w, tol));
        if (!r.empty_side) {
            const auto s = pair_stats(sub, w, tol);
            CHECK(ls0_at(sub, w, tol).value == 1.0);
            CHECK((r.major_side > 0 ? s.pos_count : s.neg_count) == s.total());
        }
        std::set<Index> removed_a, removed_b;
        for (const auto& rm : r.removed) {
            CHECK(rm.degree >= 1);
            (rm.set == SetSide::a ? removed_a : removed_b).insert(rm.index);
        }
        CHECK(removed_a.size() + r.kept_a.size() == static_cast<std::size_t>(t.i_count()));
        CHECK(removed_b.size() + r.kept_b.size() == static_cast<std::size_t>(t.j_count()));
    }
}

TEST_CASE("greedy is close to the fixed-direction optimum") {
    std::mt19937_64 gen(33);
    for (int k = 0; k < 100; ++k) {
        const Index i = 2 + k % 4, j = 2 + (k / 4) % 4;
        const auto t = oracle::random_task(gen, i, j, 2, 0.6);
        const auto w = approx_weight(t);
        const auto p = project(t, w.omega());
        const double tol = default_zero_tol(as_span(p.alpha), as_span(p.beta));
        const auto r = greedy_maxls(t, w.omega(), tol);
        const Index best = oracle::max_kept_along(p.alpha, p.beta, tol);
        CHECK(static_cast<double>(r.kept_a.size() + r.kept_b.size()) >= 0.8 * static_cast<double>(best));
    }
}
