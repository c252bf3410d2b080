#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixlab/parallel.hpp"
#include "mixlab/slide.hpp"

using namespace mixlab;

TEST_CASE("strip shifts and rotations have the right periods") {
    const int n = 3;
    SlideState s = SlideState::initial(n);
    SlideState t = s;
    for (int k = 0; k < 2 * n; ++k) t = apply_slide(t, SlideMove::strip(1, 3));
    CHECK(t == s);
    t = apply_slide(apply_slide(s, SlideMove::rotate(2)), SlideMove::rotate(2));
    CHECK(t == s);
    t = apply_slide(s, SlideMove::rotate(1));
    CHECK(t.count() == 2 * n * n);
}

TEST_CASE("slide validation") {
    CHECK_NOTHROW(validate_slide(2, SlideMove::strip(0, 0)));
    CHECK_NOTHROW(validate_slide(2, SlideMove::strip(3, 5)));
    CHECK_THROWS_AS(validate_slide(2, SlideMove::strip(0, 4)), std::invalid_argument);
    CHECK_THROWS_AS(validate_slide(2, SlideMove::strip(4, 4)), std::invalid_argument);
    CHECK_THROWS_AS(validate_slide(2, SlideMove::rotate(0)), std::invalid_argument);
}

TEST_CASE("inverse words") {
    const int n = 2;
    SlideState s = SlideState::initial(n);
    s = apply_slide(s, SlideMove::rotate(1));
    s = apply_slide(s, SlideMove::strip(1, 2));
    for (const auto& m : slide_generators(n)) {
        SlideState t = apply_slide(s, m);
        for (const auto& w : inverse_moves(n, m)) t = apply_slide(t, w);
        CHECK(t == s);
    }
}

TEST_CASE("one strip shift solves the smallest torus") {
    SlideState a = SlideState::initial(1);
    CHECK(a.at(1, 1));
    CHECK(a.at(1, 0));
    CHECK(apply_slide(a, SlideMove::strip(0, 0)) == SlideState::target(1));
}

TEST_CASE("breadth-first search") {
    auto a0 = SlideState::initial(1), a1 = SlideState::target(1);
    CHECK(bfs_min_moves(1, a0, a0, 5).distance == 0);
    auto r = bfs_min_moves(1, a0, a1, 5);
    REQUIRE(r.distance.has_value());
    CHECK(*r.distance == 1);
    CHECK(bfs_min_moves(1, a1, a0, 5).distance == 1);
    CHECK_THROWS_AS(bfs_min_moves(3, SlideState::initial(3), SlideState::target(3), 5), std::invalid_argument);
}

TEST_CASE("breadth-first search at n = 2") {
    const auto a0 = SlideState::initial(2), a1 = SlideState::target(2);
    auto r = bfs_min_moves(2, a0, a1, 40);
    REQUIRE(r.distance.has_value());
    CHECK(*r.distance == 6);
    CHECK(r.path.size() == 6);
    SlideState s = a0;
    for (const auto& m : r.path) s = apply_slide(s, m);
    CHECK(canonical_key(s) == canonical_key(a1));
    CHECK(bfs_min_moves(2, a1, a0, 40).distance == 6);
    CHECK_FALSE(bfs_min_moves(2, a0, a1, 5).distance.has_value());
    set_thread_count(1);
    auto again = bfs_min_moves(2, a0, a1, 40);
    set_thread_count(0);
    CHECK(again.path == r.path);
}

TEST_CASE("canonical keys ignore translations only") {
    auto a = SlideState::initial(2);
    SlideState b(2);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) b.set(x + 1, y + 3, a.at(x, y));
    CHECK(canonical_key(a) == canonical_key(b));
    CHECK(canonical_key(a) != canonical_key(SlideState::target(2)));
}

TEST_CASE("greedy strategy") {
    auto g0 = greedy_mix(4, 0);
    CHECK(g0.state == SlideState::initial(4));
    CHECK(g0.moves == 0);
    auto g8 = greedy_mix(8, 1u << 20);
    CHECK(g8.reached_target);
    CHECK(g8.moves == 49);
    CHECK(g8.state == SlideState::target(8));
    CHECK(g8.state.count() == 2 * 8 * 8);
    SlideState s = SlideState::initial(8);
    for (const auto& m : g8.path) s = apply_slide(s, m);
    CHECK(s == g8.state);
    auto partial = greedy_mix(8, 10);
    CHECK(partial.moves == 10);
    CHECK(partial.state.count() == 128);
    CHECK_THROWS_AS(greedy_mix(6, 10), std::invalid_argument);
}

TEST_CASE("greedy move counts grow like n log n") {
    std::size_t prev = 0;
    for (int n : {4, 8, 16, 32, 64}) {
        auto g = greedy_mix(n, 1u << 24);
        CHECK(g.reached_target);
        CHECK(g.moves > prev);
        CHECK(static_cast<double>(g.moves) <= 2.0 * n * std::log2(n) + 4);
        prev = g.moves;
    }
}
