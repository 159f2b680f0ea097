#include <catch2/catch_amalgamated.hpp>

#include <pscat/orbit.hpp>
#include <pscat/orbit_cache.hpp>

#include <cstdio>
#include <map>
#include <set>

using namespace pscat;

namespace {

// Independent oracle: scan every canonical integer matrix inside the
// entry bounds  |c z0 + d|^2 <= e^R  and  |a - c x0|^2 + c^2 y0^2 <= e^R
// (the latter is the same bound applied to the inverse), accepting those
// with determinant one and displacement <= R.
std::vector<OrbitEntry> brute_force_orbits(const Point& z0, double R) {
    std::vector<OrbitEntry> out;
    const double nb = std::exp(R) * (1.0 + 1e-9);
    const double x0 = z0.x, y0 = z0.y;
    const auto bmax = static_cast<std::int64_t>(
                          std::floor(2.0 * y0 * std::sinh(0.5 * R))) + 1;
    for (std::int64_t b = -bmax; b <= bmax; ++b) {
        if (b == 0) continue;
        const double l = hyp_distance(z0, Point{x0 + double(b), y0});
        if (l <= R && l > 1e-12) out.push_back({GroupElement{1, b, 0, 1}, l});
    }
    const auto cmax =
        static_cast<std::int64_t>(std::floor(std::sqrt(nb) / y0)) + 1;
    for (std::int64_t c = 1; c <= cmax; ++c) {
        const double rem = nb - double(c) * double(c) * y0 * y0;
        if (rem < 0.0) continue;
        const double wd = std::sqrt(rem);
        const auto dlo = static_cast<std::int64_t>(std::ceil(-c * x0 - wd)) - 1;
        const auto dhi = static_cast<std::int64_t>(std::floor(-c * x0 + wd)) + 1;
        const auto alo = static_cast<std::int64_t>(std::ceil(c * x0 - wd)) - 1;
        const auto ahi = static_cast<std::int64_t>(std::floor(c * x0 + wd)) + 1;
        for (std::int64_t d = dlo; d <= dhi; ++d)
            for (std::int64_t a = alo; a <= ahi; ++a) {
                if ((a * d - 1) % c != 0) continue;
                const std::int64_t b = (a * d - 1) / c;
                const GroupElement g{a, b, c, d};
                const double l = hyp_distance(z0, mobius_apply(g, z0));
                if (l <= R && l > 1e-12) out.push_back({g, l});
            }
    }
    std::sort(out.begin(), out.end(), [](const OrbitEntry& l, const OrbitEntry& r) {
        if (l.length != r.length) return l.length < r.length;
        return l.g < r.g;
    });
    return out;
}

bool same_tables(const std::vector<OrbitEntry>& a,
                 const std::vector<OrbitEntry>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!(a[i].g == b[i].g)) return false;
        if (std::abs(a[i].length - b[i].length) > 1e-12) return false;
    }
    return true;
}

} // namespace

TEST_CASE("stabilizer orders at elliptic and generic points") {
    CHECK(stabilizer(Point{0.0, 2.0}).second == 1);
    CHECK(stabilizer(Point{0.0, 1.0}).second == 2);
    CHECK(stabilizer(Point{0.5, std::sqrt(3.0) / 2.0}).second == 3);
    // the order-2 element at i is the inversion
    const auto st = stabilizer(Point{0.0, 1.0}).first;
    CHECK(std::find(st.begin(), st.end(), GroupElement{0, -1, 1, 0}) != st.end());
}

TEST_CASE("enumerate_orbits matches the brute-force oracle") {
    const Point pts[] = {Point{0.0, 2.0}, Point{0.0, 1.0},
                         reduce_fund_domain(Point{1.7, 1.3}).point};
    for (const auto& z0 : pts) {
        for (double R : {2.0, 4.0, 6.0}) {
            const auto got = enumerate_orbits(z0, R);
            const auto want = brute_force_orbits(z0, R);
            INFO("z0=(" << z0.x << "," << z0.y << ") R=" << R
                        << " got=" << got.entries.size()
                        << " want=" << want.size());
            REQUIRE(same_tables(got.entries, want));
        }
    }
}

TEST_CASE("orbit table small cases and invariants") {
    // below the shortest displacement: empty
    const auto small = enumerate_orbits(Point{0.0, 2.0}, 0.1);
    CHECK(small.entries.empty());
    CHECK(small.stabilizer_order == 1);

    const auto t = enumerate_orbits(Point{0.0, 2.0}, 3.0);
    REQUIRE(!t.entries.empty());
    // shortest displacement at 2i is the unit translation (T and its
    // inverse share the length; lexicographic tie-break puts T^{-1} first)
    CHECK(t.entries[0].g == GroupElement{1, -1, 0, 1});
    CHECK(t.entries[1].g == GroupElement{1, 1, 0, 1});
    CHECK_THAT(t.entries.front().length,
               Catch::Matchers::WithinAbs(std::acosh(1.0 + 1.0 / 8.0), 1e-13));

    // closure under inversion with equal length
    std::map<GroupElement, double> by_elem;
    for (const auto& e : t.entries) by_elem[e.g] = e.length;
    for (const auto& e : t.entries) {
        const auto inv = canonicalize(e.g.inverse());
        REQUIRE(by_elem.count(inv) == 1);
        REQUIRE(std::abs(by_elem[inv] - e.length) < 1e-12);
    }

    // monotonicity: table(R1) subset of table(R2)
    const auto t2 = enumerate_orbits(Point{0.0, 2.0}, 4.0);
    std::set<GroupElement> big;
    for (const auto& e : t2.entries) big.insert(e.g);
    for (const auto& e : t.entries) REQUIRE(big.count(e.g) == 1);

    // growth sanity: nondecreasing counts, bounded ratio
    size_t prev = 1;
    for (double R = 1.0; R <= 6.0; R += 1.0) {
        const size_t n = enumerate_orbits(Point{0.0, 2.0}, R).entries.size();
        REQUIRE(n + 1 >= prev);
        if (prev > 8) REQUIRE(double(n) / double(prev) < 2.0 * std::exp(1.0));
        prev = n ? n : 1;
    }

    // packing bound dominates the actual count
    CHECK(t2.count_bound(4.0) >= double(t2.entries.size()));

    CHECK_THROWS_AS(enumerate_orbits(Point{0.0, 2.0}, 6.0, 10), capacity_error);
}

TEST_CASE("orbit cache round trip and cross checks") {
    const auto t = enumerate_orbits(Point{0.0, 2.0}, 4.0);
    const std::string path = "orbit_cache_test.json";
    save_orbit_table(t, path);
    const auto back = load_orbit_table(path);
    CHECK(back.radius == t.radius);
    CHECK(back.stabilizer_order == t.stabilizer_order);
    REQUIRE(same_tables(back.entries, t.entries));

    // identical bytes on re-save
    save_orbit_table(back, "orbit_cache_test2.json");
    std::ifstream f1(path), f2("orbit_cache_test2.json");
    const std::string s1((std::istreambuf_iterator<char>(f1)), {});
    const std::string s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);

    // a tampered length fails the load-time cross-check
    auto j = orbit_table_to_json(t);
    j["entries"][0][4] = j["entries"][0][4].get<double>() + 1e-6;
    std::ofstream bad("orbit_cache_bad.json");
    bad << j.dump();
    bad.close();
    CHECK_THROWS(load_orbit_table("orbit_cache_bad.json"));
    std::remove(path.c_str());
    std::remove("orbit_cache_test2.json");
    std::remove("orbit_cache_bad.json");
}
