#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <lcsl/bn.hpp>
#include <lcsl/bn_json.hpp>

#include "fixtures.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

static lcsl::Bn two_coin_bn() {
    lcsl::Bn bn;
    bn.names = {"u", "v"};
    bn.arities = {2, 2};
    bn.cpt_parents = {{}, {0}};
    bn.cpt = {{{0.5, 0.5}}, {{0.9, 0.1}, {0.2, 0.8}}};
    lcsl::finalize_bn(bn);
    return bn;
}

TEST_CASE("finalize rejects malformed networks", "[bn]") {
    lcsl::Bn bn = two_coin_bn();

    lcsl::Bn dangling = bn;
    dangling.cpt_parents[1] = {7};
    CHECK_THROWS_WITH(lcsl::finalize_bn(dangling), ContainsSubstring("dangling parent"));

    lcsl::Bn cyclic = bn;
    cyclic.cpt_parents[0] = {1};
    cyclic.cpt[0] = {{0.5, 0.5}, {0.5, 0.5}};
    CHECK_THROWS_WITH(lcsl::finalize_bn(cyclic), ContainsSubstring("not a DAG"));

    lcsl::Bn rows = bn;
    rows.cpt[1].pop_back();
    CHECK_THROWS_WITH(lcsl::finalize_bn(rows), ContainsSubstring("wrong row count"));

    lcsl::Bn len = bn;
    len.cpt[1][0] = {1.0};
    CHECK_THROWS_WITH(lcsl::finalize_bn(len), ContainsSubstring("wrong row length"));

    lcsl::Bn neg = bn;
    neg.cpt[1][0] = {-0.1, 1.1};
    CHECK_THROWS_WITH(lcsl::finalize_bn(neg), ContainsSubstring("negative entry"));

    lcsl::Bn sum = bn;
    sum.cpt[1][0] = {0.3, 0.8};
    CHECK_THROWS_WITH(lcsl::finalize_bn(sum), ContainsSubstring("sums to"));
}

TEST_CASE("finalize renormalizes rows within tolerance", "[bn]") {
    lcsl::Bn bn = two_coin_bn();
    bn.cpt[1][0] = {0.3, 0.7000001};
    lcsl::finalize_bn(bn);
    CHECK_THAT(bn.cpt[1][0][0] + bn.cpt[1][0][1], WithinAbs(1.0, 1e-15));
}

TEST_CASE("config index is mixed radix over the listed parents", "[bn]") {
    lcsl::Bn bn;
    bn.names = {"p", "q", "r"};
    bn.arities = {2, 3, 2};
    bn.cpt_parents = {{}, {}, {0, 1}};
    bn.cpt = {{{0.5, 0.5}},
              {{0.4, 0.3, 0.3}},
              {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}};
    lcsl::finalize_bn(bn);
    CHECK(bn.num_configs(2) == 6);
    CHECK(bn.config_index(2, {0, 0, 0}) == 0);
    CHECK(bn.config_index(2, {0, 2, 0}) == 2);
    CHECK(bn.config_index(2, {1, 2, 0}) == 5);
}

TEST_CASE("sampling is deterministic in the seed", "[bn]") {
    lcsl::Bn bn = fixtures::golden_net13();
    lcsl::Dataset a = lcsl::sample(bn, 100, 42);
    lcsl::Dataset b = lcsl::sample(bn, 100, 42);
    CHECK(a.columns == b.columns);
    CHECK(a.names == bn.names);
    CHECK(a.arities == bn.arities);
    CHECK(a.n == 100);
    lcsl::Dataset c = lcsl::sample(bn, 100, 43);
    CHECK(a.columns != c.columns);
}

TEST_CASE("sampling tracks the conditional tables", "[bn]") {
    lcsl::Bn bn = fixtures::chain4_bn();
    lcsl::Dataset d = lcsl::sample(bn, 5000, 7);
    int t1 = 0, a1_given_t1 = 0;
    for (int r = 0; r < d.n; ++r)
        if (d.col(0)[r] == 1) {
            ++t1;
            a1_given_t1 += d.col(1)[r];
        }
    REQUIRE(t1 > 2000);
    CHECK_THAT(static_cast<double>(t1) / d.n, WithinAbs(0.5, 0.03));
    CHECK_THAT(static_cast<double>(a1_given_t1) / t1, WithinAbs(0.8, 0.05));
}

TEST_CASE("network json round trip", "[bn]") {
    lcsl::Bn bn = fixtures::golden_net13();
    std::ostringstream out;
    lcsl::save_bn(bn, out);
    std::istringstream in(out.str());
    lcsl::Bn back = lcsl::load_bn(in);
    CHECK(back.names == bn.names);
    CHECK(back.arities == bn.arities);
    CHECK(back.cpt_parents == bn.cpt_parents);
    REQUIRE(back.cpt.size() == bn.cpt.size());
    for (int v = 0; v < bn.num_vars(); ++v)
        for (std::size_t c = 0; c < bn.cpt[v].size(); ++c)
            for (std::size_t k = 0; k < bn.cpt[v][c].size(); ++k)
                CHECK_THAT(back.cpt[v][c][k], WithinAbs(bn.cpt[v][c][k], 1e-12));
    for (int v = 0; v < bn.num_vars(); ++v) {
        CHECK(back.dag.parents(v) == bn.dag.parents(v));
        CHECK(back.dag.children(v) == bn.dag.children(v));
    }
}

TEST_CASE("network json rejects bad schemas", "[bn]") {
    std::istringstream no_vars("{}");
    CHECK_THROWS_WITH(lcsl::load_bn(no_vars), ContainsSubstring("missing variables array"));

    std::istringstream dangling(
        R"({"variables":[{"name":"A","arity":2,"parents":["Z"],"cpt":[[0.5,0.5]]}]})");
    CHECK_THROWS_WITH(lcsl::load_bn(dangling), ContainsSubstring("dangling parent Z"));

    auto path = std::filesystem::temp_directory_path() / "lcsl_bad_network.json";
    {
        std::ofstream f(path);
        f << "{not json";
    }
    CHECK_THROWS_WITH(lcsl::load_bn(path.string()), ContainsSubstring("network:"));
    std::filesystem::remove(path);
}

TEST_CASE("random networks satisfy their construction contract", "[bn]") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        lcsl::Bn bn = lcsl::random_bn(10, 3, 2, 4, seed);
        CHECK(bn.dag.is_acyclic());
        for (int v = 0; v < bn.num_vars(); ++v) {
            CHECK(static_cast<int>(bn.cpt_parents[v].size()) <= 3);
            CHECK(bn.arities[v] >= 2);
            CHECK(bn.arities[v] <= 4);
            for (const auto& row : bn.cpt[v]) {
                double s = 0.0;
                for (double p : row) {
                    CHECK(p >= 0.05 - 1e-12);
                    s += p;
                }
                CHECK_THAT(s, WithinAbs(1.0, 1e-9));
            }
        }
    }
    lcsl::Bn a = lcsl::random_bn(8, 2, 2, 3, 5);
    lcsl::Bn b = lcsl::random_bn(8, 2, 2, 3, 5);
    CHECK(a.cpt == b.cpt);
    CHECK(a.cpt_parents == b.cpt_parents);
    CHECK_THROWS_WITH(lcsl::random_bn(4, 2, 1, 3, 0), ContainsSubstring("bad arity range"));
    CHECK_THROWS_WITH(lcsl::random_bn(4, 2, 2, 20, 0),
                      ContainsSubstring("arity too large"));
}
