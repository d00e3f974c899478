#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <lcsl/bn.hpp>
#include <lcsl/eval.hpp>

#include "fixtures.hpp"

using Catch::Matchers::WithinAbs;
using lcsl::VarSet;

namespace {

// truth on {T, A, B, C, D}: T->A, B->T, T->C; D isolated
lcsl::Bn metric_truth() {
    lcsl::Bn bn;
    bn.names = {"T", "A", "B", "C", "D"};
    std::vector<std::vector<int>> parents = {{2}, {0}, {}, {0}, {}};
    return fixtures::build_binary_bn(bn.names, parents, [](int, int s) {
        return s > 0 ? 0.8 : 0.3;
    });
}

lcsl::LocalStructure structure_with(const lcsl::PartialGraph& g) {
    lcsl::LocalStructure ls;
    ls.graph = g;
    return ls;
}

}  // namespace

TEST_CASE("local metrics on the four error categories", "[eval]") {
    lcsl::Bn truth = metric_truth();
    lcsl::PartialGraph g(5);
    g.direct(0, 1);         // T->A: correct
    g.direct(0, 2);         // T->B: reversed, truth has B->T
    g.set_undirected(0, 3); // T-C: wrongly undirected
    g.direct(0, 4);         // T->D: extra adjacency
    lcsl::LocalMetrics m = lcsl::local_metrics(structure_with(g), truth, 0);
    CHECK_THAT(m.arr_p, WithinAbs(0.25, 1e-12));
    CHECK_THAT(m.arr_r, WithinAbs(1.0 / 3.0, 1e-12));
    CHECK_THAT(m.fdr, WithinAbs(0.25, 1e-12));
    CHECK(m.shd == 3);
}

TEST_CASE("local metrics on perfect and empty outputs", "[eval]") {
    lcsl::Bn truth = metric_truth();

    lcsl::PartialGraph perfect(5);
    perfect.direct(0, 1);
    perfect.direct(2, 0);
    perfect.direct(0, 3);
    lcsl::LocalMetrics p = lcsl::local_metrics(structure_with(perfect), truth, 0);
    CHECK(p.arr_p == 1.0);
    CHECK(p.arr_r == 1.0);
    CHECK(p.shd == 0);
    CHECK(p.fdr == 0.0);

    lcsl::PartialGraph empty(5);
    lcsl::LocalMetrics e = lcsl::local_metrics(structure_with(empty), truth, 0);
    CHECK(e.arr_p == 0.0);
    CHECK(e.arr_r == 0.0);
    CHECK(e.shd == 3);
    CHECK(e.fdr == 0.0);

    // a target with no true neighbors scores full recall by convention
    lcsl::LocalMetrics iso = lcsl::local_metrics(structure_with(empty), truth, 4);
    CHECK(iso.arr_r == 1.0);
    CHECK(iso.shd == 0);
}

TEST_CASE("zero distance only at a perfect fully-directed output", "[eval]") {
    lcsl::Bn truth = metric_truth();
    struct Variant {
        const char* what;
        void (*build)(lcsl::PartialGraph&);
    };
    const Variant variants[] = {
        {"reversed", [](lcsl::PartialGraph& g) {
             g.direct(0, 1);
             g.direct(0, 2);
             g.direct(0, 3);
         }},
        {"missing", [](lcsl::PartialGraph& g) {
             g.direct(0, 1);
             g.direct(2, 0);
         }},
        {"extra", [](lcsl::PartialGraph& g) {
             g.direct(0, 1);
             g.direct(2, 0);
             g.direct(0, 3);
             g.direct(0, 4);
         }},
        {"undirected", [](lcsl::PartialGraph& g) {
             g.direct(0, 1);
             g.direct(2, 0);
             g.set_undirected(0, 3);
         }},
    };
    for (const auto& v : variants) {
        lcsl::PartialGraph g(5);
        v.build(g);
        lcsl::LocalMetrics m = lcsl::local_metrics(structure_with(g), truth, 0);
        INFO(v.what);
        CHECK(m.shd > 0);
        CHECK((m.arr_p < 1.0 || m.arr_r < 1.0 || m.fdr > 0.0));
    }
}

TEST_CASE("blanket metrics from the set formulas", "[eval]") {
    lcsl::MbMetrics m = lcsl::mb_metrics({0, 1, 2}, {1, 2, 3, 4});
    CHECK_THAT(m.precision, WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(m.recall, WithinAbs(0.5, 1e-12));
    CHECK_THAT(m.f1, WithinAbs(4.0 / 7.0, 1e-12));
    CHECK_THAT(m.distance, WithinAbs(std::sqrt(13.0) / 6.0, 1e-12));

    lcsl::MbMetrics perfect = lcsl::mb_metrics({3, 5}, {3, 5});
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.f1 == 1.0);
    CHECK_THAT(perfect.distance, WithinAbs(0.0, 1e-12));

    lcsl::MbMetrics disjoint = lcsl::mb_metrics({0, 1}, {2, 3});
    CHECK(disjoint.f1 == 0.0);
    CHECK_THAT(disjoint.distance, WithinAbs(std::sqrt(2.0), 1e-12));
}

TEST_CASE("blanket metrics handle empty sets explicitly", "[eval]") {
    lcsl::MbMetrics both = lcsl::mb_metrics({}, {});
    CHECK(both.precision == 0.0);
    CHECK(both.recall == 1.0);
    CHECK(both.f1 == 0.0);

    lcsl::MbMetrics spurious = lcsl::mb_metrics({1}, {});
    CHECK(spurious.recall == 0.0);

    lcsl::MbMetrics missed = lcsl::mb_metrics({}, {1});
    CHECK(missed.precision == 0.0);
    CHECK(missed.recall == 0.0);
}

TEST_CASE("mean and sample deviation", "[eval]") {
    lcsl::MeanStd ms = lcsl::mean_std({1.0, 2.0, 3.0, 4.0});
    CHECK_THAT(ms.mean, WithinAbs(2.5, 1e-12));
    CHECK_THAT(ms.sd, WithinAbs(std::sqrt(5.0 / 3.0), 1e-12));
    CHECK(lcsl::mean_std({}).mean == 0.0);
    CHECK(lcsl::mean_std({7.0}).sd == 0.0);
    CHECK(lcsl::mean_std({7.0}).mean == 7.0);
}

TEST_CASE("mean and deviation format as a plus-minus pair", "[eval]") {
    CHECK(lcsl::format_mean_std({0.86, 0.01}) == "0.86 \xC2\xB1 0.01");
    CHECK(lcsl::format_mean_std({648.25, 10.5}, 0) == "648 \xC2\xB1 10");
}
