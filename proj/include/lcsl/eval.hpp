#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bn.hpp"
#include "elcs.hpp"
#include "util.hpp"

namespace lcsl {

struct LocalMetrics {
    double arr_p = 0.0;
    double arr_r = 0.0;
    int shd = 0;
    double fdr = 0.0;
};

struct MbMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double distance = 0.0;
};

// Scores the reported T-adjacencies against the true graph. arr_p counts
// correctly directed output edges over all output edges (undirected outputs
// never count as correct); arr_r counts them over the true PC size; fdr
// counts adjacency-level false edges; shd adds missing, extra, reversed, and
// wrongly-undirected edges.
inline LocalMetrics local_metrics(const LocalStructure& result, const Bn& truth, int t) {
    const PartialGraph& g = result.graph;
    const VarSet reported = g.neighbors(t);
    const VarSet true_pc = truth.dag.pc(t);

    int correct_directed = 0;
    int false_adj = 0;
    int reversed = 0;
    int wrong_undirected = 0;
    for (int y : reported) {
        if (!contains(true_pc, y)) {
            ++false_adj;
            continue;
        }
        if (g.has_undirected(t, y)) {
            ++wrong_undirected;
        } else if (g.has_directed(t, y)) {
            if (truth.dag.has_edge(t, y))
                ++correct_directed;
            else
                ++reversed;
        } else {
            if (truth.dag.has_edge(y, t))
                ++correct_directed;
            else
                ++reversed;
        }
    }
    const int missing = static_cast<int>(set_minus(true_pc, reported).size());

    LocalMetrics m;
    m.arr_p = reported.empty() ? 0.0 : static_cast<double>(correct_directed) / reported.size();
    m.arr_r = true_pc.empty() ? 1.0 : static_cast<double>(correct_directed) / true_pc.size();
    m.fdr = reported.empty() ? 0.0 : static_cast<double>(false_adj) / reported.size();
    m.shd = missing + false_adj + reversed + wrong_undirected;
    return m;
}

inline MbMetrics mb_metrics(const VarSet& learned, const VarSet& truth) {
    MbMetrics m;
    const double tp = static_cast<double>(set_intersect(learned, truth).size());
    m.precision = learned.empty() ? 0.0 : tp / learned.size();
    if (truth.empty())
        m.recall = learned.empty() ? 1.0 : 0.0;
    else
        m.recall = tp / truth.size();
    const double denom = m.precision + m.recall;
    m.f1 = denom > 0.0 ? 2.0 * m.precision * m.recall / denom : 0.0;
    m.distance = std::sqrt((1.0 - m.precision) * (1.0 - m.precision) +
                           (1.0 - m.recall) * (1.0 - m.recall));
    return m;
}

struct MeanStd {
    double mean = 0.0;
    double sd = 0.0;
};

// Arithmetic mean and sample standard deviation (n-1 denominator; 0 for
// fewer than two values).
inline MeanStd mean_std(const std::vector<double>& values) {
    MeanStd out;
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / values.size();
    if (values.size() > 1) {
        double acc = 0.0;
        for (double v : values) acc += (v - out.mean) * (v - out.mean);
        out.sd = std::sqrt(acc / (values.size() - 1));
    }
    return out;
}

inline std::string format_mean_std(const MeanStd& ms, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f \xC2\xB1 %.*f", decimals, ms.mean, decimals, ms.sd);
    return buf;
}

}  // namespace lcsl
