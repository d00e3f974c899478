#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "bn.hpp"
#include "chi_squared.hpp"
#include "dataset.hpp"
#include "util.hpp"

namespace lcsl {

struct CiConfig {
    double alpha = 0.01;
    double reliability_factor = 10.0;
    bool unreliable_independent = true;  // verdict assigned to unreliable tests
    // Negative = use the mode default (unlimited for oracle, 8 for data).
    int max_cond_size = -1;
};

struct CiResult {
    bool independent = true;
    double strength = 1.0;  // p-value; smaller = stronger dependence
    double statistic = 0.0;
    bool reliable = true;
};

// Conditional-independence engine over a dataset (G² test) or a known network
// (exact d-separation). Every call to test() bumps the counter by one, capped
// and degenerate calls included, so test counts stay comparable across modes.
class CiEngine {
public:
    CiEngine(const Dataset& data, CiConfig cfg = {})
        : data_(&data), cfg_(cfg) {
        if (cfg_.max_cond_size < 0) cfg_.max_cond_size = 8;
    }

    explicit CiEngine(const Bn& bn, CiConfig cfg = {})
        : bn_(&bn), cfg_(cfg) {
        if (cfg_.max_cond_size < 0) cfg_.max_cond_size = std::numeric_limits<int>::max();
    }

    int num_vars() const { return data_ ? data_->num_vars() : bn_->num_vars(); }
    bool oracle() const { return bn_ != nullptr; }
    int max_cond_size() const { return cfg_.max_cond_size; }
    const CiConfig& config() const { return cfg_; }

    long long read_counter() const { return counter_; }
    void reset_counter() { counter_ = 0; }

    CiResult test(int x, int y, const VarSet& z) {
        ++counter_;
        if (static_cast<int>(z.size()) > cfg_.max_cond_size) {
            // conditioning cap exceeded: the pair is treated as independent
            return {true, 1.0, 0.0, false};
        }
        if (bn_) {
            bool sep = bn_->dag.d_separated(x, y, z);
            return {sep, sep ? 1.0 : 0.0, 0.0, true};
        }
        return g2_test(x, y, z);
    }

private:
    CiResult g2_test(int x, int y, const VarSet& z) const {
        if (x > y) std::swap(x, y);  // keep the statistic bit-identical under swap
        const Dataset& d = *data_;
        const int rx = d.arities[x];
        const int ry = d.arities[y];
        const int cell = rx * ry;
        long long zcard = 1;
        for (int w : z) {
            zcard *= d.arities[w];
            if (zcard > (1LL << 22)) break;
        }
        const auto& colx = d.col(x);
        const auto& coly = d.col(y);

        double g2 = 0.0;
        long long df = 0;
        auto accumulate = [&](const std::vector<std::uint32_t>& table) {
            long long total = 0;
            for (std::uint32_t c : table) total += c;
            if (total == 0) return;
            std::vector<long long> rowm(rx, 0), colm(ry, 0);
            for (int i = 0; i < rx; ++i)
                for (int j = 0; j < ry; ++j) {
                    rowm[i] += table[i * ry + j];
                    colm[j] += table[i * ry + j];
                }
            int ex = 0, ey = 0;
            for (long long m : rowm) ex += m > 0;
            for (long long m : colm) ey += m > 0;
            df += static_cast<long long>(std::max(ex - 1, 0)) * std::max(ey - 1, 0);
            for (int i = 0; i < rx; ++i)
                for (int j = 0; j < ry; ++j) {
                    std::uint32_t o = table[i * ry + j];
                    if (o == 0) continue;
                    double e = static_cast<double>(rowm[i]) * colm[j] / total;
                    g2 += 2.0 * o * std::log(o / e);
                }
        };

        if (zcard <= (1 << 16)) {
            std::vector<std::uint32_t> counts(static_cast<std::size_t>(zcard) * cell, 0);
            for (int r = 0; r < d.n; ++r) {
                long long zc = 0;
                for (int w : z) zc = zc * d.arities[w] + d.col(w)[r];
                ++counts[static_cast<std::size_t>(zc) * cell + colx[r] * ry + coly[r]];
            }
            std::vector<std::uint32_t> table(cell);
            for (long long zc = 0; zc < zcard; ++zc) {
                std::copy_n(counts.begin() + zc * cell, cell, table.begin());
                accumulate(table);
            }
        } else {
            std::unordered_map<long long, std::vector<std::uint32_t>> tables;
            for (int r = 0; r < d.n; ++r) {
                long long zc = 0;
                for (int w : z) zc = zc * d.arities[w] + d.col(w)[r];
                auto [it, inserted] = tables.try_emplace(zc);
                if (inserted) it->second.assign(cell, 0);
                ++it->second[colx[r] * ry + coly[r]];
            }
            for (auto& [zc, table] : tables) accumulate(table);
        }

        if (df == 0) return {true, 1.0, g2, false};
        double p = chi2_sf(g2, static_cast<double>(df));
        bool reliable = static_cast<double>(d.n) >= cfg_.reliability_factor * df;
        bool independent = reliable ? (p > cfg_.alpha) : cfg_.unreliable_independent;
        return {independent, p, g2, reliable};
    }

    const Dataset* data_ = nullptr;
    const Bn* bn_ = nullptr;
    CiConfig cfg_;
    long long counter_ = 0;
};

// Candidates sorted by descending dependence with t given z (ascending
// p-value), ties broken by ascending variable index.
inline std::vector<int> dependency_order(CiEngine& engine, int t, const VarSet& candidates,
                                         const VarSet& z) {
    std::vector<std::pair<double, int>> keyed;
    keyed.reserve(candidates.size());
    for (int c : candidates) keyed.emplace_back(engine.test(c, t, z).strength, c);
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    out.reserve(keyed.size());
    for (auto& [p, c] : keyed) out.push_back(c);
    return out;
}

}  // namespace lcsl
