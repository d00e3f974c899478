#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <lcsl/bn.hpp>
#include <lcsl/bn_json.hpp>
#include <lcsl/ci.hpp>
#include <lcsl/dataset.hpp>
#include <lcsl/elcs.hpp>
#include <lcsl/eval.hpp>
#include <lcsl/result_json.hpp>
#include <lcsl/rng.hpp>

namespace {

struct AlgoSpec {
    lcsl::EmbOptions opts;
    bool single_call = false;  // emb variants learn one blanket, elcs variants expand
};

AlgoSpec algo_spec(const std::string& name) {
    AlgoSpec s;
    s.single_call = name == "emb" || name == "emb2";
    s.opts.ranked_spouses = name == "emb2" || name == "elcs2";
    s.opts.use_n_structures = name != "elcs-no-n";
    return s;
}

lcsl::LocalStructure run_algorithm(const AlgoSpec& spec, lcsl::CiEngine& engine, int t) {
    return spec.single_call ? lcsl::emb_local(engine, t, spec.opts)
                            : lcsl::elcs(engine, t, spec.opts);
}

// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

void print_row(std::ostream& os, const std::vector<std::string>& cells,
               const std::vector<int>& widths) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << "  ";
        // count bytes, not glyphs, so the ± sign does not skew the padding
        int pad = widths[i] - static_cast<int>(cells[i].size());
        for (const char c : cells[i])
            if ((c & 0xC0) == 0x80) ++pad;
        if (i == 0) {
            os << cells[i];
            for (int k = 0; k < pad; ++k) os << ' ';
        } else {
            for (int k = 0; k < pad; ++k) os << ' ';
            os << cells[i];
        }
    }
    os << '\n';
}

int run_sample(const std::string& net_path, int n, std::uint64_t seed,
               const std::string& out_path) {
    lcsl::Bn bn;
    try {
        bn = lcsl::load_bn(net_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    try {
        lcsl::Dataset d = lcsl::sample(bn, n, seed);
        Sink sink(out_path);
        lcsl::save_csv(d, sink.stream());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int run_learn(const std::string& data_path, const std::string& net_path,
              const std::string& algo, const std::string& ci, double alpha,
              int max_cond_size, const std::string& target, const std::string& out_path) {
    lcsl::CiConfig cfg;
    cfg.alpha = alpha;
    cfg.max_cond_size = max_cond_size;

    std::optional<lcsl::Bn> bn;
    std::optional<lcsl::Dataset> data;
    try {
        if (ci == "oracle") {
            if (net_path.empty())
                throw std::runtime_error("the oracle backend requires --network");
            bn = lcsl::load_bn(net_path);
        } else {
            if (data_path.empty()) throw std::runtime_error("the g2 backend requires --data");
            data = lcsl::load_csv(data_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    const std::vector<std::string>& names = bn ? bn->names : data->names;
    const int n = static_cast<int>(names.size());

    std::vector<int> targets;
    if (target == "all") {
        for (int t = 0; t < n; ++t) targets.push_back(t);
    } else {
        auto it = std::find(names.begin(), names.end(), target);
        if (it == names.end()) {
            std::cerr << "error: unknown target " << target << '\n';
            return 3;
        }
        targets.push_back(static_cast<int>(it - names.begin()));
    }

    const AlgoSpec spec = algo_spec(algo);
    lcsl::CiEngine engine = bn ? lcsl::CiEngine(*bn, cfg) : lcsl::CiEngine(*data, cfg);
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (int t : targets) {
        engine.reset_counter();
        auto t0 = std::chrono::steady_clock::now();
        lcsl::LocalStructure ls = run_algorithm(spec, engine, t);
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        records.push_back(lcsl::record_to_json(lcsl::make_record(ls, t, names, ms)));
    }
    try {
        Sink sink(out_path);
        sink.stream() << records.dump(2) << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

struct EvalRow {
    std::string target;
    lcsl::LocalMetrics local;
    lcsl::MbMetrics mb;
};

int run_eval(const std::string& results_path, const std::string& net_path,
             const std::string& format, const std::string& out_path) {
    lcsl::Bn bn;
    nlohmann::json arr;
    std::vector<lcsl::LearnRecord> recs;
    try {
        bn = lcsl::load_bn(net_path);
        std::ifstream f(results_path);
        if (!f) throw std::runtime_error("cannot open " + results_path);
        f >> arr;
        if (!arr.is_array()) throw std::runtime_error("results: expected a json array");
        for (const auto& j : arr) recs.push_back(lcsl::record_from_json(j));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    std::vector<EvalRow> rows;
    for (const auto& rec : recs) {
        auto index_of = [&bn](const std::string& name) {
            int v = bn.var_index(name);
            if (v < 0)
                throw std::runtime_error("variable " + name + " is not in the network");
            return v;
        };
        try {
            const int t = index_of(rec.target);
            lcsl::LocalStructure ls;
            ls.graph = lcsl::PartialGraph(bn.num_vars());
            for (const auto& e : rec.edges) {
                int from = index_of(e.from);
                int to = index_of(e.to);
                if (e.directed)
                    ls.graph.direct(from, to);
                else
                    ls.graph.set_undirected(from, to);
            }
            lcsl::VarSet mb_set;
            for (const auto& name : rec.mb) lcsl::insert_var(mb_set, index_of(name));
            EvalRow row;
            row.target = rec.target;
            row.local = lcsl::local_metrics(ls, bn, t);
            row.mb = lcsl::mb_metrics(mb_set, bn.dag.markov_blanket(t));
            rows.push_back(row);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 4;
        }
    }

    auto column = [&rows](auto&& get) {
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(get(r));
        return out;
    };
    const std::vector<std::string> metric_names = {"ArrP", "ArrR", "SHD",    "FDR",
                                                   "Precision", "Recall", "F1", "Distance"};
    const std::vector<std::vector<double>> metrics = {
        column([](const EvalRow& r) { return r.local.arr_p; }),
        column([](const EvalRow& r) { return r.local.arr_r; }),
        column([](const EvalRow& r) { return static_cast<double>(r.local.shd); }),
        column([](const EvalRow& r) { return r.local.fdr; }),
        column([](const EvalRow& r) { return r.mb.precision; }),
        column([](const EvalRow& r) { return r.mb.recall; }),
        column([](const EvalRow& r) { return r.mb.f1; }),
        column([](const EvalRow& r) { return r.mb.distance; }),
    };

    try {
        Sink sink(out_path);
        std::ostream& os = sink.stream();
        if (format == "json") {
            nlohmann::ordered_json j;
            j["targets"] = nlohmann::ordered_json::array();
            const std::vector<std::string> keys = {"arr_p", "arr_r", "shd", "fdr",
                                                   "precision", "recall", "f1", "distance"};
            for (std::size_t i = 0; i < rows.size(); ++i) {
                nlohmann::ordered_json row;
                row["target"] = rows[i].target;
                for (std::size_t m = 0; m < keys.size(); ++m) row[keys[m]] = metrics[m][i];
                j["targets"].push_back(row);
            }
            j["aggregate"] = nlohmann::ordered_json::object();
            for (std::size_t m = 0; m < keys.size(); ++m) {
                lcsl::MeanStd ms = lcsl::mean_std(metrics[m]);
                j["aggregate"][keys[m]] = {{"mean", ms.mean}, {"sd", ms.sd}};
            }
            os << j.dump(2) << '\n';
        } else if (format == "csv") {
            os << "Target";
            for (const auto& name : metric_names) os << ',' << name;
            os << '\n';
            for (std::size_t i = 0; i < rows.size(); ++i) {
                os << rows[i].target;
                for (std::size_t m = 0; m < metrics.size(); ++m)
                    os << ',' << fixed(metrics[m][i], 4);
                os << '\n';
            }
            os << "mean";
            for (std::size_t m = 0; m < metrics.size(); ++m)
                os << ',' << lcsl::format_mean_std(lcsl::mean_std(metrics[m]), 4);
            os << '\n';
        } else {
            std::vector<int> widths{10};
            for (std::size_t m = 0; m < metric_names.size(); ++m) widths.push_back(17);
            std::vector<std::string> header{"Target"};
            header.insert(header.end(), metric_names.begin(), metric_names.end());
            print_row(os, header, widths);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                std::vector<std::string> cells{rows[i].target};
                for (std::size_t m = 0; m < metrics.size(); ++m)
                    cells.push_back(fixed(metrics[m][i], 4));
                print_row(os, cells, widths);
            }
            std::vector<std::string> agg{"mean"};
            for (std::size_t m = 0; m < metrics.size(); ++m)
                agg.push_back(lcsl::format_mean_std(lcsl::mean_std(metrics[m]), 4));
            print_row(os, agg, widths);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int run_bench(const std::string& net_path, const std::vector<int>& sizes, int repeats,
              const std::vector<std::string>& algos, const std::string& ci, double alpha,
              int max_cond_size, std::uint64_t seed, int jobs, const std::string& format,
              const std::string& out_path) {
    lcsl::Bn bn;
    try {
        bn = lcsl::load_bn(net_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    lcsl::CiConfig cfg;
    cfg.alpha = alpha;
    cfg.max_cond_size = max_cond_size;

    const int S = static_cast<int>(sizes.size());
    const int R = repeats;
    const int A = static_cast<int>(algos.size());
    const int N = bn.num_vars();

    // datasets are drawn sequentially so the benchmark is reproducible
    std::vector<lcsl::Dataset> datasets(static_cast<std::size_t>(S) * R);
    for (int si = 0; si < S; ++si)
        for (int r = 0; r < R; ++r)
            datasets[static_cast<std::size_t>(si) * R + r] = lcsl::sample(
                bn, sizes[si], lcsl::mix_seed(seed, static_cast<std::uint64_t>(si) * 1000 + r));

    struct Cell {
        double arr_p, arr_r, shd, fdr, ci_tests, secs;
    };
    std::vector<Cell> cells(static_cast<std::size_t>(S) * R * A * N);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
            const int t = static_cast<int>(i % N);
            const int ai = static_cast<int>(i / N % A);
            const int r = static_cast<int>(i / N / A % R);
            const int si = static_cast<int>(i / N / A / R);
            const AlgoSpec spec = algo_spec(algos[ai]);
            lcsl::CiEngine engine =
                ci == "oracle" ? lcsl::CiEngine(bn, cfg)
                               : lcsl::CiEngine(datasets[static_cast<std::size_t>(si) * R + r],
                                                cfg);
            auto t0 = std::chrono::steady_clock::now();
            lcsl::LocalStructure ls = run_algorithm(spec, engine, t);
            double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            lcsl::LocalMetrics m = lcsl::local_metrics(ls, bn, t);
            cells[i] = {m.arr_p,
                        m.arr_r,
                        static_cast<double>(m.shd),
                        m.fdr,
                        static_cast<double>(ls.total_ci),
                        secs};
        }
    };
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    struct Agg {
        int size;
        std::string algo;
        lcsl::MeanStd arr_p, arr_r, shd, fdr, ci_tests, secs;
    };
    std::vector<Agg> table;
    for (int si = 0; si < S; ++si)
        for (int ai = 0; ai < A; ++ai) {
            std::vector<double> vp, vr, vs, vf, vc, vt;
            for (int r = 0; r < R; ++r)
                for (int t = 0; t < N; ++t) {
                    const Cell& c =
                        cells[((static_cast<std::size_t>(si) * R + r) * A + ai) * N + t];
                    vp.push_back(c.arr_p);
                    vr.push_back(c.arr_r);
                    vs.push_back(c.shd);
                    vf.push_back(c.fdr);
                    vc.push_back(c.ci_tests);
                    vt.push_back(c.secs);
                }
            table.push_back({sizes[si], algos[ai], lcsl::mean_std(vp), lcsl::mean_std(vr),
                             lcsl::mean_std(vs), lcsl::mean_std(vf), lcsl::mean_std(vc),
                             lcsl::mean_std(vt)});
        }

    auto row_cells = [](const Agg& a) {
        return std::vector<std::string>{
            std::to_string(a.size),       a.algo,
            lcsl::format_mean_std(a.arr_p, 2), lcsl::format_mean_std(a.arr_r, 2),
            lcsl::format_mean_std(a.shd, 1),   lcsl::format_mean_std(a.fdr, 2),
            lcsl::format_mean_std(a.ci_tests, 0), lcsl::format_mean_std(a.secs, 3)};
    };
    try {
        Sink sink(out_path);
        std::ostream& os = sink.stream();
        const std::vector<std::string> header = {"Size", "Algorithm", "ArrP", "ArrR",
                                                 "SHD",  "FDR",       "CI Tests", "Time"};
        if (format == "csv") {
            for (std::size_t i = 0; i < header.size(); ++i)
                os << (i ? "," : "") << header[i];
            os << '\n';
            for (const auto& a : table) {
                const auto cellsv = row_cells(a);
                for (std::size_t i = 0; i < cellsv.size(); ++i)
                    os << (i ? "," : "") << cellsv[i];
                os << '\n';
            }
        } else {
            std::vector<int> widths{6, 12, 13, 13, 14, 13, 16, 15};
            print_row(os, header, widths);
            for (const auto& a : table) print_row(os, row_cells(a), widths);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local causal structure learning over discrete data"};
    app.require_subcommand(1);

    const std::vector<std::string> algo_names = {"emb", "emb2", "elcs", "elcs2",
                                                 "elcs-no-n"};

    auto* sample = app.add_subcommand("sample", "draw rows from a network into a csv file");
    std::string s_net, s_out;
    int s_n = 5000;
    std::uint64_t s_seed = 1;
    sample->add_option("network", s_net, "network json file")->required();
    sample->add_option("--n", s_n, "number of rows")->check(CLI::PositiveNumber);
    sample->add_option("--seed", s_seed, "rng seed");
    sample->add_option("--out", s_out, "output csv (default stdout)");

    auto* learn = app.add_subcommand("learn", "learn local structure around targets");
    std::string l_data, l_net, l_algo = "elcs", l_ci = "g2", l_target = "all", l_out;
    double l_alpha = 0.01;
    int l_mcs = -1;
    learn->add_option("--data", l_data, "csv dataset (g2 backend)");
    learn->add_option("--network", l_net, "network json (oracle backend)");
    learn->add_option("--algorithm", l_algo, "learning algorithm")
        ->check(CLI::IsMember(algo_names));
    learn->add_option("--ci", l_ci, "independence backend")
        ->check(CLI::IsMember({"g2", "oracle"}));
    learn->add_option("--alpha", l_alpha, "significance level");
    learn->add_option("--max-cond-size", l_mcs, "conditioning set cap (-1: backend default)");
    learn->add_option("--target", l_target, "target variable name, or all");
    learn->add_option("--out", l_out, "output json (default stdout)");

    auto* eval = app.add_subcommand("eval", "score learn results against a network");
    std::string e_results, e_net, e_format = "text", e_out;
    eval->add_option("results", e_results, "json results from learn")->required();
    eval->add_option("network", e_net, "ground-truth network json")->required();
    eval->add_option("--format", e_format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    eval->add_option("--out", e_out, "output file (default stdout)");

    auto* bench = app.add_subcommand("bench", "benchmark algorithms over sampled datasets");
    std::string b_net, b_ci = "g2", b_format = "text", b_out;
    std::vector<int> b_sizes = {1000, 5000};
    std::vector<std::string> b_algos = {"elcs"};
    int b_repeats = 3, b_jobs = 1, b_mcs = -1;
    double b_alpha = 0.01;
    std::uint64_t b_seed = 1;
    bench->add_option("network", b_net, "ground-truth network json")->required();
    bench->add_option("--sizes", b_sizes, "dataset sizes")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench->add_option("--repeats", b_repeats, "datasets per size")->check(CLI::PositiveNumber);
    bench->add_option("--algorithms", b_algos, "algorithms to compare")
        ->delimiter(',')
        ->check(CLI::IsMember(algo_names));
    bench->add_option("--ci", b_ci, "independence backend")
        ->check(CLI::IsMember({"g2", "oracle"}));
    bench->add_option("--alpha", b_alpha, "significance level");
    bench->add_option("--max-cond-size", b_mcs, "conditioning set cap (-1: backend default)");
    bench->add_option("--seed", b_seed, "sampling seed");
    bench->add_option("--jobs", b_jobs, "worker threads")->check(CLI::PositiveNumber);
    bench->add_option("--format", b_format, "output format")
        ->check(CLI::IsMember({"text", "csv"}));
    bench->add_option("--out", b_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (sample->parsed()) return run_sample(s_net, s_n, s_seed, s_out);
    if (learn->parsed())
        return run_learn(l_data, l_net, l_algo, l_ci, l_alpha, l_mcs, l_target, l_out);
    if (eval->parsed()) return run_eval(e_results, e_net, e_format, e_out);
    return run_bench(b_net, b_sizes, b_repeats, b_algos, b_ci, b_alpha, b_mcs, b_seed,
                     b_jobs, b_format, b_out);
}
