// Command-line surface for the curvature toolkit: curvature reports,
// line-graph export, Ricci-flow clustering, synthetic generators,
// clustering evaluation, and benchmark sweeps.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ricci/edgelist.hpp"
#include "ricci/eval.hpp"
#include "ricci/flow.hpp"
#include "ricci/frc.hpp"
#include "ricci/generators.hpp"
#include "ricci/orc.hpp"
#include "ricci/parallel.hpp"
#include "ricci/rng.hpp"

using nlohmann::json;
using namespace ricci;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoStructure = 3;
constexpr int kExitNumeric = 4;

CurvatureKind parse_variant(const std::string& name) {
    if (name == "orc-e") return CurvatureKind::OrcExact;
    if (name == "orc-s") return CurvatureKind::OrcSinkhorn;
    if (name == "orc-a") return CurvatureKind::OrcApprox;
    if (name == "orc-a1") return CurvatureKind::OrcApproxA1;
    if (name == "frc1") return CurvatureKind::Frc1;
    if (name == "frc2") return CurvatureKind::Frc2;
    if (name == "frc3") return CurvatureKind::Frc3;
    throw CLI::ValidationError("--variant", "unknown variant '" + name + "'");
}

MeasureMode parse_measure(const std::string& name, double alpha, double p) {
    if (name == "uniform") return MeasureMode::uniform();
    if (name == "degree") return MeasureMode::degree_proportional();
    if (name == "exponential") return MeasureMode::exponential(alpha, p);
    if (name == "lazy") return MeasureMode::lazy_uniform(alpha);
    throw CLI::ValidationError("--measure", "unknown measure '" + name + "'");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

struct CurvatureOptions {
    std::string input;
    std::string out = "-";
    std::string variant = "orc-a";
    std::string measure = "exponential";
    double alpha = 0.0;
    double p = 1.0;
};

void write_curvature_rows(std::ostream& out, const NamedGraph& ng,
                          const CurvatureOptions& opt) {
    const Graph& g = ng.graph;
    out << "u,v,variant,lower,upper,value\n";
    out.precision(12);
    if (opt.variant == "frc-l3") {
        auto lg = line_graph_weighted(g);
        auto name_of = [&](int e) {
            return ng.name(g.edge_u(e)) + "~" + ng.name(g.edge_v(e));
        };
        for (int le = 0; le < lg.line.edge_count(); ++le) {
            int e1 = lg.line.edge_u(le), e2 = lg.line.edge_v(le);
            double v = line_frc3_edge(g, e1, e2);
            out << name_of(e1) << ',' << name_of(e2) << ",FRC-L3," << v << ',' << v << ','
                << v << '\n';
        }
        return;
    }
    CurvatureKind kind = parse_variant(opt.variant);
    MeasureMode mode = parse_measure(opt.measure, opt.alpha, opt.p);
    std::optional<DistanceCache> cache;
    if (kind == CurvatureKind::OrcExact || kind == CurvatureKind::OrcSinkhorn) {
        cache.emplace(g);
        cache->prefetch_all();
    }
    struct Row {
        double lower, upper, value;
    };
    std::vector<Row> rows(static_cast<size_t>(g.edge_count()));
    parallel_for(g.edge_count(), [&](int64_t i) {
        int e = static_cast<int>(i);
        Row r{};
        switch (kind) {
        case CurvatureKind::OrcExact:
            r.value = orc_edge_exact(g, e, mode, &*cache);
            r.lower = r.upper = r.value;
            break;
        case CurvatureKind::OrcSinkhorn:
            r.value = orc_edge_sinkhorn(g, e, mode, {}, &*cache);
            r.lower = r.upper = r.value;
            break;
        case CurvatureKind::OrcApprox: {
            OrcBounds b = orc_bounds_weighted(g, e, opt.alpha, opt.p);
            r = {b.lower, b.upper, 0.5 * (b.lower + b.upper)};
            break;
        }
        case CurvatureKind::OrcApproxA1: {
            OrcBounds b = orc_bounds_weighted(g, e, opt.alpha, opt.p);
            r = {b.lower, 1.0, 0.5 * (1.0 + b.lower)};
            break;
        }
        case CurvatureKind::Frc1:
            r.value = frc1_edge(g, e);
            r.lower = r.upper = r.value;
            break;
        case CurvatureKind::Frc2:
            r.value = frc2_edge(g, e);
            r.lower = r.upper = r.value;
            break;
        case CurvatureKind::Frc3:
            r.value = frc3_edge(g, e);
            r.lower = r.upper = r.value;
            break;
        }
        rows[static_cast<size_t>(e)] = r;
    });
    const char* label = curvature_name(kind);
    for (int e = 0; e < g.edge_count(); ++e) {
        const Row& r = rows[static_cast<size_t>(e)];
        out << ng.name(g.edge_u(e)) << ',' << ng.name(g.edge_v(e)) << ',' << label << ','
            << r.lower << ',' << r.upper << ',' << r.value << '\n';
    }
}

struct ClusterOptions {
    std::string input;
    std::string out_dir = ".";
    std::string mode = "single";
    std::string variant = "orc-a";
    std::string measure = "exponential";
    double alpha = 0.0;
    double p = 1.0;
    double nu = 1.0;
    int iters = 10;
    uint64_t seed = 0;
};

FlowConfig make_config(const ClusterOptions& opt) {
    FlowConfig cfg = FlowConfig::with_curvature(parse_variant(opt.variant));
    cfg.measure = parse_measure(opt.measure, opt.alpha, opt.p);
    if (!cfg.adaptive_nu)
        cfg.nu = opt.nu;
    cfg.iterations = opt.iters;
    cfg.seed = opt.seed;
    return cfg;
}

json flow_summary(const FlowState& st) {
    json iterations = json::array();
    for (size_t t = 0; t < st.weights.size(); ++t) {
        const auto& w = st.weights[t];
        if (w.empty()) {
            iterations.push_back({{"t", t}});
            continue;
        }
        double lo = w[0], hi = w[0], sum = 0;
        for (double x : w) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
            sum += x;
        }
        iterations.push_back({{"t", t},
                              {"min", lo},
                              {"max", hi},
                              {"mean", sum / static_cast<double>(w.size())}});
    }
    return iterations;
}

json config_echo(const FlowConfig& cfg, const ClusterOptions& opt) {
    return {{"variant", curvature_name(cfg.curvature)},
            {"measure", opt.measure},
            {"alpha", opt.alpha},
            {"p", opt.p},
            {"nu", cfg.adaptive_nu ? json("adaptive") : json(cfg.nu)},
            {"iterations", cfg.iterations},
            {"epsilon", cfg.epsilon},
            {"epsilon_drop", cfg.epsilon_drop},
            {"cutoff", cfg.cutoff == CutoffScheme::OrcUniform ? "orc-uniform" : "frc-quantile"},
            {"renormalize", cfg.renormalize},
            {"seed", cfg.seed},
            {"rng", {{"name", rng::kName}, {"version", rng::kVersion}}},
            {"threads", hardware_threads()}};
}

int cmd_cluster(const ClusterOptions& opt) {
    NamedGraph ng = read_edge_list_file(opt.input);
    FlowConfig cfg = make_config(opt);
    std::filesystem::create_directories(opt.out_dir);
    auto t0 = std::chrono::steady_clock::now();

    json manifest;
    manifest["config"] = config_echo(cfg, opt);
    manifest["input"] = opt.input;
    manifest["mode"] = opt.mode;

    bool found = false;
    if (opt.mode == "single") {
        auto res = cluster_single(ng.graph, cfg);
        if (res) {
            found = true;
            auto labels = open_out(opt.out_dir + "/labels.csv");
            labels << "vertex,label\n";
            for (Vertex v = 0; v < ng.graph.vertex_count(); ++v)
                labels << ng.name(v) << ',' << res->labels.label[static_cast<size_t>(v)]
                       << '\n';
            manifest["q_best"] = res->q_best;
            manifest["cutoff"] = res->cutoff;
            manifest["communities"] = res->labels.k;
            manifest["iterations"] = flow_summary(res->flow);
        }
    } else if (opt.mode == "mixed") {
        auto res = cluster_mixed(ng.graph, cfg);
        if (res) {
            found = true;
            auto labels = open_out(opt.out_dir + "/labels.csv");
            labels << "vertex";
            for (int c = 0; c < res->labels.k; ++c)
                labels << ",y_" << c;
            labels << ",members\n";
            labels.precision(12);
            for (Vertex v = 0; v < ng.graph.vertex_count(); ++v) {
                labels << ng.name(v);
                for (int c = 0; c < res->labels.k; ++c)
                    labels << ','
                           << res->labels.y[static_cast<size_t>(v)][static_cast<size_t>(c)];
                labels << ',';
                const auto& mem = res->labels.members[static_cast<size_t>(v)];
                for (size_t i = 0; i < mem.size(); ++i)
                    labels << (i ? ";" : "") << mem[i];
                labels << '\n';
            }
            manifest["q_best"] = res->q_best;
            manifest["communities"] = res->labels.k;
        }
    } else {
        throw CLI::ValidationError("--mode", "expected 'single' or 'mixed'");
    }

    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    manifest["runtime_ms"] = ms;
    manifest["structure_found"] = found;
    open_out(opt.out_dir + "/manifest.json") << manifest.dump(2) << '\n';
    if (!found) {
        std::cerr << "no community structure found\n";
        return kExitNoStructure;
    }
    std::cout << "labels written to " << opt.out_dir << "/labels.csv (Q="
              << manifest["q_best"].get<double>() << ")\n";
    return kExitOk;
}

// --- label file parsing ------------------------------------------------

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    return fields;
}

// vertex,label rows; tolerates one header line.
std::unordered_map<std::string, int> read_label_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::unordered_map<std::string, int> labels;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        auto fields = split_csv_line(line);
        if (fields.size() < 2)
            throw ParseError(line_no, "expected vertex,label");
        try {
            labels[fields[0]] = std::stoi(fields[1]);
        } catch (const std::exception&) {
            if (line_no == 1)
                continue; // header
            throw ParseError(line_no, "bad label '" + fields[1] + "'");
        }
    }
    return labels;
}

// vertex,y_0,...,y_{k-1}[,members] rows; tolerates one header line.
std::unordered_map<std::string, std::vector<double>>
read_affiliation_csv(const std::string& path, bool last_is_members) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::unordered_map<std::string, std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        auto fields = split_csv_line(line);
        size_t last = fields.size() - (last_is_members ? 1 : 0);
        if (last < 2)
            throw ParseError(line_no, "expected vertex,y_0,...");
        std::vector<double> y;
        bool numeric = true;
        for (size_t i = 1; i < last; ++i) {
            try {
                size_t used = 0;
                y.push_back(std::stod(fields[i], &used));
                if (used != fields[i].size())
                    numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
        }
        if (!numeric) {
            if (line_no == 1)
                continue; // header
            throw ParseError(line_no, "bad affiliation row");
        }
        if (width == 0)
            width = y.size();
        else if (width != y.size())
            throw ParseError(line_no, "inconsistent affiliation width");
        rows[fields[0]] = std::move(y);
    }
    return rows;
}

int cmd_eval(const std::string& truth_path, const std::string& pred_path,
             const std::string& mode) {
    if (mode == "single") {
        auto truth = read_label_csv(truth_path);
        auto pred = read_label_csv(pred_path);
        if (truth.size() != pred.size())
            throw std::runtime_error("label files cover different vertex sets");
        std::vector<int> a, b;
        for (const auto& [name, label] : truth) {
            auto it = pred.find(name);
            if (it == pred.end())
                throw std::runtime_error("vertex '" + name + "' missing from predictions");
            a.push_back(label);
            b.push_back(it->second);
        }
        std::cout << nmi_classic(a, b) << '\n';
        return kExitOk;
    }
    if (mode == "mixed") {
        auto truth = read_affiliation_csv(truth_path, false);
        auto pred = read_affiliation_csv(pred_path, true);
        if (truth.empty() || pred.empty())
            throw std::runtime_error("empty label file");
        std::vector<std::vector<double>> ys_truth, ys_pred;
        for (const auto& [name, y] : truth) {
            auto it = pred.find(name);
            if (it == pred.end())
                throw std::runtime_error("vertex '" + name + "' missing from predictions");
            ys_truth.push_back(y);
            ys_pred.push_back(it->second);
        }
        auto bt = to_binary(ys_truth, static_cast<int>(ys_truth.front().size()));
        auto bp = to_binary(ys_pred, static_cast<int>(ys_pred.front().size()));
        std::cout << nmi_extended(bt, bp) << '\n';
        return kExitOk;
    }
    throw CLI::ValidationError("--mode", "expected 'single' or 'mixed'");
}

struct GenOptions {
    std::string model = "sbm";
    int n = 100;
    int k = 2;
    double p_in = 0.1;
    double p_out = 0.01;
    int n_mixed = 0;
    int a = 3, b = 2;
    int dim = 2;
    double radius = 0.3;
    bool weighted = false;
    uint64_t seed = 0;
    std::string out = "graph";
};

void write_truth(const std::string& path, const GroundTruth& truth) {
    auto out = open_out(path);
    bool any_mixed = false;
    for (const auto& row : truth.membership)
        for (double x : row)
            if (x != 0.0 && x != 1.0)
                any_mixed = true;
    if (!any_mixed) {
        out << "vertex,block\n";
        auto hard = truth.hard_labels();
        for (size_t v = 0; v < hard.label.size(); ++v)
            out << v << ',' << hard.label[v] << '\n';
        return;
    }
    out << "vertex";
    for (int c = 0; c < truth.k; ++c)
        out << ",y_" << c;
    out << '\n';
    out.precision(12);
    for (size_t v = 0; v < truth.membership.size(); ++v) {
        out << v;
        for (double x : truth.membership[v])
            out << ',' << x;
        out << '\n';
    }
}

int cmd_gen(const GenOptions& opt) {
    Graph g;
    std::optional<GroundTruth> truth;
    if (opt.model == "sbm") {
        auto [graph, t] = gen_sbm({opt.n, opt.k, opt.p_in, opt.p_out, 0, opt.seed});
        g = std::move(graph);
        truth = std::move(t);
    } else if (opt.model == "mmb") {
        auto [graph, t] = gen_mmb({opt.n, opt.k, opt.p_in, opt.p_out, opt.n_mixed, opt.seed});
        g = std::move(graph);
        truth = std::move(t);
    } else if (opt.model == "rgg") {
        g = gen_rgg(opt.n, opt.dim, opt.radius, opt.seed, opt.weighted);
    } else if (opt.model == "gab") {
        auto gab = gen_g_ab(opt.a, opt.b);
        g = std::move(gab.graph);
        truth = std::move(gab.truth);
    } else if (opt.model == "lab") {
        auto [graph, t] = gen_l_ab(opt.a, opt.b);
        g = std::move(graph);
        truth = std::move(t);
    } else {
        throw CLI::ValidationError("--model", "unknown model '" + opt.model + "'");
    }
    write_edge_list_file(opt.out + ".edges", with_numeric_names(std::move(g)));
    if (truth)
        write_truth(opt.out + ".truth.csv", *truth);
    std::cout << "wrote " << opt.out << ".edges"
              << (truth ? " and " + opt.out + ".truth.csv" : "") << '\n';
    return kExitOk;
}

struct BenchOptions {
    std::string model = "sbm";
    std::vector<int> sizes{100};
    int k = 2;
    std::vector<double> p_in{0.1};
    double p_out = 0.01;
    int n_mixed = 0;
    std::vector<std::string> variants{"orc-e"};
    int seeds = 10;
    uint64_t seed = 7;
    bool filter = true;
    std::string out = "-";
};

int cmd_bench(const BenchOptions& opt) {
    std::ostream* outp = &std::cout;
    std::ofstream file;
    if (opt.out != "-") {
        file = open_out(opt.out);
        outp = &file;
    }
    std::ostream& out = *outp;
    out << "model,n,k,p_in,p_out,n_mixed,variant,seeds_used,filtered,"
           "nmi_mean,nmi_sd,runtime_mean_s,runtime_sd_s,flag\n";
    uint64_t cell_index = 0;
    for (int n : opt.sizes) {
        for (double p_in : opt.p_in) {
            ++cell_index;
            // Admissible instances for this cell, shared across variants.
            std::vector<uint64_t> cell_seeds;
            int filtered = 0;
            for (int attempt = 0; attempt < 50 * opt.seeds &&
                                  static_cast<int>(cell_seeds.size()) < opt.seeds;
                 ++attempt) {
                uint64_t s = rng::mix(opt.seed, cell_index, static_cast<uint64_t>(attempt));
                PlantedParams params{n, opt.k, p_in, opt.p_out, opt.n_mixed, s};
                auto [g, truth] = opt.model == "mmb" ? gen_mmb(params) : gen_sbm(params);
                if (opt.filter && !admissible(g, truth)) {
                    ++filtered;
                    continue;
                }
                cell_seeds.push_back(s);
            }
            for (const std::string& variant : opt.variants) {
                std::vector<double> nmis, times;
                for (uint64_t s : cell_seeds) {
                    PlantedParams params{n, opt.k, p_in, opt.p_out, opt.n_mixed, s};
                    auto [g, truth] = opt.model == "mmb" ? gen_mmb(params) : gen_sbm(params);
                    FlowConfig cfg = FlowConfig::with_curvature(parse_variant(variant));
                    cfg.seed = s;
                    auto t0 = std::chrono::steady_clock::now();
                    double nmi = 0;
                    if (opt.model == "mmb") {
                        auto res = cluster_mixed(g, cfg);
                        if (res) {
                            auto found = BinaryMembership::from_members(
                                g.vertex_count(), res->labels.members, res->labels.k);
                            auto want = to_binary(truth.membership, truth.k);
                            nmi = nmi_extended(want, found);
                        }
                    } else {
                        auto res = cluster_single(g, cfg);
                        if (res) {
                            auto hard = truth.hard_labels();
                            nmi = nmi_classic(res->labels.label, hard.label);
                        }
                    }
                    times.push_back(
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count());
                    nmis.push_back(nmi);
                }
                auto stats = [](const std::vector<double>& xs) {
                    if (xs.empty())
                        return std::pair<double, double>{0, 0};
                    double mean = 0;
                    for (double x : xs)
                        mean += x;
                    mean /= static_cast<double>(xs.size());
                    double var = 0;
                    for (double x : xs)
                        var += (x - mean) * (x - mean);
                    if (xs.size() > 1)
                        var /= static_cast<double>(xs.size() - 1);
                    return std::pair<double, double>{mean, std::sqrt(var)};
                };
                auto [nmi_mean, nmi_sd] = stats(nmis);
                auto [t_mean, t_sd] = stats(times);
                out << opt.model << ',' << n << ',' << opt.k << ',' << p_in << ','
                    << opt.p_out << ',' << opt.n_mixed << ',' << variant << ','
                    << cell_seeds.size() << ',' << filtered << ',' << nmi_mean << ','
                    << nmi_sd << ',' << t_mean << ',' << t_sd << ','
                    << (cell_seeds.empty() ? "all-filtered" : "ok") << '\n';
            }
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph curvature toolkit: Ollivier/Forman Ricci curvature and "
                 "Ricci-flow community detection"};
    app.require_subcommand(1);

    CurvatureOptions copt;
    auto* curvature = app.add_subcommand("curvature", "per-edge curvature report (CSV)");
    curvature->add_option("input", copt.input, "edge-list file")->required();
    curvature->add_option("--variant", copt.variant,
                          "orc-e|orc-s|orc-a|orc-a1|frc1|frc2|frc3|frc-l3");
    curvature->add_option("--measure", copt.measure, "uniform|degree|exponential|lazy");
    curvature->add_option("--alpha", copt.alpha, "measure mass at the center");
    curvature->add_option("--p", copt.p, "measure exponent");
    curvature->add_option("--out", copt.out, "output CSV path ('-' for stdout)");

    std::string lg_input, lg_out = "-";
    bool lg_weighted = false;
    auto* linegraph = app.add_subcommand("linegraph", "write the line graph's edge list");
    linegraph->add_option("input", lg_input, "edge-list file")->required();
    linegraph->add_flag("--weighted", lg_weighted, "use sqrt(w1 w2) edge weights");
    linegraph->add_option("--out", lg_out, "output path ('-' for stdout)");

    ClusterOptions klopt;
    auto* cluster = app.add_subcommand("cluster", "Ricci-flow community detection");
    cluster->add_option("input", klopt.input, "edge-list file")->required();
    cluster->add_option("--mode", klopt.mode, "single|mixed");
    cluster->add_option("--variant", klopt.variant, "curvature variant");
    cluster->add_option("--measure", klopt.measure, "uniform|degree|exponential|lazy");
    cluster->add_option("--alpha", klopt.alpha, "measure mass at the center");
    cluster->add_option("--p", klopt.p, "measure exponent");
    cluster->add_option("--nu", klopt.nu, "flow step size (ORC variants)");
    cluster->add_option("--iters", klopt.iters, "flow iterations");
    cluster->add_option("--seed", klopt.seed, "run seed (recorded in the manifest)");
    cluster->add_option("--out", klopt.out_dir, "output directory");

    GenOptions gopt;
    auto* gen = app.add_subcommand("gen", "generate synthetic graphs with ground truth");
    gen->add_option("--model", gopt.model, "sbm|mmb|rgg|gab|lab");
    gen->add_option("--n", gopt.n, "vertex count");
    gen->add_option("--k", gopt.k, "block count");
    gen->add_option("--pin", gopt.p_in, "within-block probability");
    gen->add_option("--pout", gopt.p_out, "between-block probability");
    gen->add_option("--nmixed", gopt.n_mixed, "mixed-membership node count (mmb)");
    gen->add_option("--a", gopt.a, "family parameter a (gab/lab)");
    gen->add_option("--b", gopt.b, "family parameter b (gab/lab)");
    gen->add_option("--dim", gopt.dim, "dimension (rgg)");
    gen->add_option("--radius", gopt.radius, "connection radius (rgg)");
    gen->add_flag("--weighted", gopt.weighted, "distance weights (rgg)");
    gen->add_option("--seed", gopt.seed, "generator seed");
    gen->add_option("--out", gopt.out, "output prefix");

    std::string truth_path, pred_path, eval_mode = "single";
    auto* eval = app.add_subcommand("eval", "NMI between two labelings");
    eval->add_option("--truth", truth_path, "reference labels CSV")->required();
    eval->add_option("--pred", pred_path, "predicted labels CSV")->required();
    eval->add_option("--mode", eval_mode, "single|mixed");

    BenchOptions bopt;
    auto* bench = app.add_subcommand("bench", "benchmark sweep over planted models");
    bench->add_option("--model", bopt.model, "sbm|mmb");
    bench->add_option("--n", bopt.sizes, "vertex counts")->delimiter(',');
    bench->add_option("--k", bopt.k, "block count");
    bench->add_option("--pin", bopt.p_in, "within-block probabilities")->delimiter(',');
    bench->add_option("--pout", bopt.p_out, "between-block probability");
    bench->add_option("--nmixed", bopt.n_mixed, "mixed node count (mmb)");
    bench->add_option("--variants", bopt.variants, "curvature variants")->delimiter(',');
    bench->add_option("--seeds", bopt.seeds, "admissible instances per cell");
    bench->add_option("--seed", bopt.seed, "master seed");
    bench->add_flag("--filter,!--no-filter", bopt.filter, "admissibility filter");
    bench->add_option("--out", bopt.out, "output CSV ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (curvature->parsed()) {
            NamedGraph ng = read_edge_list_file(copt.input);
            if (copt.out == "-") {
                write_curvature_rows(std::cout, ng, copt);
            } else {
                auto out = open_out(copt.out);
                write_curvature_rows(out, ng, copt);
            }
            return kExitOk;
        }
        if (linegraph->parsed()) {
            NamedGraph ng = read_edge_list_file(lg_input);
            auto lg = lg_weighted ? line_graph_weighted(ng.graph) : line_graph(ng.graph);
            NamedGraph named;
            named.graph = lg.line;
            for (int e = 0; e < ng.graph.edge_count(); ++e)
                named.names.push_back(ng.name(ng.graph.edge_u(e)) + "~" +
                                      ng.name(ng.graph.edge_v(e)));
            if (lg_out == "-") {
                write_edge_list(std::cout, named);
            } else {
                write_edge_list_file(lg_out, named);
            }
            return kExitOk;
        }
        if (cluster->parsed())
            return cmd_cluster(klopt);
        if (gen->parsed())
            return cmd_gen(gopt);
        if (eval->parsed())
            return cmd_eval(truth_path, pred_path, eval_mode);
        if (bench->parsed())
            return cmd_bench(bopt);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}
