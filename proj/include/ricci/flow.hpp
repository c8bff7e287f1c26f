#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "ricci/frc.hpp"
#include "ricci/graph.hpp"
#include "ricci/orc.hpp"

namespace ricci {

enum class CurvatureKind {
    OrcExact,    // ORC-E
    OrcSinkhorn, // ORC-S
    OrcApprox,   // ORC-A
    OrcApproxA1, // ORC-A1
    Frc1,
    Frc2,
    Frc3,
};

const char* curvature_name(CurvatureKind k);
bool is_orc(CurvatureKind k);

enum class CutoffScheme { OrcUniform, FrcQuantile };

struct FlowConfig {
    CurvatureKind curvature = CurvatureKind::OrcApprox;
    double nu = 1.0;          // constant step size (ORC default)
    bool adaptive_nu = false; // nu_t = 1/(1.1 max|kappa|), FRC default
    int iterations = 10;      // T
    double epsilon = 1e-4;    // modularity floor
    double epsilon_drop = 0.1;
    CutoffScheme cutoff = CutoffScheme::OrcUniform;
    MeasureMode measure = MeasureMode::exponential(0.0, 1.0);
    SinkhornParams sinkhorn;
    bool renormalize = true; // rescale so Σ w = |E| after each step
    uint64_t seed = 0;

    static FlowConfig with_curvature(CurvatureKind k);
};

// Per-line-edge face sets (edge-id lists) restricting FRC-3 on a line
// graph to triangles plus base-quadrangle faces.
struct LineFaceTable {
    std::vector<std::vector<std::vector<int>>> per_edge;
    static LineFaceTable build(const LineGraphMap& lg, const Graph& base);
};

struct FlowState {
    // weights[t] holds edge weights after t iterations; weights[0] is the
    // initial assignment. curvature[t-1] holds the values used in step t.
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> curvature;

    const std::vector<double>& final_weights() const { return weights.back(); }
};

// One Ricci-flow update on the current graph: compute curvature, evolve
// w <- (1 - nu kappa) d_G(u,v), then renormalize. Returns (kappa, new w).
std::pair<std::vector<double>, std::vector<double>>
flow_step(const Graph& g_t, const FlowConfig& cfg, const LineFaceTable* line_faces = nullptr);

FlowState run_flow(const Graph& g, const FlowConfig& cfg,
                   const LineFaceTable* line_faces = nullptr);

// Descending cut-off grid with step 0.025 from the max weight down to
// ((max - 1) mod 0.025) + 1.
std::vector<double> cutoffs_orc(std::span<const double> final_weights);

// Two-phase grid: distinct weights down to the 0.999 quantile, then steps
// of 0.25 down to ((w_q - 1.1 w_min) mod 0.25) + 1.1 w_min.
std::vector<double> cutoffs_frc(std::span<const double> final_weights);

struct Labeling {
    std::vector<int> label;
    int k = 0;
};

// Weighted Newman modularity over ordered vertex pairs.
double modularity(const Graph& g, const Labeling& l);

struct CutSelection {
    std::optional<Labeling> labels;
    double q_best = 0;
    double cutoff = std::numeric_limits<double>::quiet_NaN();
};

// Sweep the cutoffs: cut edges with final weight > x, label by connected
// components, score by modularity on the original graph, keep the best
// subject to the drop condition. labels is empty when Q_best <= epsilon.
CutSelection cut_and_select(const Graph& original, std::span<const double> final_weights,
                            std::span<const double> cutoffs, const FlowConfig& cfg);

struct SingleResult {
    Labeling labels;
    double q_best = 0;
    double cutoff = std::numeric_limits<double>::quiet_NaN();
    FlowState flow; // of the largest processed component
};

// Full single-membership pipeline; disconnected inputs run per component
// with offset labels. Empty result when no structure is found.
std::optional<SingleResult> cluster_single(const Graph& g, const FlowConfig& cfg);

struct MixedLabeling {
    std::vector<std::vector<double>> y;     // per vertex, length k
    std::vector<std::vector<int>> members;  // thresholded memberships
    int k = 0;
};

struct MixedResult {
    MixedLabeling labels;
    Labeling edge_labels; // per base edge
    double q_best = 0;
};

// Mixed-membership pipeline on the (unit edge weight) line graph; per
// vertex affiliations y_l(v) = |incident edges in cluster l| / |E_v|,
// memberships by 2-norm normalization and threshold 0.8/k.
std::optional<MixedResult> cluster_mixed(const Graph& g, const FlowConfig& cfg);

} // namespace ricci
