#pragma once

#include <array>
#include <span>
#include <vector>

#include "ricci/graph.hpp"

namespace ricci {

// Heron face weight for a triangle with side weights a, b, c. Returns 0
// when the triangle inequality is tight; throws when it is violated.
double heron_weight(double a, double b, double c);

// Trapezoid/rectangle weight for a quadrangle from its four side weights
// (any order). Throws when the inner triangle is degenerate or the
// trapezoid is not realizable.
double quad_weight(std::array<double, 4> w);

// Face-weight rules used by the 2-complex FRC variants: Heron for
// triangles, the three-case trapezoid rule for quadrangles.
struct FaceWeightScheme {
    double triangle(double a, double b, double c) const { return heron_weight(a, b, c); }
    double quad(std::array<double, 4> w) const { return quad_weight(w); }
};

enum class FrcVariant { One = 1, Two = 2, Three = 3 };

// A 2-face described by the ids of its boundary edges plus its weight.
struct Face {
    std::vector<int> edges;
    double weight = 1.0;
};

// skip_unrealizable drops faces whose side weights cannot embed (violated
// or tight triangle inequality) instead of throwing; the Ricci flow uses
// this so faces that lose realizability mid-flow stop contributing.
std::vector<Face> triangle_faces(const Graph& g, int e, const FaceWeightScheme& fw = {},
                                 bool skip_unrealizable = false);
std::vector<Face> quad_faces(const Graph& g, int e, const FaceWeightScheme& fw = {},
                             bool skip_unrealizable = false);

// 2-complex FRC of an edge with an explicit face set. An edge is parallel
// to e when it shares a vertex or a face with it, but not both; each
// parallel edge contributes |co-face terms - co-vertex terms|.
double frc_2complex_edge(const Graph& g, int e, std::span<const Face> faces);

// 1-complex FRC; unit weights reduce to 4 - d_{v1} - d_{v2}.
double frc1_edge(const Graph& g, int e);

// Sum of adjacent-edge FRC of the given variant; 0 for isolated vertices.
double frc_vertex(const Graph& g, Vertex v, FrcVariant variant,
                  const FaceWeightScheme& fw = {});

// Augmented FRC with triangular faces.
double frc2_edge(const Graph& g, int e, const FaceWeightScheme& fw = {});

// 2-complex FRC with triangular and quadrangular faces.
double frc3_edge(const Graph& g, int e, const FaceWeightScheme& fw = {});

// Ric_F^{L(G)}({e1,e2}) = Ric_F^G(e1) + Ric_F^G(e2) (unit weights).
double line_frc1_from_base(const Graph& g, int e1, int e2);

// Ric_F^{L(G)}(e) = Ric_F^G(u) + Ric_F^G(v) - Ric_F^G(e)^2 (unit weights).
double line_frc1_vertex_from_base(const Graph& g, int e);

// Weighted identity for line edge weights w_{e1} * w_{e2} and unit vertex
// weights.
double line_frc1_weighted_from_base(const Graph& g, int e1, int e2);

// Closed form for the triangles-only 2-complex FRC in the line graph of a
// unit-weight base graph, with every triangle assigned tri_weight.
double line_frc2_triangles_closed_form(const Graph& g, int e1, int e2, double tri_weight);

// 2-complex FRC (k <= 4) of the line edge {e1,e2}, evaluated from base
// structure with the sqrt line edge-weight scheme. Quadrangle faces come
// from base 4-cycles only.
double line_frc3_edge(const Graph& g, int e1, int e2, const FaceWeightScheme& fw = {});

// Face set (triangles plus base-quadrangle faces) of the line edge
// {e1,e2}, as edge-id lists of the materialized line graph. Weights are
// evaluated separately so the same combinatorial faces can be reused as
// line weights evolve.
std::vector<std::vector<int>> line_face_ids(const LineGraphMap& lg, const Graph& base,
                                            int e1, int e2);

// Builds weighted faces from edge-id lists: three ids give a Heron
// triangle, four a trapezoid quadrangle.
std::vector<Face> build_faces(const Graph& g, std::span<const std::vector<int>> ids,
                              const FaceWeightScheme& fw = {},
                              bool skip_unrealizable = false);

} // namespace ricci
