#include "ricci/frc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ricci {

double heron_weight(double a, double b, double c) {
    if (!(a > 0) || !(b > 0) || !(c > 0))
        throw std::invalid_argument("heron_weight: side weights must be positive");
    double s = (a + b + c) / 2;
    double prod = s * (s - a) * (s - b) * (s - c);
    double scale = s * s * s * s;
    if (prod < -1e-12 * scale)
        throw std::invalid_argument("heron_weight: triangle inequality violated");
    if (prod < 0)
        prod = 0;
    return std::sqrt(prod);
}

double quad_weight(std::array<double, 4> w) {
    for (double x : w)
        if (!(x > 0))
            throw std::invalid_argument("quad_weight: side weights must be positive");
    std::sort(w.begin(), w.end(), std::greater<>());
    auto [wi, wj, wk, wl] = w;
    auto inner = [](double base, double s1, double s2) {
        double a = heron_weight(base, s1, s2);
        if (a == 0)
            throw std::invalid_argument("quad_weight: degenerate trapezoid");
        return a;
    };
    if (wi > wj) {
        // Longest pair parallel: trapezoid from the triangle with base wi - wj.
        double area = inner(wi - wj, wk, wl);
        return area * (1 + 2 * wj / (wi - wj));
    }
    if (wk > wl) {
        double area = inner(wk - wl, wi, wj);
        return area * (1 + 2 * wl / (wk - wl));
    }
    return wi * wk; // rectangle
}

namespace {

// Appends the face unless the weight is unusable and skipping is allowed.
template <typename Eval>
void push_face(std::vector<Face>& faces, std::vector<int> edges, Eval&& eval,
               bool skip_unrealizable) {
    double w;
    if (skip_unrealizable) {
        try {
            w = eval();
        } catch (const std::invalid_argument&) {
            return;
        }
        if (!(w > 0))
            return;
    } else {
        w = eval();
    }
    faces.push_back({std::move(edges), w});
}

} // namespace

std::vector<Face> triangle_faces(const Graph& g, int e, const FaceWeightScheme& fw,
                                 bool skip_unrealizable) {
    Vertex u = g.edge_u(e), v = g.edge_v(e);
    std::vector<Face> faces;
    auto au = g.arcs(u);
    auto av = g.arcs(v);
    auto i = au.begin();
    auto j = av.begin();
    while (i != au.end() && j != av.end()) {
        if (i->to < j->to)
            ++i;
        else if (j->to < i->to)
            ++j;
        else {
            push_face(faces, {e, i->edge, j->edge},
                      [&] { return fw.triangle(g.edge_weight(e), i->w, j->w); },
                      skip_unrealizable);
            ++i;
            ++j;
        }
    }
    return faces;
}

std::vector<Face> quad_faces(const Graph& g, int e, const FaceWeightScheme& fw,
                             bool skip_unrealizable) {
    std::vector<Face> faces;
    for (const Graph::Quad& q : g.quadrangles_through(e)) {
        std::array<double, 4> w{g.edge_weight(q.edge[0]), g.edge_weight(q.edge[1]),
                                g.edge_weight(q.edge[2]), g.edge_weight(q.edge[3])};
        push_face(faces, {q.edge[0], q.edge[1], q.edge[2], q.edge[3]},
                  [&] { return fw.quad(w); }, skip_unrealizable);
    }
    return faces;
}

double frc_2complex_edge(const Graph& g, int e, std::span<const Face> faces) {
    Vertex v1 = g.edge_u(e), v2 = g.edge_v(e);
    double we = g.edge_weight(e);

    double face_term = 0;
    // Per candidate parallel edge: sum of sqrt(w_e w_ê)/w_f over shared faces.
    std::map<int, double> face_sums;
    for (const Face& f : faces) {
        if (!(f.weight > 0))
            throw std::invalid_argument("frc: degenerate face weight");
        face_term += we / f.weight;
        for (int other : f.edges) {
            if (other == e)
                continue;
            face_sums[other] += std::sqrt(we * g.edge_weight(other)) / f.weight;
        }
    }

    double parallel_term = 0;
    auto co_vertex_value = [&](Vertex shared, int other) {
        return g.vertex_weight(shared) / std::sqrt(we * g.edge_weight(other));
    };
    // Edges sharing a vertex with e.
    for (Vertex end : {v1, v2}) {
        for (const Graph::Arc& a : g.arcs(end)) {
            if (a.edge == e)
                continue;
            auto it = face_sums.find(a.edge);
            if (it != face_sums.end())
                continue; // shares a vertex and a face: not parallel
            parallel_term += std::abs(-co_vertex_value(end, a.edge));
        }
    }
    // Edges sharing a face but no vertex with e.
    for (const auto& [other, face_sum] : face_sums) {
        Vertex a = g.edge_u(other), b = g.edge_v(other);
        bool shares_vertex = a == v1 || a == v2 || b == v1 || b == v2;
        if (shares_vertex)
            continue;
        parallel_term += std::abs(face_sum);
    }

    return we * (face_term + g.vertex_weight(v1) / we + g.vertex_weight(v2) / we -
                 parallel_term);
}

double frc1_edge(const Graph& g, int e) {
    Vertex v1 = g.edge_u(e), v2 = g.edge_v(e);
    double we = g.edge_weight(e);
    double sum = 0;
    for (Vertex end : {v1, v2})
        for (const Graph::Arc& a : g.arcs(end))
            if (a.edge != e)
                sum += g.vertex_weight(end) / std::sqrt(we * a.w);
    return we * (g.vertex_weight(v1) / we + g.vertex_weight(v2) / we - sum);
}

double frc2_edge(const Graph& g, int e, const FaceWeightScheme& fw) {
    auto faces = triangle_faces(g, e, fw);
    return frc_2complex_edge(g, e, faces);
}

double frc3_edge(const Graph& g, int e, const FaceWeightScheme& fw) {
    auto faces = triangle_faces(g, e, fw);
    auto quads = quad_faces(g, e, fw);
    faces.insert(faces.end(), quads.begin(), quads.end());
    return frc_2complex_edge(g, e, faces);
}

double frc_vertex(const Graph& g, Vertex v, FrcVariant variant, const FaceWeightScheme& fw) {
    double sum = 0;
    for (const Graph::Arc& a : g.arcs(v)) {
        switch (variant) {
        case FrcVariant::One:
            sum += frc1_edge(g, a.edge);
            break;
        case FrcVariant::Two:
            sum += frc2_edge(g, a.edge, fw);
            break;
        case FrcVariant::Three:
            sum += frc3_edge(g, a.edge, fw);
            break;
        }
    }
    return sum;
}

namespace {

void require_unit_weights(const Graph& g, const char* who) {
    if (!g.unit_edge_weights())
        throw std::invalid_argument(std::string(who) + ": requires unit edge weights");
}

void require_unit_vertex_weights(const Graph& g, const char* who) {
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.vertex_weight(v) != 1.0)
            throw std::invalid_argument(std::string(who) + ": requires unit vertex weights");
}

// Shared endpoint of two adjacent edges, or throw.
Vertex shared_endpoint(const Graph& g, int e1, int e2, const char* who) {
    if (e1 == e2)
        throw std::invalid_argument(std::string(who) + ": edges must be distinct");
    Vertex a = g.edge_u(e1), b = g.edge_v(e1);
    Vertex c = g.edge_u(e2), d = g.edge_v(e2);
    Vertex shared = -1;
    int count = 0;
    for (Vertex s : {a, b})
        if (s == c || s == d) {
            shared = s;
            ++count;
        }
    if (count != 1)
        throw std::invalid_argument(std::string(who) + ": edges are not adjacent");
    return shared;
}

} // namespace

double line_frc1_from_base(const Graph& g, int e1, int e2) {
    shared_endpoint(g, e1, e2, "line_frc1_from_base");
    require_unit_weights(g, "line_frc1_from_base");
    return frc1_edge(g, e1) + frc1_edge(g, e2);
}

double line_frc1_vertex_from_base(const Graph& g, int e) {
    require_unit_weights(g, "line_frc1_vertex_from_base");
    double ric_e = frc1_edge(g, e);
    return frc_vertex(g, g.edge_u(e), FrcVariant::One) +
           frc_vertex(g, g.edge_v(e), FrcVariant::One) - ric_e * ric_e;
}

double line_frc1_weighted_from_base(const Graph& g, int e1, int e2) {
    shared_endpoint(g, e1, e2, "line_frc1_weighted_from_base");
    require_unit_vertex_weights(g, "line_frc1_weighted_from_base");
    double w1 = g.edge_weight(e1), w2 = g.edge_weight(e2);
    double r1 = frc1_edge(g, e1), r2 = frc1_edge(g, e2);
    return w1 * (2 - std::sqrt(w2 / w1) * (2 - r1)) + w2 * (2 - std::sqrt(w1 / w2) * (2 - r2));
}

double line_frc2_triangles_closed_form(const Graph& g, int e1, int e2, double tri_weight) {
    Vertex v = shared_endpoint(g, e1, e2, "line_frc2_triangles_closed_form");
    require_unit_weights(g, "line_frc2_triangles_closed_form");
    Vertex u = g.edge_u(e1) == v ? g.edge_v(e1) : g.edge_u(e1);
    Vertex w = g.edge_u(e2) == v ? g.edge_v(e2) : g.edge_u(e2);
    double du = g.neighbor_count(u);
    double dv = g.neighbor_count(v);
    double dw = g.neighbor_count(w);
    double ind = g.has_edge(u, w) ? 1.0 : 0.0;
    return dv / tri_weight - du - dw + 4 - 2 / tri_weight + (1 / tri_weight + 2) * ind;
}

namespace {

double line_edge_weight(const Graph& g, int a, int b) {
    return std::sqrt(g.edge_weight(a) * g.edge_weight(b));
}

} // namespace

double line_frc3_edge(const Graph& g, int e1, int e2, const FaceWeightScheme& fw) {
    Vertex v = shared_endpoint(g, e1, e2, "line_frc3_edge");
    Vertex u = g.edge_u(e1) == v ? g.edge_v(e1) : g.edge_u(e1);
    Vertex w = g.edge_u(e2) == v ? g.edge_v(e2) : g.edge_u(e2);
    double w1 = g.edge_weight(e1), w2 = g.edge_weight(e2);
    double we = std::sqrt(w1 * w2);

    double face_term = 0;
    // Triangles in L: edges {v,v'} at the shared vertex, plus {u,w}.
    std::vector<int> tri_partner; // base edge forming the triangle
    for (const Graph::Arc& a : g.arcs(v)) {
        if (a.to == u || a.to == w)
            continue;
        tri_partner.push_back(a.edge);
    }
    int uw = g.find_edge(u, w);
    if (uw >= 0)
        tri_partner.push_back(uw);
    for (int f : tri_partner) {
        double wf = fw.triangle(we, line_edge_weight(g, e1, f), line_edge_weight(g, e2, f));
        if (!(wf > 0))
            throw std::invalid_argument("line_frc3_edge: degenerate face weight");
        face_term += we / wf;
    }

    // Quadrangles in L arise from base 4-cycles (u,v,w,x).
    struct QuadInfo {
        int wx, xu;     // base edges
        double opposite; // weight of the line edge ({w,x},{x,u})
        double wf;
    };
    std::vector<QuadInfo> quads;
    for (const Graph::Arc& ax : g.arcs(u)) {
        Vertex x = ax.to;
        if (x == v || x == w)
            continue;
        int wx = g.find_edge(w, x);
        if (wx < 0)
            continue;
        std::array<double, 4> sides{we, line_edge_weight(g, e2, wx),
                                    line_edge_weight(g, wx, ax.edge),
                                    line_edge_weight(g, ax.edge, e1)};
        double wf = fw.quad(sides);
        quads.push_back({wx, ax.edge, sides[2], wf});
        face_term += we / wf;
    }

    double parallel_term = 0;
    // Opposite line edges of quadrangle faces share the face but no vertex.
    for (const QuadInfo& q : quads)
        parallel_term += std::abs(std::sqrt(we * q.opposite) / q.wf);

    // Co-vertex parallels at line vertex e1: edges {u,u'} not absorbed in a
    // face. Triangle partners at v and quadrangle side edges are excluded.
    for (const Graph::Arc& a : g.arcs(u)) {
        if (a.to == v)
            continue;
        if (a.to == w && uw >= 0)
            continue; // {u,w} is a triangle partner
        bool in_quad = false;
        for (const QuadInfo& q : quads)
            if (q.xu == a.edge)
                in_quad = true;
        if (in_quad)
            continue;
        parallel_term += g.edge_weight(e1) / std::sqrt(we * line_edge_weight(g, e1, a.edge));
    }
    // Same at line vertex e2: edges {w,w'}.
    for (const Graph::Arc& a : g.arcs(w)) {
        if (a.to == v)
            continue;
        if (a.to == u && uw >= 0)
            continue;
        bool in_quad = false;
        for (const QuadInfo& q : quads)
            if (q.wx == a.edge)
                in_quad = true;
        if (in_quad)
            continue;
        parallel_term += g.edge_weight(e2) / std::sqrt(we * line_edge_weight(g, e2, a.edge));
    }

    return we * (face_term + w1 / we + w2 / we - parallel_term);
}

std::vector<std::vector<int>> line_face_ids(const LineGraphMap& lg, const Graph& base,
                                            int e1, int e2) {
    Vertex v = shared_endpoint(base, e1, e2, "line_face_ids");
    Vertex u = base.edge_u(e1) == v ? base.edge_v(e1) : base.edge_u(e1);
    Vertex w = base.edge_u(e2) == v ? base.edge_v(e2) : base.edge_u(e2);
    const Graph& l = lg.line;
    auto line_id = [&](int a, int b) {
        int id = l.find_edge(a, b);
        if (id < 0)
            throw std::logic_error("line_face_ids: expected line edge missing");
        return id;
    };
    int center = line_id(e1, e2);

    std::vector<std::vector<int>> faces;
    for (const Graph::Arc& a : base.arcs(v)) {
        if (a.to == u || a.to == w)
            continue;
        faces.push_back({center, line_id(e1, a.edge), line_id(e2, a.edge)});
    }
    int uw = base.find_edge(u, w);
    if (uw >= 0)
        faces.push_back({center, line_id(e1, uw), line_id(e2, uw)});
    for (const Graph::Arc& ax : base.arcs(u)) {
        Vertex x = ax.to;
        if (x == v || x == w)
            continue;
        int wx = base.find_edge(w, x);
        if (wx < 0)
            continue;
        faces.push_back({center, line_id(e2, wx), line_id(wx, ax.edge), line_id(ax.edge, e1)});
    }
    return faces;
}

std::vector<Face> build_faces(const Graph& g, std::span<const std::vector<int>> ids,
                              const FaceWeightScheme& fw, bool skip_unrealizable) {
    std::vector<Face> faces;
    faces.reserve(ids.size());
    for (const auto& f : ids) {
        if (f.size() == 3) {
            push_face(faces, f,
                      [&] {
                          return fw.triangle(g.edge_weight(f[0]), g.edge_weight(f[1]),
                                             g.edge_weight(f[2]));
                      },
                      skip_unrealizable);
        } else if (f.size() == 4) {
            push_face(faces, f,
                      [&] {
                          return fw.quad({g.edge_weight(f[0]), g.edge_weight(f[1]),
                                          g.edge_weight(f[2]), g.edge_weight(f[3])});
                      },
                      skip_unrealizable);
        } else {
            throw std::invalid_argument("build_faces: faces must have 3 or 4 edges");
        }
    }
    return faces;
}

} // namespace ricci
