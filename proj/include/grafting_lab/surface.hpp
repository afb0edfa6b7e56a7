#pragma once

// Marked hyperbolic surfaces from Fenchel-Nielsen coordinates.
//
// Each pair of pants is two right-angled hexagons glued along the seams.
// Holonomy is computed by walking frames along broken arcs: seams and return
// arcs leave and meet boundaries at right angles, junctions slide along the
// pants curves, and crossing a pants curve turns the frame around into the
// neighbouring pants' coordinates. The gluing of the two sides of curve j is
// x_1 = (t_j + m_j/2) l_j - x_0, so increasing t_j slides the second side in
// the direction of the first side's x.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "grafting_lab/curve.hpp"
#include "grafting_lab/hyperbolic.hpp"
#include "grafting_lab/topology.hpp"

namespace grafting_lab {

struct FNCoords {
    std::vector<double> lengths;
    std::vector<double> twists;
};

struct PantGeometry {
    std::array<double, 3> half{};         // boundary half-lengths
    std::array<double, 3> seam{};         // seam[s] joins slot s and slot s+1
    std::array<double, 3> return_len{};   // full length of the return arc at slot s
    std::array<double, 3> return_foot{};  // foot u of the return arc at slot s
};

/// Holonomy of the fundamental group, based at the foot x = 0 of the first
/// side of the first pants curve (its axis is the imaginary axis there).
struct Holonomy {
    /// Boundary loop of each pants curve along its first side's orientation.
    std::vector<Mat2> curve_loops;
    /// Loops crossing each pants curve not used by the spanning tree
    /// (identity for tree curves).
    std::vector<Mat2> crossing_loops;
    std::vector<bool> is_tree_curve;
    /// Frame at the foot x = 0 of every attachment, indexed [pant][slot].
    std::vector<std::array<Mat2, 3>> frames;
};

class PantsSurface {
public:
    PantsSurface(PantsDecomposition topology, FNCoords coords)
        : topology_(std::move(topology)), coords_(std::move(coords)) {
        const int n = topology_.num_curves();
        if (static_cast<int>(coords_.lengths.size()) != n || static_cast<int>(coords_.twists.size()) != n)
            throw GeometryError("FN coordinate count does not match the number of pants curves");
        for (int j = 0; j < n; ++j) {
            if (!(coords_.lengths[j] > 0.0) || !std::isfinite(coords_.lengths[j]))
                throw GeometryError("curve " + topology_.curve(j).id + ": length must be positive");
            if (!std::isfinite(coords_.twists[j]))
                throw GeometryError("curve " + topology_.curve(j).id + ": twist must be finite");
        }
        pants_.resize(topology_.num_pants());
        for (int p = 0; p < topology_.num_pants(); ++p) {
            PantGeometry& g = pants_[p];
            for (int s = 0; s < 3; ++s) {
                const int j = topology_.curve_at(p, s);
                if (j == PantsDecomposition::kPuncture)
                    throw GeometryError("pant " + std::to_string(p) + ": cusped pants are not supported by the holonomy builder");
                g.half[s] = 0.5 * coords_.lengths[j];
            }
            for (int s = 0; s < 3; ++s) {
                g.seam[s] = hexagon_side(g.half[s], g.half[next_slot(s)], g.half[prev_slot(s)]);
                const HexagonPerpendicular hp =
                    hexagon_perpendicular(g.half[s], g.half[next_slot(s)], g.half[prev_slot(s)]);
                g.return_len[s] = 2.0 * hp.length;
                g.return_foot[s] = hp.foot;
            }
        }
        holonomy_ = holonomy_based_at(topology_.curve(0).ends[0]);
    }

    const PantsDecomposition& topology() const { return topology_; }
    const FNCoords& coords() const { return coords_; }
    const PantGeometry& pant(int p) const { return pants_.at(p); }
    double length(int j) const { return coords_.lengths.at(j); }
    double twist(int j) const { return coords_.twists.at(j); }
    const Holonomy& holonomy() const { return holonomy_; }

    /// The same representation conjugated so that the frame of `base` is the
    /// identity. Frames far from the base grow like exp(seam / 2) per pant,
    /// so local quantities are best read from a nearby base.
    Holonomy holonomy_based_at(Attachment base) const {
        Holonomy h;
        const int n = topology_.num_curves();
        const auto tree = topology_.spanning_tree(base.pant, base.slot);
        h.frames.assign(topology_.num_pants(), {Mat2{}, Mat2{}, Mat2{}});
        for (int p : tree.order) {
            int entry_slot = base.slot;
            Mat2 entry = Mat2::identity();
            if (p != base.pant) {
                const int j = tree.via_curve[p];
                const PantsCurve& pc = topology_.curve(j);
                const Attachment from = pc.ends[0].pant == tree.parent[p] && pc.ends[1].pant == p ? pc.ends[0] : pc.ends[1];
                const Attachment to = topology_.partner(from);
                entry = h.frames[from.pant][from.slot] * crossing_motion(j);
                entry_slot = to.slot;
            }
            for (int s = 0; s < 3; ++s) h.frames[p][s] = entry * within_pant(p, entry_slot, s);
        }
        h.curve_loops.resize(n);
        h.crossing_loops.assign(n, Mat2::identity());
        h.is_tree_curve = tree.tree_curve;
        for (int j = 0; j < n; ++j) {
            const PantsCurve& pc = topology_.curve(j);
            const Mat2& f0 = h.frames[pc.ends[0].pant][pc.ends[0].slot];
            h.curve_loops[j] = f0 * advance(coords_.lengths[j]) * f0.inverse();
            if (!tree.tree_curve[j]) {
                const Mat2& f1 = h.frames[pc.ends[1].pant][pc.ends[1].slot];
                h.crossing_loops[j] = f0 * crossing_motion(j) * f1.inverse();
            }
        }
        return h;
    }

    /// Actual position (slot coordinate) of the foot an arc leaves from.
    double departure_position(const Arc& a) const {
        const PantGeometry& g = pants_[a.pant];
        if (a.is_return()) {
            const double u = g.return_foot[a.from];
            return a.dir > 0 ? u : 2.0 * g.half[a.from] - u;
        }
        return a.to == next_slot(a.from) ? g.half[a.from] : 0.0;
    }

    double arrival_position(const Arc& a) const {
        const PantGeometry& g = pants_[a.pant];
        if (a.is_return()) {
            const double u = g.return_foot[a.to];
            return a.dir > 0 ? 2.0 * g.half[a.to] - u : u;
        }
        return a.from == prev_slot(a.to) ? 0.0 : g.half[a.to];
    }

    /// Frame motion along an arc: from facing +x at its departure foot to
    /// facing +x at its arrival foot.
    Mat2 arc_motion(const Arc& a) const {
        const PantGeometry& g = pants_[a.pant];
        double len = 0.0;
        if (a.is_return()) {
            len = g.return_len[a.from];
        } else {
            const int lo = a.to == next_slot(a.from) ? a.from : a.to;
            len = g.seam[lo];
        }
        return turn_left() * advance(len) * turn_left();
    }

    struct JunctionMotion {
        double displacement;
        bool crossing;
        Mat2 motion;
    };

    /// Slide along the junction curve, then turn around when crossing.
    JunctionMotion junction_motion(const Arc& in, const Arc& out, int winding) const {
        const JunctionShape js = junction_shape(topology_, in, out);
        const double ell = coords_.lengths[js.curve];
        const int total = reduce_quarters(js.quarter_offset) + 4 * winding;
        const int extra_turns = (total - js.quarter_offset) / 4;
        double dep = departure_position(out);
        if (js.crossing) dep = (coords_.twists[js.curve] + 0.5 * js.marking_half_turns) * ell - dep;
        const double d = dep - arrival_position(in) + extra_turns * ell;
        Mat2 m = advance(d);
        if (js.crossing) m = m * turn_around();
        return {d, js.crossing, m};
    }

    /// Holonomy of the broken arc, starting on the junction curve at the
    /// arrival foot of arc `start` and facing along its +x direction.
    Mat2 walk_from_junction(const CurveClass& c, std::size_t start) const {
        const std::size_t n = c.size();
        Mat2Accumulator acc;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = (start + k) % n;
            acc.push(junction_motion(c.arcs[i], c.next_arc(i), c.windings[i]).motion);
            acc.push(arc_motion(c.next_arc(i)));
        }
        return acc.value();
    }

    Mat2 walk(const CurveClass& c) const { return walk_from_junction(c, c.size() - 1); }

private:
    Mat2 crossing_motion(int j) const {
        const double ell = coords_.lengths[j];
        return advance((coords_.twists[j] + 0.5 * topology_.curve(j).marking) * ell) * turn_around();
    }

    /// From slot s at x = 0 to slot s2 at x = 0 inside one pant.
    Mat2 within_pant(int p, int s, int s2) const {
        const PantGeometry& g = pants_[p];
        if (s == s2) return Mat2::identity();
        if (s2 == prev_slot(s))
            return turn_left() * advance(g.seam[s2]) * turn_left() * advance(-g.half[s2]);
        return advance(g.half[s]) * turn_left() * advance(g.seam[s]) * turn_left();
    }

    PantsDecomposition topology_;
    FNCoords coords_;
    std::vector<PantGeometry> pants_;
    Holonomy holonomy_;
};

/// Base for reading coordinates of pants curve j: a neighbouring slot of its
/// first end, so the frames involved stay well conditioned.
inline Attachment reading_base(const PantsDecomposition& d, int j) {
    const Attachment e = d.curve(j).ends[0];
    return {e.pant, next_slot(e.slot)};
}

/// Hyperbolic length of the geodesic in the free homotopy class of c.
inline double geodesic_length(const PantsSurface& s, const CurveClass& c) { return trace_length(s.walk(c)); }

/// Boundary curve of a pants slot as a one-arc-free "curve": its holonomy is
/// a translation along the imaginary axis by the curve's length.
inline double pants_curve_length(const PantsSurface& s, int j) {
    return trace_length(s.holonomy_based_at(reading_base(s.topology(), j)).curve_loops.at(j));
}

/// Signed twisting number of c around pants curve j: the smallest value of
/// (p(a_r) - p(a_l)) / l_j over the crossings of c with j, with the lift of j
/// placed on the imaginary axis.
inline double twisting_number(const PantsSurface& s, const CurveClass& c, int j) {
    const PantsDecomposition& d = s.topology();
    bool any = false;
    double best = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const JunctionShape js = junction_shape(d, c.arcs[i], c.next_arc(i));
        if (!js.crossing || js.curve != j) continue;
        const Axis ax = axis_of(s.walk_from_junction(c, i));
        if (ax.repelling.at_infinity || ax.attracting.at_infinity)
            throw GeometryError("curve " + c.id + ": axis shares an endpoint with " + d.curve(j).id);
        // Facing up the imaginary axis, the right-hand side is the positive reals.
        const double e1 = ax.repelling.x;
        const double e2 = ax.attracting.x;
        if (!((e1 > 0.0 && e2 < 0.0) || (e1 < 0.0 && e2 > 0.0)))
            throw GeometryError("curve " + c.id + ": broken arc is not in minimal position with " + d.curve(j).id);
        const double right = e1 > 0.0 ? e1 : e2;
        const double left = e1 > 0.0 ? e2 : e1;
        const IdealPoint p0{0.0}, inf = IdealPoint::infinity();
        const double tw = (boundary_projection(p0, inf, IdealPoint{right}) - boundary_projection(p0, inf, IdealPoint{left})) /
                          s.length(j);
        if (!any || tw < best) best = tw;
        any = true;
    }
    if (!any) throw GeometryError("twisting undefined: " + c.id + " does not cross " + d.curve(j).id);
    return best;
}

/// Twist parameter of pants curve j recomputed from the holonomy: the signed
/// distance along j between the feet of the marking seams on its two sides,
/// divided by l_j.
inline double twist_parameter_readback(const PantsSurface& s, int j) {
    const PantsDecomposition& d = s.topology();
    const PantsCurve& pc = d.curve(j);
    // Based at j itself: the first frame is the identity and, when j joins two
    // different pants, j is a tree curve.
    const Holonomy h = s.holonomy_based_at(pc.ends[0]);
    const Mat2& f0 = h.frames[pc.ends[0].pant][pc.ends[0].slot];
    // Second side frame on the lift of j adjacent to the first side's lift.
    // Tree curves have an identity crossing loop.
    const Mat2 f1 = h.crossing_loops[j] * h.frames[pc.ends[1].pant][pc.ends[1].slot];
    // Work in the first side's frame: j's lift is the imaginary axis there.
    const Mat2 to_local = f0.inverse();
    const auto seam_foot = [&](const Mat2& frame, int pant, int slot) {
        // The seam at x = 0 runs to the previous slot; locate that boundary's
        // axis and take the foot of its common perpendicular with j.
        const PantGeometry& g = s.pant(pant);
        const int prev = prev_slot(slot);
        const Mat2 w = to_local * frame * turn_left() * advance(g.seam[prev]) * turn_left();
        const auto e0 = w.apply(0.0);
        const auto e1 = w.apply_infinity();
        if (!e0 || !e1) throw GeometryError("twist readback: degenerate boundary axis");
        const IdealPoint origin{0.0}, inf = IdealPoint::infinity();
        return 0.5 * (boundary_projection(origin, inf, IdealPoint{*e0}) + boundary_projection(origin, inf, IdealPoint{*e1}));
    };
    const double foot0 = seam_foot(f0, pc.ends[0].pant, pc.ends[0].slot);
    const double foot1 = seam_foot(f1, pc.ends[1].pant, pc.ends[1].slot);
    return (foot1 - foot0) / s.length(j) - 0.5 * pc.marking;
}

}  // namespace grafting_lab
