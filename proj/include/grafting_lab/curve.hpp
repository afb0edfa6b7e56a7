#pragma once

// Simple closed curves as broken arcs over a pants decomposition.
//
// A curve is a cyclic sequence of arcs, each inside one pair of pants, joined
// at junctions on pants curves. An arc either follows the seam between two
// distinct boundary slots or is the return arc that leaves a boundary slot
// and comes back to it, separating the other two slots. At a junction the
// broken arc runs along the pants curve and then either crosses it into the
// neighbouring pants or stays on the same side.
//
// Positions along a boundary are measured in the slot's own coordinate x,
// increasing in the direction that keeps the pants interior on the left. The
// seam feet sit at x = 0 (towards the previous slot) and x = l/2 (towards the
// next slot); the return arc's feet sit at x = u and x = l - u with
// 0 < u < l/2. For homotopy bookkeeping those feet are labelled by quarter
// turns 0, 2, 1, 3.

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "grafting_lab/topology.hpp"

namespace grafting_lab {

struct Arc {
    int pant = 0;
    int from = 0;
    int to = 0;
    /// For return arcs: +1 leaves from the foot at u, -1 from the foot at l-u.
    int dir = 1;

    bool is_return() const { return from == to; }
    Arc reversed() const { return {pant, to, from, is_return() ? -dir : dir}; }
    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Quarter-turn label of the foot where an arc leaves its start slot.
inline int departure_quarter(const Arc& a) {
    if (a.is_return()) return a.dir > 0 ? 1 : 3;
    return a.to == next_slot(a.from) ? 2 : 0;
}

/// Quarter-turn label of the foot where an arc reaches its end slot.
inline int arrival_quarter(const Arc& a) {
    if (a.is_return()) return a.dir > 0 ? 3 : 1;
    return a.from == prev_slot(a.to) ? 0 : 2;
}

/// Representative of q modulo 4 in (-2, 2].
inline int reduce_quarters(int q) {
    int r = ((q % 4) + 4) % 4;
    if (r > 2) r -= 4;
    return r;
}

class CurveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// How consecutive arcs meet on a pants curve.
struct JunctionShape {
    int curve = -1;
    bool crossing = false;
    /// Departure-minus-arrival foot offset, in quarter turns, in the arrival
    /// slot's coordinates (twist excluded).
    int quarter_offset = 0;
    /// Half-turn marking offset applied on crossing (0 when not crossing).
    int marking_half_turns = 0;
};

inline JunctionShape junction_shape(const PantsDecomposition& d, const Arc& in, const Arc& out) {
    const Attachment arr{in.pant, in.to};
    const Attachment dep{out.pant, out.from};
    JunctionShape js;
    js.curve = d.curve_at(arr);
    if (js.curve == PantsDecomposition::kPuncture) throw CurveError("broken arc runs into a puncture");
    if (dep == arr) {
        js.crossing = false;
        js.quarter_offset = departure_quarter(out) - arrival_quarter(in);
        return js;
    }
    if (dep == d.partner(arr)) {
        js.crossing = true;
        js.marking_half_turns = d.curve(js.curve).marking;
        js.quarter_offset = 2 * js.marking_half_turns - departure_quarter(out) - arrival_quarter(in);
        return js;
    }
    throw CurveError("mismatched itinerary: arc in pant " + std::to_string(out.pant) +
                     " does not start where the previous arc ended");
}

/// A closed broken arc: arcs[i] is followed by junction i, which carries
/// windings[i] extra full turns along the junction's pants curve.
struct CurveClass {
    std::string id;
    std::vector<Arc> arcs;
    std::vector<int> windings;

    std::size_t size() const { return arcs.size(); }
    const Arc& next_arc(std::size_t i) const { return arcs[(i + 1) % arcs.size()]; }
};

/// Total signed displacement of junction i, in quarter turns.
inline int junction_quarters(const PantsDecomposition& d, const CurveClass& c, std::size_t i) {
    const JunctionShape js = junction_shape(d, c.arcs[i], c.next_arc(i));
    return reduce_quarters(js.quarter_offset) + 4 * c.windings[i];
}

/// Checks closure and matching of every junction.
inline void validate(const PantsDecomposition& d, const CurveClass& c) {
    if (c.arcs.empty()) throw CurveError("curve " + c.id + ": empty itinerary");
    if (c.windings.size() != c.arcs.size()) throw CurveError("curve " + c.id + ": winding count mismatch");
    for (const Arc& a : c.arcs) {
        if (a.pant < 0 || a.pant >= d.num_pants() || a.from < 0 || a.from > 2 || a.to < 0 || a.to > 2)
            throw CurveError("curve " + c.id + ": arc out of range");
        if (a.dir != 1 && a.dir != -1) throw CurveError("curve " + c.id + ": arc direction must be +1 or -1");
        if (d.curve_at(a.pant, a.from) == PantsDecomposition::kPuncture ||
            d.curve_at(a.pant, a.to) == PantsDecomposition::kPuncture)
            throw CurveError("curve " + c.id + ": arc touches a puncture");
    }
    for (std::size_t i = 0; i < c.size(); ++i) junction_shape(d, c.arcs[i], c.next_arc(i));
}

/// Number of junctions of the broken arc that cross pants curve j.
inline int intersection_number(const PantsDecomposition& d, const CurveClass& c, int j) {
    int n = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const JunctionShape js = junction_shape(d, c.arcs[i], c.next_arc(i));
        n += (js.crossing && js.curve == j);
    }
    return n;
}

inline std::vector<int> intersection_vector(const PantsDecomposition& d, const CurveClass& c) {
    std::vector<int> v(d.num_curves(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const JunctionShape js = junction_shape(d, c.arcs[i], c.next_arc(i));
        if (js.crossing) ++v[js.curve];
    }
    return v;
}

/// Builds a curve from arcs and per-junction total displacements (quarters),
/// converting displacements into winding counts.
inline CurveClass from_displacements(const PantsDecomposition& d, std::string id, std::vector<Arc> arcs,
                                     const std::vector<int>& quarters) {
    CurveClass c{std::move(id), std::move(arcs), std::vector<int>(quarters.size(), 0)};
    for (std::size_t i = 0; i < c.size(); ++i) {
        const JunctionShape js = junction_shape(d, c.arcs[i], c.next_arc(i));
        const int diff = quarters[i] - reduce_quarters(js.quarter_offset);
        if (diff % 4 != 0) throw CurveError("curve " + c.id + ": junction displacement is not a whole turn");
        c.windings[i] = diff / 4;
    }
    return c;
}

/// Canonical backtracking-free form.
///
/// Two reductions are applied until neither fires:
///  - an arc followed, without crossing and without winding, by its own
///    reverse is removed;
///  - a seam from slot a to slot b, exactly one turn around the pants curve in
///    slot b without crossing it, and the seam back to a are replaced by the
///    return arc at slot a.
/// Junction displacements next to a reduction are re-expressed so that the
/// homotopy class is unchanged.
inline CurveClass normalize_broken_arc(const PantsDecomposition& d, CurveClass c) {
    validate(d, c);
    bool changed = true;
    while (changed) {
        changed = false;
        const std::size_t n = c.size();
        std::vector<int> q(n);
        std::vector<bool> crossing(n);
        for (std::size_t i = 0; i < n; ++i) {
            q[i] = junction_quarters(d, c, i);
            crossing[i] = junction_shape(d, c.arcs[i], c.next_arc(i)).crossing;
        }
        for (std::size_t i = 0; i < n && !changed; ++i) {
            const std::size_t i1 = (i + 1) % n;
            const Arc& a = c.arcs[i];
            const Arc& b = c.arcs[i1];
            if (crossing[i] || b != a.reversed()) continue;

            if (q[i] == 0) {
                if (n <= 2) throw CurveError("curve " + c.id + ": itinerary is null-homotopic or peripheral");
                // Junction before a, the cancelled pair, junction after b.
                const std::size_t before = (i + n - 1) % n;
                const int merged = q[before] + (crossing[before] ? -q[i1] : q[i1]);
                std::vector<Arc> arcs;
                std::vector<int> quarters;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == i || k == i1) continue;
                    arcs.push_back(c.arcs[k]);
                    quarters.push_back(k == before ? merged : q[k]);
                }
                c = from_displacements(d, c.id, std::move(arcs), quarters);
                changed = true;
            } else if (!a.is_return() && (q[i] == 4 || q[i] == -4)) {
                // Seam a -> b, once around slot b, seam back. The loop is the
                // return arc at slot a, entered and left through slides along
                // the slot-a boundary.
                const bool via_next = a.to == next_slot(a.from);
                const int turn = q[i] > 0 ? 1 : -1;
                // The return arc runs the same way round as the loop; both its
                // feet sit one quarter from the seam feet they replace.
                const Arc ret{a.pant, a.from, a.from, via_next ? turn : -turn};
                const int slide_in = -turn;
                const int slide_out = -turn;
                if (n == 2) {
                    const int total = q[i1] + slide_out + (crossing[i1] ? -slide_in : slide_in);
                    c = from_displacements(d, c.id, {ret}, {total});
                    changed = true;
                    continue;
                }
                const std::size_t before = (i + n - 1) % n;
                std::vector<Arc> arcs;
                std::vector<int> quarters;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == i1) continue;
                    if (k == i) {
                        arcs.push_back(ret);
                        quarters.push_back(q[i1] + slide_out);
                        continue;
                    }
                    arcs.push_back(c.arcs[k]);
                    quarters.push_back(k == before ? q[k] + (crossing[before] ? -slide_in : slide_in) : q[k]);
                }
                c = from_displacements(d, c.id, std::move(arcs), quarters);
                changed = true;
            }
        }
    }
    return c;
}

/// The canonical curve meeting only pants curve j: two return arcs when the
/// curve separates two distinct pants, one seam when a single pant is glued
/// to itself along j.
inline CurveClass dual_curve(const PantsDecomposition& d, int j) {
    if (j < 0 || j >= d.num_curves()) throw CurveError("dual_curve: duals are only defined for pants curves");
    const PantsCurve& pc = d.curve(j);
    CurveClass c;
    c.id = "dual_" + pc.id;
    if (d.self_glued(j)) {
        c.arcs = {Arc{pc.ends[0].pant, pc.ends[0].slot, pc.ends[1].slot, 1}};
        c.windings = {0};
    } else {
        c.arcs = {Arc{pc.ends[0].pant, pc.ends[0].slot, pc.ends[0].slot, 1},
                  Arc{pc.ends[1].pant, pc.ends[1].slot, pc.ends[1].slot, 1}};
        c.windings = {0, 0};
    }
    validate(d, c);
    return c;
}

/// Applies k full Dehn twists about pants curve j.
inline CurveClass dehn_twist(const PantsDecomposition& d, CurveClass c, int j, int k = 1) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        const JunctionShape js = junction_shape(d, c.arcs[i], c.next_arc(i));
        if (js.crossing && js.curve == j) c.windings[i] += k;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Raw itineraries as written in curve catalogs.

struct RawStep {
    enum class Kind { Seam, Arc, Wind };
    Kind kind = Kind::Seam;
    // Seam: curve indices i -> j, optional pant. Arc: explicit pant/slots.
    // Wind: curve index and turn count.
    int first = 0;
    int second = 0;
    std::optional<int> pant;
    int from_slot = 0;
    int to_slot = 0;
    int dir = 1;
    int turns = 0;
};

namespace detail {

inline std::vector<Arc> seam_candidates(const PantsDecomposition& d, const RawStep& s) {
    std::vector<Arc> out;
    for (int p = 0; p < d.num_pants(); ++p) {
        if (s.pant && *s.pant != p) continue;
        for (int a = 0; a < 3; ++a) {
            if (d.curve_at(p, a) != s.first) continue;
            for (int b = 0; b < 3; ++b) {
                if (d.curve_at(p, b) != s.second) continue;
                if (a == b && s.first != s.second) continue;
                out.push_back(Arc{p, a, b, s.dir});
            }
        }
    }
    return out;
}

inline std::optional<std::vector<Arc>> resolve_from(const PantsDecomposition& d,
                                                    const std::vector<const RawStep*>& seams, Arc first) {
    std::vector<Arc> arcs{first};
    for (std::size_t k = 1; k < seams.size(); ++k) {
        const Arc& prev = arcs.back();
        const Attachment arr{prev.pant, prev.to};
        const Attachment cross = d.partner(arr);
        std::optional<Arc> pick;
        std::optional<Arc> stay;
        for (const Arc& c : seam_candidates(d, *seams[k])) {
            const Attachment dep{c.pant, c.from};
            if (dep == cross && !pick) pick = c;
            if (dep == arr && !stay) stay = c;
        }
        if (!pick) pick = stay;
        if (!pick) return std::nullopt;
        arcs.push_back(*pick);
    }
    const Arc& last = arcs.back();
    const Attachment arr{last.pant, last.to};
    const Attachment dep{first.pant, first.from};
    if (dep != arr && dep != d.partner(arr)) return std::nullopt;
    return arcs;
}

}  // namespace detail

/// Resolves a raw itinerary into arcs and windings, then normalizes it.
///
/// Seam steps name curve indices; when the pair of pants is not given the
/// next arc is taken on the far side of the junction curve (crossing) when
/// possible and on the near side otherwise. The first seam picks the first
/// candidate, in pant/slot order, for which the whole itinerary closes up.
inline CurveClass curve_from_itinerary(const PantsDecomposition& d, std::string id,
                                       const std::vector<RawStep>& steps) {
    std::vector<const RawStep*> seams;
    std::vector<int> wind_after;  // accumulated wind steps after each arc
    std::vector<int> wind_curve;
    int leading_wind = 0;
    int leading_curve = -1;
    for (const RawStep& s : steps) {
        if (s.kind == RawStep::Kind::Wind) {
            if (s.first < 0 || s.first >= d.num_curves()) throw CurveError("curve " + id + ": wind on unknown curve");
            if (seams.empty()) {
                leading_wind += s.turns;
                leading_curve = s.first;
            } else {
                wind_after.back() += s.turns;
                wind_curve.back() = s.first;
            }
            continue;
        }
        if (s.kind == RawStep::Kind::Seam &&
            (s.first < 0 || s.first >= d.num_curves() || s.second < 0 || s.second >= d.num_curves()))
            throw CurveError("curve " + id + ": seam on unknown curve");
        seams.push_back(&s);
        wind_after.push_back(0);
        wind_curve.push_back(-1);
    }
    if (seams.empty()) throw CurveError("curve " + id + ": itinerary has no seams");
    wind_after.back() += leading_wind;
    if (leading_curve >= 0) wind_curve.back() = leading_curve;

    std::vector<Arc> arcs;
    if (seams.front()->kind == RawStep::Kind::Arc) {
        const RawStep& s = *seams.front();
        if (auto r = detail::resolve_from(d, seams, Arc{*s.pant, s.from_slot, s.to_slot, s.dir})) arcs = *r;
    } else {
        for (const Arc& cand : detail::seam_candidates(d, *seams.front())) {
            if (auto r = detail::resolve_from(d, seams, cand)) {
                arcs = *r;
                break;
            }
        }
    }
    // Explicit arcs in later positions override resolution.
    for (std::size_t k = 0; k < seams.size() && !arcs.empty(); ++k) {
        if (seams[k]->kind == RawStep::Kind::Arc)
            arcs[k] = Arc{*seams[k]->pant, seams[k]->from_slot, seams[k]->to_slot, seams[k]->dir};
    }
    if (arcs.empty()) throw CurveError("curve " + id + ": itinerary does not close up");

    CurveClass c{std::move(id), std::move(arcs), wind_after};
    validate(d, c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (wind_curve[i] < 0) continue;
        const int j = d.curve_at(c.arcs[i].pant, c.arcs[i].to);
        if (j != wind_curve[i])
            throw CurveError("curve " + c.id + ": wind step names " + d.curve(wind_curve[i]).id +
                             " but the broken arc is on " + d.curve(j).id);
    }
    return normalize_broken_arc(d, std::move(c));
}

}  // namespace grafting_lab
