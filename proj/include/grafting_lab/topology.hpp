#pragma once

// Pants decompositions as trivalent graphs with boundary slots.
//
// Every pair of pants has three boundary slots numbered 0, 1, 2 in the cyclic
// order that a counter-clockwise walk around its front hexagon meets them.
// A slot is either one end of a pants curve or a puncture.

#include <array>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace grafting_lab {

class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Attachment {
    int pant = 0;
    int slot = 0;
    friend bool operator==(const Attachment&, const Attachment&) = default;
};

struct PantsCurve {
    std::string id;
    std::array<Attachment, 2> ends;
    /// Seam matching datum: which foot on the second side meets the first
    /// side's foot at zero twist, in half turns (0 or 1).
    int marking = 0;
};

inline int next_slot(int s) { return (s + 1) % 3; }
inline int prev_slot(int s) { return (s + 2) % 3; }

class PantsDecomposition {
public:
    static constexpr int kPuncture = -1;

    PantsDecomposition(int num_pants, std::vector<PantsCurve> curves)
        : curves_(std::move(curves)) {
        if (num_pants <= 0) throw TopologyError("decomposition needs at least one pair of pants");
        slots_.assign(num_pants, {kPuncture, kPuncture, kPuncture});
        for (int j = 0; j < num_curves(); ++j) {
            for (int e = 0; e < 2; ++e) {
                const Attachment& at = curves_[j].ends[e];
                if (at.pant < 0 || at.pant >= num_pants || at.slot < 0 || at.slot > 2)
                    throw TopologyError("curve " + curves_[j].id + ": attachment out of range");
                int& cell = slots_[at.pant][at.slot];
                if (cell != kPuncture)
                    throw TopologyError("curve " + curves_[j].id + ": slot already used by curve " +
                                        curves_[cell].id);
                cell = j;
            }
            if (curves_[j].marking != 0 && curves_[j].marking != 1)
                throw TopologyError("curve " + curves_[j].id + ": marking must be 0 or 1");
        }
        validate_connected();
        const int punctures = num_punctures();
        // Euler characteristic: 2 - 2g - p = -num_pants.
        const int two_g = num_pants + 2 - punctures;
        if (two_g < 0 || two_g % 2 != 0)
            throw TopologyError("inconsistent Euler characteristic");
        genus_ = two_g / 2;
        if (num_curves() != 3 * genus_ - 3 + punctures)
            throw TopologyError("curve count does not match 3g-3+p");
    }

    int num_pants() const { return static_cast<int>(slots_.size()); }
    int num_curves() const { return static_cast<int>(curves_.size()); }
    int genus() const { return genus_; }
    int num_punctures() const {
        int p = 0;
        for (const auto& s : slots_)
            for (int c : s) p += (c == kPuncture);
        return p;
    }

    const PantsCurve& curve(int j) const { return curves_.at(j); }
    const std::vector<PantsCurve>& curves() const { return curves_; }

    /// Curve index in a slot, or kPuncture.
    int curve_at(int pant, int slot) const { return slots_.at(pant).at(slot); }
    int curve_at(Attachment a) const { return curve_at(a.pant, a.slot); }

    /// The attachment on the other side of the curve in (pant, slot).
    Attachment partner(Attachment a) const {
        const int j = curve_at(a);
        if (j == kPuncture) throw TopologyError("puncture slot has no partner");
        const auto& ends = curves_[j].ends;
        return ends[0] == a ? ends[1] : ends[0];
    }

    /// Side index (0 or 1) of an attachment on its curve.
    int side_of(Attachment a) const {
        const int j = curve_at(a);
        if (j == kPuncture) throw TopologyError("puncture slot has no side");
        return curves_[j].ends[0] == a ? 0 : 1;
    }

    std::optional<int> find_curve(const std::string& id) const {
        for (int j = 0; j < num_curves(); ++j)
            if (curves_[j].id == id) return j;
        return std::nullopt;
    }

    /// Whether the two sides of curve j lie in the same pair of pants.
    bool self_glued(int j) const { return curves_[j].ends[0].pant == curves_[j].ends[1].pant; }

    /// Breadth-first spanning tree over pants: for each pant the curve used to
    /// reach it (or -1 for pant 0) and its parent pant.
    struct SpanningTree {
        std::vector<int> via_curve;
        std::vector<int> parent;
        std::vector<int> order;
        std::vector<bool> tree_curve;
    };

    /// Breadth-first tree of the pants graph. Slots of the root are explored
    /// starting from `first_slot`, so the curve there joins the tree whenever
    /// it leads to another pant.
    SpanningTree spanning_tree(int root, int first_slot = 0) const {
        SpanningTree t;
        t.via_curve.assign(num_pants(), -1);
        t.parent.assign(num_pants(), -1);
        t.tree_curve.assign(num_curves(), false);
        std::vector<bool> seen(num_pants(), false);
        std::queue<int> q;
        q.push(root);
        seen[root] = true;
        while (!q.empty()) {
            const int p = q.front();
            q.pop();
            t.order.push_back(p);
            for (int k = 0; k < 3; ++k) {
                const int s = p == root ? (first_slot + k) % 3 : k;
                const int j = slots_[p][s];
                if (j == kPuncture) continue;
                const Attachment other = partner({p, s});
                if (seen[other.pant]) continue;
                seen[other.pant] = true;
                t.via_curve[other.pant] = j;
                t.parent[other.pant] = p;
                t.tree_curve[j] = true;
                q.push(other.pant);
            }
        }
        return t;
    }

private:
    void validate_connected() const {
        const auto t = spanning_tree(0);
        if (static_cast<int>(t.order.size()) != num_pants())
            throw TopologyError("pants graph is not connected");
    }

    std::vector<PantsCurve> curves_;
    std::vector<std::array<int, 3>> slots_;
    int genus_ = 0;
};

/// Genus-two decomposition into two pants glued along three curves.
inline PantsDecomposition genus_two_theta() {
    std::vector<PantsCurve> curves;
    for (int j = 0; j < 3; ++j)
        curves.push_back({"g" + std::to_string(j + 1), {Attachment{0, j}, Attachment{1, j}}, 0});
    return PantsDecomposition(2, std::move(curves));
}

/// Genus-two decomposition with two self-glued pants joined by a separating curve.
/// The self-glued curves are marked so that at zero twist the seam between
/// their two sides closes up.
inline PantsDecomposition genus_two_dumbbell() {
    std::vector<PantsCurve> curves = {
        {"g1", {Attachment{0, 0}, Attachment{0, 1}}, 1},
        {"g2", {Attachment{0, 2}, Attachment{1, 2}}, 0},
        {"g3", {Attachment{1, 0}, Attachment{1, 1}}, 1},
    };
    return PantsDecomposition(2, std::move(curves));
}

}  // namespace grafting_lab
