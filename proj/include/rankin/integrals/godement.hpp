#pragma once

#include "rankin/integrals/strip.hpp"
#include "rankin/iwasawa.hpp"

namespace rankin {

enum class GodementKind { Plus, Circ };

/// Pointwise value of g+(f', phi) or g°(f, phi) at g, with the formal ratios of its Tate integrals.
inline IntegralResult godement_eval(GodementKind kind, const Section& child, const MultChar& chi, const Schwartz& phi,
                                    const Mat& g) {
    Section node = kind == GodementKind::Plus ? godement_plus(child, chi, phi) : godement_circ(child, chi, phi);
    IntegralResult r;
    r.exact = section_eval(node, g);
    long p = node->p;
    if (kind == GodementKind::Plus) {
        if (node->rank == 2) {
            MultChar w = child->chars[0].inverse() * chi.twisted(Q(1));
            tate_line(phi, {g(0, 0), g(0, 1)}, w.at_uniformizer(p), &r.log);
        }
    } else if (node->rank == 1) {
        tate_line(phi, {Q(1)}, (child->chars[0] * chi).at_uniformizer(p), &r.log);
    } else {
        Schwartz unit = Schwartz::lattice(p, 1, 1, 0);
        for (const auto& w : child->chars) tate_line(unit, {Q(1)}, (w * chi).at_uniformizer(p), &r.log);
    }
    return r;
}

}  // namespace rankin
