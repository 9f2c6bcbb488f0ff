#pragma once

#include <string>

namespace peridyn {

enum class CutoffKind {
    /// chi = 1 on [0, 1), 0 from 1 on.
    Indicator,
    /// chi = 1 on [0, 1/2], cubic bridge down to 0 on [1/2, 1].
    PlateauSmooth,
};

/// Radial bond cutoff profile. Every profile satisfies
///   chi(r) = 1 for r in [0, 1/2],  chi(r) = 0 for r >= 1,
///   0 <= chi <= 1, chi non-increasing.
/// The PlateauSmooth bridge on [1/2, 1] is the unique cubic h with
/// h(1/2) = 1, h(1) = 0, h'(1/2) = h'(1) = 0.
struct CutoffProfile {
    CutoffKind kind = CutoffKind::Indicator;
};

/// chi(r) for r >= 0. Negative r is a DomainError.
double cutoff_eval(const CutoffProfile& profile, double r);

std::string cutoff_name(CutoffKind kind);
CutoffKind cutoff_from_name(const std::string& name);

} // namespace peridyn
