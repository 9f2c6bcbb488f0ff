#include "peridyn/cutoff.hpp"

#include "peridyn/errors.hpp"

namespace peridyn {

double cutoff_eval(const CutoffProfile& profile, double r) {
    if (r < 0.0) {
        throw DomainError("cutoff_eval: radius must be nonnegative");
    }
    if (r <= 0.5) return 1.0;
    if (r >= 1.0) return 0.0;
    switch (profile.kind) {
        case CutoffKind::Indicator:
            return 1.0;
        case CutoffKind::PlateauSmooth: {
            const double s = 2.0 * (r - 0.5); // bridge coordinate in [0, 1]
            return 1.0 + s * s * (2.0 * s - 3.0);
        }
    }
    throw DomainError("cutoff_eval: unknown cutoff kind");
}

std::string cutoff_name(CutoffKind kind) {
    return kind == CutoffKind::Indicator ? "indicator" : "plateau";
}

CutoffKind cutoff_from_name(const std::string& name) {
    if (name == "indicator") return CutoffKind::Indicator;
    if (name == "plateau" || name == "plateau_smooth") return CutoffKind::PlateauSmooth;
    throw ConfigError("unknown cutoff profile '" + name + "' (expected indicator or plateau)");
}

} // namespace peridyn
