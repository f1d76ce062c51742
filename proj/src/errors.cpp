#include "curvebill/errors.hpp"

namespace curvebill {

std::string to_string(CollisionFailure f)
{
    switch (f) {
    case CollisionFailure::corner_hit: return "corner_hit";
    case CollisionFailure::grazing_reflection: return "grazing_reflection";
    default: return "no_intersection";
    }
}

void rethrow_with_bounce(const BilliardError& err, int bounce)
{
    const std::string what = std::string(err.what()) + " (bounce " + std::to_string(bounce) + ")";
    switch (err.kind()) {
    case CollisionFailure::corner_hit: throw CornerHit(what, bounce);
    case CollisionFailure::grazing_reflection: throw GrazingReflection(what, bounce);
    default: throw NoIntersection(what, bounce);
    }
}

}  // namespace curvebill
