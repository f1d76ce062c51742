#pragma once

#include <stdexcept>
#include <string>

namespace curvebill {

enum class CollisionFailure { corner_hit, grazing_reflection, no_intersection };

std::string to_string(CollisionFailure f);

/// Base for the billiard-map failure modes. `bounce` is the zero-based index
/// of the collision that failed when the error comes out of an orbit
/// iteration, and -1 otherwise.
class BilliardError : public std::runtime_error {
public:
    BilliardError(CollisionFailure kind, const std::string& what, int bounce = -1)
        : std::runtime_error(what), kind_(kind), bounce_(bounce) {}

    CollisionFailure kind() const noexcept { return kind_; }
    int bounce() const noexcept { return bounce_; }

private:
    CollisionFailure kind_;
    int bounce_;
};

class CornerHit : public BilliardError {
public:
    explicit CornerHit(const std::string& what, int bounce = -1)
        : BilliardError(CollisionFailure::corner_hit, what, bounce) {}
};

class GrazingReflection : public BilliardError {
public:
    explicit GrazingReflection(const std::string& what, int bounce = -1)
        : BilliardError(CollisionFailure::grazing_reflection, what, bounce) {}
};

class NoIntersection : public BilliardError {
public:
    explicit NoIntersection(const std::string& what, int bounce = -1)
        : BilliardError(CollisionFailure::no_intersection, what, bounce) {}
};

/// Rethrows `err` as the same concrete type with the bounce index attached.
[[noreturn]] void rethrow_with_bounce(const BilliardError& err, int bounce);

}  // namespace curvebill
