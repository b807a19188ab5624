#pragma once

#include <stdexcept>
#include <string>

namespace circsurf {

struct SingularPointOfCongruence : std::domain_error {
    explicit SingularPointOfCongruence(const std::string& w) : std::domain_error(w) {}
};

struct NoIntersection : std::runtime_error {
    explicit NoIntersection(const std::string& w) : std::runtime_error(w) {}
};

struct PoleAtParameter : std::domain_error {
    explicit PoleAtParameter(const std::string& w) : std::domain_error(w) {}
};

struct PointOnAxis : std::domain_error {
    explicit PointOnAxis(const std::string& w) : std::domain_error(w) {}
};

struct DegeneratePlane : std::runtime_error {
    explicit DegeneratePlane(const std::string& w) : std::runtime_error(w) {}
};

struct CommonComponent : std::runtime_error {
    explicit CommonComponent(const std::string& w) : std::runtime_error(w) {}
};

struct EmptySurface : std::runtime_error {
    explicit EmptySurface(const std::string& w) : std::runtime_error(w) {}
};

struct NotOnSurface : std::domain_error {
    explicit NotOnSurface(const std::string& w) : std::domain_error(w) {}
};

struct ModelViolation : std::runtime_error {
    explicit ModelViolation(const std::string& w) : std::runtime_error(w) {}
};

}  // namespace circsurf
