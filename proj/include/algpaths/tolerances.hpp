#pragma once

namespace algpaths {

/**
 * Central tolerance configuration. All residual checks in the library are
 * relative: a check on x is performed against threshold * scale(x), where
 * scale is max(1, ...) built from the norms of the inputs. The CLI overrides
 * `base` (flag --tol or env ALGPATHS_TOL), which drives the derived fields.
 */
struct Tolerances {
    double base = 1e-9; // master relative tolerance

    double membership() const { return base; }        // ||p(a)|| <= membership * scale
    double partition() const { return base; }          // partition-of-unity residuals
    double endpoint() const { return base; }           // path endpoint agreement

    // Fixed cut-offs that the contracts pin as absolute constants.
    static constexpr double hermitian = 1e-10;          // ||m - m*|| tolerance
    static constexpr double pivot_floor = 1e-14;        // LU pivot collapse, relative to ||m||_max
    static constexpr double duplicate_root = 1e-10;     // |root_i - root_j| below this is rejected
    static constexpr double zero_idempotent = 1e-8;     // canonicalize drops smaller idempotents
    static constexpr double cond_cap = 1e12;            // inverse refuses beyond this estimate
    static constexpr double domain_guard = 1e-9;        // log/kovarik domain boundary guard

    int quad_points = 128;  // resolvent contour quadrature nodes
    int grid_points = 101;  // samples per path segment for validation
};

} // namespace algpaths
