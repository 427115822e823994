#pragma once

#include "l1fract/errors.hpp"

namespace l1fract {

/// Uniform time mesh on [0, T] with J steps. Nodes are computed as
/// j*T/J rather than accumulated, so t_J == T exactly.
struct TimeGrid {
    double final_time = 1.0;
    int steps = 1;

    TimeGrid() = default;
    TimeGrid(double T, int J) : final_time(T), steps(J) {
        if (!(T > 0.0)) throw domain_error("TimeGrid: final time must be positive");
        if (J < 1) throw domain_error("TimeGrid: need at least one step");
    }

    double tau() const { return final_time / steps; }
    double node(int j) const { return j * final_time / steps; }
};

}  // namespace l1fract
