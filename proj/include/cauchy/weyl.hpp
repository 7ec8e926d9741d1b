#pragma once

#include <array>
#include <string>

#include "cauchy/field.hpp"

namespace cauchy {

enum class WeylClass { limit_point, limit_circle, inconclusive };
enum class Ternary { yes, no, unknown };

struct WeylOptions {
    double anchor = 0.0;
    double r0 = 2.0;          // first window boundary (distance for infinite ends)
    double rmax = 16.0;       // farthest boundary for infinite ends
    int windows = 8;
    double phase_step = 1e-3;  // radians of local phase per step
};

struct SolutionFate {
    std::string fate;  // square-integrable | divergent | inconclusive
    std::vector<double> log_increments;
};

struct WeylEndReport {
    bool high_side = true;
    double target = 0.0;
    WeylClass cls = WeylClass::inconclusive;
    std::array<SolutionFate, 2> solutions;
    double wronskian_drift = 0.0;
};

struct WeylVerdict {
    std::vector<WeylEndReport> ends;
    Ternary esa = Ternary::unknown;
    std::string note;
};

// Integrates two independent solutions of the radial equation at spectral
// parameter i from an interior anchor toward each open end, watching the
// growth of their windowed rescaled-measure norms. Both solutions
// square-integrable at an end means limit circle there; a divergent solution
// means limit point. The operator is essentially self-adjoint on compactly
// supported smooth data iff every end is limit point.
WeylVerdict weyl_classify(const ExprPtr& lapse, const ExprPtr& h11, const ExprPtr& potential,
                          const GridPtr& grid, const WeylOptions& opt = {});

const char* to_string(WeylClass c);
const char* to_string(Ternary t);

}  // namespace cauchy
