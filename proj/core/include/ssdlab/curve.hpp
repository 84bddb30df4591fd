#pragma once

#include <string>
#include <vector>

namespace ssdlab {

struct CurvePoint {
    double x;
    double y;
};

/// Plot-ready (x, y) pairs; x strictly increasing, y finite.
struct CurveSeries {
    std::string label;
    std::vector<CurvePoint> points;
};

}  // namespace ssdlab
