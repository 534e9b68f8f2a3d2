#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cqnc {

/// Strictly increasing, finite, non-empty set of angular frequencies (rad/s).
struct FrequencyGrid {
    std::vector<double> points;

    static FrequencyGrid linear(double min, double max, std::size_t count) {
        check_spec(min, max, count);
        FrequencyGrid g;
        g.points.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(count - 1);
            g.points.push_back(min + t * (max - min));
        }
        return g;
    }

    static FrequencyGrid log_spaced(double min, double max, std::size_t count) {
        check_spec(min, max, count);
        if (min <= 0.0) throw std::invalid_argument("log grid requires min > 0");
        FrequencyGrid g;
        g.points.reserve(count);
        const double ratio = max / min;
        for (std::size_t i = 0; i < count; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(count - 1);
            g.points.push_back(min * std::pow(ratio, t));
        }
        return g;
    }

  private:
    static void check_spec(double min, double max, std::size_t count) {
        if (count < 2) throw std::invalid_argument("grid count must be >= 2");
        if (!(min < max)) throw std::invalid_argument("grid requires min < max");
        if (!std::isfinite(min) || !std::isfinite(max))
            throw std::invalid_argument("grid bounds must be finite");
    }
};

}  // namespace cqnc
