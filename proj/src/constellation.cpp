#include "macpsk/constellation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace macpsk {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void check_order(int order) {
    if (order < 2 || !power_of_two(order)) {
        throw std::invalid_argument("PSK order must be a power of two >= 2, got " +
                                    std::to_string(order));
    }
}

void check_point_index(int k, int order, const char* what) {
    if (k < 1 || k > order) {
        throw std::invalid_argument(std::string(what) + " index out of range: " +
                                    std::to_string(k));
    }
}

}  // namespace

const cplx& Constellation::point(int k) const {
    check_point_index(k, order, "constellation point");
    return points[static_cast<size_t>(k) - 1];
}

double Constellation::dmin() const {
    return std::sqrt(2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / order)));
}

Constellation mpsk(int order) {
    check_order(order);
    Constellation c;
    c.order = order;
    c.points.reserve(static_cast<size_t>(order));
    for (int k = 0; k < order; ++k) {
        c.points.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / order));
    }
    return c;
}

int eff_index(int m, int n, int order) {
    check_order(order);
    check_point_index(m, order, "user-1 point");
    check_point_index(n, order, "user-2 point");
    return m + order * (n - 1);
}

std::pair<int, int> eff_unpack(int q, int order) {
    check_order(order);
    if (q < 1 || q > order * order) {
        throw std::invalid_argument("effective-constellation label out of range: " +
                                    std::to_string(q));
    }
    int m = (q - 1) % order + 1;
    int n = (q - 1) / order + 1;
    return {m, n};
}

cplx eff_point(const Constellation& c, int m, int n, const FadeState& fs) {
    return c.point(m) + fs.value() * c.point(n);
}

std::vector<cplx> eff_constellation(const Constellation& c, const FadeState& fs) {
    const cplx ratio = fs.value();
    std::vector<cplx> pts;
    pts.reserve(static_cast<size_t>(c.order) * c.order);
    for (int n = 1; n <= c.order; ++n) {
        for (int m = 1; m <= c.order; ++m) {
            pts.push_back(c.point(m) + ratio * c.point(n));
        }
    }
    return pts;
}

}  // namespace macpsk
