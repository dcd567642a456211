#include "heatsym/stencil.hpp"

namespace heatsym {

Stencil Stencil::orthogonal(double t, double tau, double x, double h_minus, double h_plus,
                            std::array<double, 3> lower, std::array<double, 3> upper) {
    return moving(t, tau, x, h_minus, h_plus, 0.0, h_minus, h_plus, lower, upper);
}

Stencil Stencil::moving(double t, double tau, double x, double h_minus, double h_plus,
                        double dx, double hh_minus, double hh_plus,
                        std::array<double, 3> lower, std::array<double, 3> upper) {
    Stencil s;
    const double th = t + tau;
    const double xh = x + dx;
    s.nodes[Minus] = Node{t, x - h_minus, lower[0]};
    s.nodes[Center] = Node{t, x, lower[1]};
    s.nodes[Plus] = Node{t, x + h_plus, lower[2]};
    s.nodes[HatMinus] = Node{th, xh - hh_minus, upper[0]};
    s.nodes[Hat] = Node{th, xh, upper[1]};
    s.nodes[HatPlus] = Node{th, xh + hh_plus, upper[2]};
    return s;
}

}  // namespace heatsym
