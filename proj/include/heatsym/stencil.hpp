#pragma once

#include <array>
#include <cstddef>

namespace heatsym {

/// A point (t, x, u) of the base space.
struct Point {
    double t = 0.0;
    double x = 0.0;
    double u = 0.0;
};

/// One mesh point of the extended difference space. `s` and `rho` are only
/// meaningful for mass-coordinate schemes, where `s` is the independent space
/// variable and `x` becomes a dependent one.
struct Node {
    double t = 0.0;
    double x = 0.0;
    double u = 0.0;
    double s = 0.0;
    double rho = 1.0;
};

/// Six-point stencil: three nodes on the lower layer and three on the upper.
/// All step lengths are derived from node coordinates, so a stencil that has
/// been pushed through a group flow reports its transformed steps directly.
class Stencil {
public:
    enum Slot : std::size_t { Minus = 0, Center, Plus, HatMinus, Hat, HatPlus };

    std::array<Node, 6> nodes{};

    Node& operator[](Slot slot) { return nodes[slot]; }
    const Node& operator[](Slot slot) const { return nodes[slot]; }

    double t() const { return nodes[Center].t; }
    double t_hat() const { return nodes[Hat].t; }
    double tau() const { return nodes[Hat].t - nodes[Center].t; }
    double x() const { return nodes[Center].x; }

    double h_plus() const { return nodes[Plus].x - nodes[Center].x; }
    double h_minus() const { return nodes[Center].x - nodes[Minus].x; }
    double h_plus_hat() const { return nodes[HatPlus].x - nodes[Hat].x; }
    double h_minus_hat() const { return nodes[Hat].x - nodes[HatMinus].x; }
    double dx() const { return nodes[Hat].x - nodes[Center].x; }

    // mass-coordinate steps
    double hs_plus() const { return nodes[Plus].s - nodes[Center].s; }
    double hs_minus() const { return nodes[Center].s - nodes[Minus].s; }

    double u() const { return nodes[Center].u; }
    double u_plus() const { return nodes[Plus].u; }
    double u_minus() const { return nodes[Minus].u; }
    double u_hat() const { return nodes[Hat].u; }
    double u_hat_plus() const { return nodes[HatPlus].u; }
    double u_hat_minus() const { return nodes[HatMinus].u; }

    // Densities are cell quantities stored on the left node of each cell:
    // rho() belongs to (x, x+h+), rho_minus() to (x-h-, x).
    double rho() const { return nodes[Center].rho; }
    double rho_minus() const { return nodes[Minus].rho; }
    double rho_hat() const { return nodes[Hat].rho; }
    double rho_hat_minus() const { return nodes[HatMinus].rho; }

    /// Orthogonal stencil (dx = 0, same steps on both layers).
    static Stencil orthogonal(double t, double tau, double x, double h_minus, double h_plus,
                              std::array<double, 3> lower, std::array<double, 3> upper);

    /// Evolutionary stencil: upper nodes sit at x+dx-hh_minus, x+dx, x+dx+hh_plus.
    static Stencil moving(double t, double tau, double x, double h_minus, double h_plus,
                          double dx, double hh_minus, double hh_plus,
                          std::array<double, 3> lower, std::array<double, 3> upper);
};

}  // namespace heatsym
