#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricgec/laurent.hpp"
#include "toricgec/polytope.hpp"

namespace toricgec {

enum class FamilyTag { V, S, X, W, NP1, NP2, Pn, Product };

struct FamilySpec {
    FamilyTag tag = FamilyTag::Pn;
    int k = 0;
    int m = 0;
    int n = 0;

    // V:k=2, S:m=3,k=1, X:m=2,k=0, W:m=2, NP1, NP2, P:n=3, Prod:P1^k
    static FamilySpec parse(const std::string& text);
    std::string to_string() const;
    std::size_t dimension() const;
    bool is_positive_control() const { return tag == FamilyTag::Pn || tag == FamilyTag::Product; }
};

std::vector<Exponent> rays(const FamilySpec& spec);

// {x : <u, x> >= -1 for every ray u}; checked to be full-dimensional and reflexive.
LatticePolytope anticanonical_polytope(const FamilySpec& spec);

struct NamedFace {
    Face face;
    std::size_t plane_i = 0, plane_j = 0;  // coordinates spanning the plane of the face
    std::string shape;                     // hexagon | trapezoid
    LatticePolytope plane_model;
    LatticePolytope projection;            // the face projected to (plane_i, plane_j)
};

// The 2-face on which the family's obstruction lives; nullopt for the positive controls.
std::optional<NamedFace> obstructing_face(const FamilySpec& spec);

struct ControlWitness {
    Laurent p;
    Rat lambda;
};

// 1 + x1 + ... + xn for projective space, prod (1 + x_i) for products of lines.
ControlWitness positive_control_witness(const FamilySpec& spec);

}  // namespace toricgec
