#pragma once

// The shipped desk scenarios.

#include <string>
#include <vector>

#include "hopfmorita/lift_classifier.hpp"

namespace hopfmorita::scenarios {

struct Scenario {
    std::string name;
    UEAAction action;
    int window = 0;
    WindingSet windings;
};

/// xi acts on the Laurent polynomials by u |> i u (rotation); winding u.
inline Scenario circle_rotation(int truncation = 4, int window = 3) {
    auto L = build_model(laurent_model());
    LieAction lie(L, LieBrackets::abelian(1), {Derivation::from_generator_image(L, Element::basis(L, 1, Scalar::i()))});
    Scenario s{"circle-rotation", UEAAction::extend(lie, truncation), window, {}};
    s.windings.add("u", Element::basis(L, 1), s.action, window);
    return s;
}

/// [xi1, xi2] = xi2 acting on K[x]/(x^n) by x d/dx and x^2 d/dx.
inline Scenario solvable_on_poly(int n = 4, int truncation = 4) {
    auto P = build_model(truncated_poly(n));
    LieBrackets br(2);
    br.set(0, 1, {Scalar(0), Scalar(1)});
    LieAction lie(P, br,
                  {Derivation::from_generator_image(P, Element::basis(P, 1)),
                   Derivation::from_generator_image(P, Element::basis(P, 2))});
    return {"solvable-on-poly", UEAAction::extend(lie, truncation), 0, {}};
}

/// Abelian dim-2 Lie algebra acting trivially on functions on `points` points.
inline Scenario trivial_on_points(int points = 3, int truncation = 4) {
    auto A = build_model(finite_functions(points));
    return {"trivial-on-points", UEAAction::extend(LieAction::trivial(A, LieBrackets::abelian(2)), truncation), 0, {}};
}

inline std::vector<Scenario> shipped(int truncation = 4) {
    return {circle_rotation(truncation), solvable_on_poly(4, truncation), trivial_on_points(3, truncation)};
}

}  // namespace hopfmorita::scenarios
