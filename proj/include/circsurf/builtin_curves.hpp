#pragma once

#include "circsurf/directrix.hpp"

namespace circsurf::curves {

/// Line (1, t, b t + c); b = 1, c = 2 is the worked default elsewhere.
inline RationalCurve line(const Rational& b = Rational(1), const Rational& c = Rational(2)) {
    return make_curve("line", rat_poly({1}), rat_poly({0, 1}), rat_poly({c, b}), rat_poly({1}));
}

/// Rectangular hyperbola (t, 1/t, 0) in the plane z = 0.
inline RationalCurve hyperbola_h1() {
    return make_curve("h1", rat_poly({0, 0, 1}), rat_poly({1}), rat_poly({0}), rat_poly({0, 1}));
}

/// Rectangular hyperbola (1, t, 1/t) in the plane x = 1; meets the z-axis at
/// its point at infinity.
inline RationalCurve hyperbola_h2() {
    return make_curve("h2", rat_poly({0, 1}), rat_poly({0, 0, 1}), rat_poly({1}), rat_poly({0, 1}));
}

/// Twisted cubic circle (t/(1+t^2), t, t^2/(1+t^2)).
inline RationalCurve twisted_cubic() {
    return make_curve("twisted-cubic", rat_poly({0, 1}), rat_poly({0, 1, 0, 1}),
                      rat_poly({0, 0, 1}), rat_poly({1, 0, 1}));
}

/// Latitude circle x^2 + y^2 = 9/16 at height z = 5/4 (lies on tau(5/4) of
/// the q = 1 congruence).
inline RationalCurve latitude_circle() {
    TrigPoly x = trig_const(Rational(3, 4)) * trig_cos();
    TrigPoly y = trig_const(Rational(3, 4)) * trig_sin();
    TrigPoly z = trig_const(Rational(5, 4));
    return curve_from_trig("latitude-circle", x, y, z);
}

/// Ellipse ((1/2) cos t, 2 sin t, 0): four pinch points against q = -1.
inline RationalCurve ellipse_a() {
    TrigPoly x = trig_const(Rational(1, 2)) * trig_cos();
    TrigPoly y = trig_const(Rational(2)) * trig_sin();
    return curve_from_trig("ellipse-a", x, y, TrigPoly(2));
}

/// Ellipse ((3/2) cos t, 3 sin t - 1, 0): three pinch points against q = -4.
inline RationalCurve ellipse_b() {
    TrigPoly x = trig_const(Rational(3, 2)) * trig_cos();
    TrigPoly y = trig_const(Rational(3)) * trig_sin() - trig_const(Rational(1));
    return curve_from_trig("ellipse-b", x, y, TrigPoly(2));
}

/// Curtate cyclic-harmonic rho = cos(3t) + k in the plane z = 0.
inline RationalCurve cyclic_harmonic(const Rational& k = Rational(2)) {
    auto [cos3, sin3] = trig_multiple_angle(3);
    TrigPoly rho = cos3 + trig_const(k);
    return curve_from_trig("cyclic-harmonic-k" + k.str(), rho * trig_cos(), rho * trig_sin(),
                           TrigPoly(2));
}

/// Eight-petal style closed curve (4 cos t + cos 4t, 4 sin t - sin 4t, 0);
/// meshing showcase input.
inline RationalCurve rose_curve() {
    auto [cos4, sin4] = trig_multiple_angle(4);
    TrigPoly x = trig_const(Rational(4)) * trig_cos() + cos4;
    TrigPoly y = trig_const(Rational(4)) * trig_sin() - sin4;
    return curve_from_trig("rose", x, y, TrigPoly(2));
}

inline std::vector<RationalCurve> all_builtin() {
    return {line(),          hyperbola_h1(), hyperbola_h2(),   twisted_cubic(),
            latitude_circle(), ellipse_a(),  ellipse_b(),      cyclic_harmonic(),
            rose_curve()};
}

}  // namespace circsurf::curves
