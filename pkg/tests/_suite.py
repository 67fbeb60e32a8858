"""Small presentations shared by the oracle tests, with their known orders."""

from __future__ import annotations

SUITE = {
    "cyclic5": ("gens a; rels a^5;", 5),
    "cyclic27": ("gens a; rels a^27;", 27),
    "dihedral6": ("gens s, t; rels s^3, t^2, (s*t)^2;", 6),
    "dihedral8": ("gens s, t; rels s^4, t^2, (s*t)^2;", 8),
    "quaternion8": ("gens i, j; rels i^4, i^2*j^-2, j^-1*i*j*i;", 8),
    "z9xz3": ("gens a, b; rels a^9, b^3, [a, b];", 27),
    "z3cubed": ("gens a, b, c; rels a^3, b^3, c^3, [a, b], [a, c], [b, c];", 27),
    "heisenberg27": ("gens x, y; rels x^3, y^3, [x, y]^3, [x, y, x], [x, y, y];", 27),
    "metacyclic27": ("gens a, b; rels a^9, b^3, b^-1*a*b*a^-4;", 27),
    "tight_3_1_1": ("gens sigma1, sigma2; rels sigma1^3, sigma2^6, (sigma1*sigma2)^2, [sigma1, sigma2^2];", 18),
    "tight_5_1_1": ("gens sigma1, sigma2; rels sigma1^5, sigma2^10, (sigma1*sigma2)^2, [sigma1, sigma2^2];", 50),
    "tight_3_2_1": ("gens sigma1, sigma2; rels sigma1^9, sigma2^6, (sigma1*sigma2)^2, [sigma1, sigma2^2];", 54),
    "heis_x_z2": ("gens x, y, t; rels x^3, y^3, t^2, [x, y]^3, [x, y, x], [x, y, y], [x, t], [y, t];", 54),
    "s4": ("gens s, t; rels s^2, t^3, (s*t)^4;", 24),
    "a5": ("gens s, t; rels s^2, t^3, (s*t)^5;", 60),
    "sl23": ("gens a, b; rels a^3, b^3, (a*b)^2 * (b*a)^-2, (a*b)^4;", 24),
    "dihedral18": ("gens a, b; rels a^9, b^2, b*a*b*a;", 18),
    "psl27": ("gens s, t; rels s^2, t^3, (s*t)^7, [s, t]^4;", 168),
    "g1_p3": ("gens sigma1, sigma2; rels sigma1^3, sigma2^6, (sigma1*sigma2)^2, [sigma1, sigma2^2]^3, "
              "[sigma1, sigma2^2, sigma1], [sigma1, sigma2^2, sigma2^2];", None),
    "coxeter_2_3_7_8": ("gens s, t; rels s^2, t^3, (s*t)^7, [s, t]^8;", 10752),
}


def small(max_order: int):
    return {k: v for k, v in SUITE.items() if v[1] is None or v[1] <= max_order}
