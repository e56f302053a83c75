"""Independent reduction for the pencil x0^3 + x1^3 + x2^3 - 3t x0 x1 x2.

Top forms P dx are reduced with P = sum h_i dF/dx_i + r  =>  P dx ~ r dx - sum dh_i/dx_i dx,
solving for the h_i by undetermined coefficients over Q(t). The basis is
{dx, x0 x1 x2 dx}; row b lists the coordinates of G * omega_b with G = -3 x0 x1 x2.
Prints the matrix; with --check, compares it against the values frozen in
the regression corpus and exits nonzero on disagreement.
"""

import itertools
import sys

import sympy as sp

t = sp.symbols("t")
x = sp.symbols("x0:3")
F = x[0] ** 3 + x[1] ** 3 + x[2] ** 3 - 3 * t * x[0] * x[1] * x[2]
G = -3 * x[0] * x[1] * x[2]
dF = [sp.diff(F, v) for v in x]


def monomials(d):
    return [sp.Mul(*[v**e for v, e in zip(x, exps)]) for exps in itertools.product(range(d + 1), repeat=3) if sum(exps) == d]


def reduce_top(P):
    """Coordinates (a, b) with P dx ~ a dx + b x0x1x2 dx."""
    P = sp.expand(P)
    if P == 0:
        return sp.Integer(0), sp.Integer(0)
    d = sp.Poly(P, *x).total_degree()
    if d == 0:
        return P, sp.Integer(0)
    hdeg = d - 2
    unknowns = []
    hs = []
    for _ in range(3):
        coeffs = [sp.Symbol(f"c{len(unknowns) + k}") for k in range(len(monomials(hdeg)))]
        unknowns += coeffs
        hs.append(sum(c * m for c, m in zip(coeffs, monomials(hdeg))))
    c_free = sp.Symbol("cfree")
    free = c_free * x[0] * x[1] * x[2] if d == 3 else 0
    residual = sp.Poly(sp.expand(P - sum(h * g for h, g in zip(hs, dF)) - free), *x)
    sol = sp.solve(residual.coeffs(), unknowns + ([c_free] if d == 3 else []), dict=True)
    if not sol:
        raise RuntimeError(f"no reduction in degree {d}")
    sol = sol[0]
    params = {u: 0 for u in unknowns + [c_free] if u not in sol}
    subs = {u: sp.sympify(sol.get(u, 0)).subs(params) for u in unknowns}
    b = sp.simplify(sp.sympify(sol.get(c_free, 0)).subs(params)) if d == 3 else 0
    lower = sp.expand(-sum(sp.diff(h.subs(subs), v) for h, v in zip(hs, x)))
    a2, b2 = reduce_top(lower)
    return sp.simplify(a2), sp.simplify(b + b2)


FROZEN = [
    [sp.Integer(0), sp.Integer(-3)],
    [(t / 3) / (t**3 - 1), (-3 * t**2) / (t**3 - 1)],
]

rows = [reduce_top(G * w) for w in (sp.Integer(1), x[0] * x[1] * x[2])]
for r in rows:
    print([sp.factor(e) for e in r])

if "--check" in sys.argv[1:]:
    bad = [(i, j) for i in range(2) for j in range(2) if sp.simplify(rows[i][j] - FROZEN[i][j]) != 0]
    if bad:
        print(f"mismatch at {bad}")
        sys.exit(1)
    print("frozen matrix confirmed")
