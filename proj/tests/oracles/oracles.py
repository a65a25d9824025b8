#!/usr/bin/env python3
"""Exact reference values frozen into the C++ unit tests.

Run with `python3 tests/oracles/oracles.py`. Everything here is written
independently of the C++ sources: kernels are transcribed directly into sympy
and evaluated in exact rational arithmetic; the L=1 transfer matrix is built
symbolically from R, K and Kbar.
"""

import sympy as sp

eta = sp.Integer(1)


def f(u, v):
    return (u - v - eta) * (u + v) / ((u + v + eta) * (u - v))


def h(u, v):
    return (u - v + eta) * (u + v + 2 * eta) / ((u - v) * (u + v + eta))


def g(u, v):
    return 2 * eta * v / ((2 * v + eta) * (u - v))


def w(u, v):
    return -eta / (u + v + eta)


def k(u, v):
    return -2 * eta * (u + eta) / ((u - v) * (2 * u + eta))


def n(u, v):
    return 4 * v * eta * (u + eta) / ((u + v + eta) * (2 * v + eta) * (2 * u + eta))


def m(u, v):
    return 2 * eta * u * (u - v + eta) / ((2 * u + eta) * (u + v + eta) * (u - v))


def l(u, v):
    return -2 * eta**2 * u / ((2 * u + eta) * (2 * v + eta) * (u - v))


def q(u, v):
    return eta * (u + v) / ((u + v + eta) * (u - v))


def p(u, v):
    return -2 * eta * u / ((2 * u + eta) * (u - v))


def y(u, v):
    return -eta**2 / ((u + v + eta) * (2 * v + eta))


def z(u, v):
    return -eta / (u + v + eta)


def Z11(u, xi, xj):
    return (8 * eta**2 * xi * xj * (xi + xj) * (u**2 - xi * xj + eta * u)) / (
        (2 * xi + eta) * (2 * xj + eta) * (xi + xj + eta) * (u + xi + eta) * (u + xj + eta) * (u - xi) * (u - xj))


def Z12(u, xi, xj):
    return (4 * eta**2 * xi * (xj - xi + eta) * (u**2 + eta * u + xi * xj + eta * xi)) / (
        (2 * xi + eta) * (xi - xj) * (u + xi + eta) * (u + xj + eta) * (u - xi) * (u - xj))


def Z22(u, xi, xj):
    return (2 * eta**2 * (xi + xj + 2 * eta) * (u**2 - (xi + eta) * (xj + eta) + eta * u)) / (
        (xi + xj + eta) * (u + xi + eta) * (u + xj + eta) * (u - xi) * (u - xj))


def kappa1(u, ab, bb):
    return 2 * (u + eta) / (2 * u + eta) * (ab - bb * u)


def kappa2(u, ab, bb):
    return (u + eta) * bb + ab


def kappa12(u, cb):
    return -(u + eta) * cb


def Xi(u, ab, bb):
    return (2 * u + eta) * (bb * (u + eta) + ab) / (2 * u * (ab - bb * u))


# Chain with L=1, xi=0, a=b=1.
A, B = sp.Integer(1), sp.Integer(1)
XI = [sp.Integer(0)]


def Lam1(u):
    r = A + B * u
    for x in XI:
        r *= (u - x + eta) / (-u - x + eta)
    return r


def Lam2(u):
    r = 2 * u * (A - B * (u + eta)) / (2 * u + eta)
    for x in XI:
        r *= (u + x) * (u - x) / ((u + x + eta) * (-u - x + eta))
    return r


def Lam1l(u, xs):
    r = Lam1(u)
    for x in xs:
        r *= f(u, x)
    return r


def Lam2l(u, xs):
    r = Lam2(u)
    for x in xs:
        r *= h(u, x)
    return r


def M_k(u, xs, kk):
    rest = xs[:kk] + xs[kk + 1:]
    return g(u, xs[kk]) * Lam1l(xs[kk], rest) + w(u, xs[kk]) * Lam2l(xs[kk], rest)


def N_k(u, xs, kk):
    rest = xs[:kk] + xs[kk + 1:]
    return k(u, xs[kk]) * Lam2l(xs[kk], rest) + n(u, xs[kk]) * Lam1l(xs[kk], rest)


def G_i(u, xs, i):
    rest = xs[:i] + xs[i + 1:]
    x = xs[i]
    return (Lam1l(u, rest) * ((m(u, x) + l(u, x)) * Lam1l(x, rest) + p(u, x) * Lam2l(x, rest))
            + Lam2l(u, rest) * ((q(u, x) + y(u, x)) * Lam1l(x, rest) + z(u, x) * Lam2l(x, rest)))


def F_ij(u, xs, i, j):
    rest = [x for t, x in enumerate(xs) if t not in (i, j)]
    xi, xj = xs[i], xs[j]
    return (Lam1l(xi, rest) * (Z11(u, xi, xj) * Lam1l(xj, rest) + Z12(u, xi, xj) * Lam2l(xj, rest))
            + Lam2l(xi, rest) * (Z12(u, xj, xi) * Lam1l(xj, rest) + Z22(u, xi, xj) * Lam2l(xj, rest)))


def section(title):
    print(f"\n# {title}")


def show(name, value):
    v = sp.nsimplify(sp.simplify(value))
    print(f"{name} = {v}  ({sp.N(v, 17)})")


def kernels():
    section("exchange and C-B kernels at (3, 1)")
    for fn in (f, h, g, w, k, n, m, l, q, p, y, z):
        show(f"{fn.__name__}(3,1)", fn(sp.Integer(3), sp.Integer(1)))
    section("Z kernels at (4, 2, 3)")
    for fn in (Z11, Z12, Z22):
        show(f"{fn.__name__}(4,2,3)", fn(sp.Integer(4), sp.Integer(2), sp.Integer(3)))
    section("boundary kernels at u=1, abar=2, bbar=1, cbar=1")
    u = sp.Integer(1)
    show("kappa1", kappa1(u, 2, 1))
    show("kappa2", kappa2(u, 2, 1))
    show("kappa12", kappa12(u, 1))
    show("Xi", Xi(u, 2, 1))


def dressed():
    section("L=1, xi=0, a=b=1")
    show("Lambda1(2)", Lam1(sp.Integer(2)))
    show("Lambda2(2)", Lam2(sp.Integer(2)))
    show("Lambda1^1(3,{1})", Lam1l(sp.Integer(3), [sp.Integer(1)]))
    show("M_1(3,{2})", M_k(sp.Integer(3), [sp.Integer(2)], 0))
    show("N_1(3,{2})", N_k(sp.Integer(3), [sp.Integer(2)], 0))
    xs = [sp.Integer(2), sp.Integer(3)]
    show("G_1(4,{2,3})", G_i(sp.Integer(4), xs, 0))
    show("G_2(4,{2,3})", G_i(sp.Integer(4), xs, 1))
    show("F_12(5,{2,3})", F_ij(sp.Integer(5), xs, 0, 1))
    print("x = 1 is a pole of Lambda1 (a(-x) = 0):", sp.simplify(-1 + eta) == 0)


def triangularization():
    section("triangularization")
    beta, gamma, delta = sp.Integer(2), sp.Integer(3), sp.Integer(1)
    K0 = sp.Matrix([[beta, gamma], [delta, -beta]])
    b = sp.sqrt(beta**2 + gamma * delta)
    M = sp.Matrix([[b + beta, delta], [delta, b + beta]])
    show("det M", M.det())
    print("M^-1 K0 M =", sp.simplify(M.inv() * K0 * M))
    Mn = sp.Matrix([[1, 1], [-1, 0]])
    print("nilpotent M^-1 [[1,1],[-1,-1]] M =", sp.simplify(Mn.inv() * sp.Matrix([[1, 1], [-1, -1]]) * Mn))
    # Raising/lowering pair: right = (1,0,1,0), left = (1,0,0,1).
    be, ga, de = 0, 1, 0
    bb, gb, db = 0, 0, 1
    c = (db * ga - de * gb) ** 2 - 4 * (be * gb - bb * ga) * (db * be - de * bb)
    show("constraint(raising, lowering)", c)
    s = -sp.Integer(1) - eta
    print("Kbar(1) triangular abar=2,bbar=1,cbar=1:", sp.Matrix([[s * 1 + 2, s * 1], [0, -s * 1 + 2]]))


def su2_R(u):
    return sp.Matrix([[u + eta, 0, 0, 0], [0, u, eta, 0], [0, eta, u, 0], [0, 0, 0, u + eta]])


def l1_chain():
    """t(u) for L=1 built symbolically; spectrum and N=1 Bethe roots."""
    section("L=1 transfer matrix, xi=0, eta=1, right (a,b,c)=(1,3/10,1/2), left (2,1,1/3)")
    u = sp.symbols("u")
    a, bb_, c = sp.Integer(1), sp.Rational(3, 10), sp.Rational(1, 2)
    ab, bbb, cb = sp.Integer(2), sp.Integer(1), sp.Rational(1, 3)
    K = sp.Matrix([[u * bb_ + a, u * c], [0, -u * bb_ + a]])
    s = -u - eta
    Kb = sp.Matrix([[s * bbb + ab, s * cb], [0, -s * bbb + ab]])
    # Index order (aux, site); T = R_a1(u), T^-1(-u) = R_a1(u) / ((eta-u)(eta+u)).
    T = su2_R(u)
    Tinv = su2_R(u) / ((eta - u) * (eta + u))
    Bfull = T * sp.kronecker_product(K, sp.eye(2)) * Tinv
    t = sp.zeros(2, 2)
    for i in range(2):
        for j in range(2):
            t += Kb[j, i] * Bfull[i * 2:(i + 1) * 2, j * 2:(j + 1) * 2]
    t = sp.simplify(t)
    u0 = sp.Rational(2, 5)
    ev = [sp.nsimplify(e) for e in t.subs(u, u0).eigenvals()]
    for e in sorted(ev, key=lambda z: float(sp.re(z))):
        print(f"eig t({u0}) = {e}  ({sp.N(e, 17)})")
    vac = kappa1(u0, ab, bbb) * (a + bb_ * u0) * (u0 + eta) / (-u0 + eta) + kappa2(u0, ab, bbb) * (
        2 * u0 * (a - bb_ * (u0 + eta)) / (2 * u0 + eta)) * u0 * u0 / ((u0 + eta) * (-u0 + eta))
    show("vacuum Lambda(2/5)", vac)

    # N=1 Bethe equation with these parameters, denominators cleared.
    def L1(x):
        return (a + bb_ * x) * (x + eta) / (-x + eta)

    def L2(x):
        return 2 * x * (a - bb_ * (x + eta)) / (2 * x + eta) * x * x / ((x + eta) * (-x + eta))

    expr = sp.together(L1(u) * 2 * u * (ab - bbb * u) - (2 * u + eta) * (bbb * (u + eta) + ab) * L2(u))
    num = sp.factor(sp.numer(expr))
    print("N=1 cleared numerator:", num)
    for r in sp.Poly(num, u).nroots(n=30):
        if abs(complex(r)) < 1e-12:
            continue
        print(f"root {sp.N(r, 17)}")


if __name__ == "__main__":
    kernels()
    dressed()
    triangularization()
    l1_chain()
