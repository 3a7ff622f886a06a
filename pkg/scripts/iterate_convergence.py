"""Convergence of the (pq)^m meet iterate as the angle between ranges shrinks.

p projects onto span(e1, u) and q onto span(e1, v) in C^3, where u and v are
unit vectors at angle theta inside span(e2, e3).  The meet is the projection
onto e1; the iterate contracts the rest by cos(theta)^2 per step.
"""

import argparse

import numpy as np

from bohrlogic.quantum.projections import MatProjection, Tolerances, maxnorm, meet_by_iteration, proj_meet


def pair(theta):
    e = np.eye(3)
    u = e[1]
    v = np.cos(theta) * e[1] + np.sin(theta) * e[2]
    return MatProjection.onto(np.column_stack([e[0], u])), MatProjection.onto(np.column_stack([e[0], v]))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cap", type=int, default=200)
    args = ap.parse_args()
    tol = Tolerances(cap=args.cap)
    print(f"{'theta':>10s} {'squarings':>10s} {'converged':>10s} {'error':>10s}")
    for theta in [1.0, 0.3, 0.1, 1e-2, 1e-3, 1e-4, 1e-5]:
        p, q = pair(theta)
        it = meet_by_iteration(p, q, tol)
        err = maxnorm(it.matrix - proj_meet(p, q).m)
        print(f"{theta:10.0e} {it.squarings:10d} {str(it.converged):>10s} {err:10.2e}")


if __name__ == "__main__":
    main()
