"""Compiled inner loops for the built-in games.

Every kernel mirrors a numpy code path elsewhere in the package operation for
operation, so both paths give bit-identical results on the same random draws.
"""

import numpy as np
from numba import njit

PYTHON = 0
GAME1 = 1
MIN_EFFORT = 2
MATRIX = 3

LITERAL = 0
ALL_MEMBERS = 1


@njit(cache=True)
def payoff_one(kind, params, x, out):
    n = x.shape[0]
    if kind == GAME1:
        s1 = x[0]
        s2 = x[1]
        out[0] = 3 * s1**2 - s2**2 + 4 * s2
        out[1] = -(s1**2) + s1 - 2 * s2
    elif kind == MIN_EFFORT:
        m = x[0]
        for i in range(1, n):
            if x[i] < m:
                m = x[i]
        for i in range(n):
            out[i] = m - params[0] * x[i]
    else:
        # params = [k_1..k_n, table flattened row-major over (k_1..k_n, n)]
        idx = 0
        for i in range(n):
            idx = idx * int(params[i]) + int(np.rint(x[i]))
        base = n + idx * n
        for i in range(n):
            out[i] = params[base + i]


@njit(cache=True)
def count_direction(kind, params, s_star, s, family, tol, cont, reading, tally):
    """Gaining coalition members when switching from ``s_star`` to ``s``.

    ``tally[0]`` accumulates per-player comparisons, ``tally[1]`` evaluated profiles.
    """
    n = s.shape[0]
    return _count(kind, params, s_star, s, family, tol, cont, reading, tally,
                  np.empty(n), np.empty(n), np.empty(n), np.empty(n, dtype=np.bool_))


@njit(cache=True)
def _count(kind, params, s_star, s, family, tol, cont, reading, tally, u0, u, comp, differs):
    n = s.shape[0]
    for i in range(n):
        d = abs(s[i] - s_star[i])
        if tol == 0 or not cont[i]:
            differs[i] = d > 0
        else:
            differs[i] = d > tol
    payoff_one(kind, params, s_star, u0)
    total = 0
    for f in range(family.shape[0]):
        mask = family[f]
        for i in range(n):
            comp[i] = s[i] if (mask >> i) & 1 else s_star[i]
        payoff_one(kind, params, comp, u)
        size = 0
        hits = 0
        for i in range(n):
            if (mask >> i) & 1:
                size += 1
                if u[i] > u0[i] and differs[i]:
                    hits += 1
        tally[0] += size
        if reading == LITERAL:
            total += hits
        elif hits == size:
            total += size
    tally[1] += family.shape[0] + 1
    return total


@njit(cache=True)
def generation(kind, params, P, parents, lower, upper, cont, F, pc, picks, starts, cross,
               families, full_family, sampled, tol, reading, tally):
    """One crowding generation, updating ``P`` in place; returns replacements made."""
    L, dim = parents.shape
    o = np.empty(dim)
    u0, u, comp = np.empty(dim), np.empty(dim), np.empty(dim)
    differs = np.empty(dim, dtype=np.bool_)
    replaced = 0
    for l in range(L):
        for t in range(dim):
            o[t] = parents[l, t]
        i1 = picks[l, 0]
        i2 = picks[l, 1]
        i3 = picks[l, 2]
        j = starts[l]
        for t in range(dim):
            if t > 0 and not cross[l, t] < pc:
                break
            o[j] = parents[i1, j] + F * (parents[i2, j] - parents[i3, j])
            j = (j + 1) % dim
        for t in range(dim):
            v = o[t]
            if v < lower[t]:
                v = lower[t]
            if v > upper[t]:
                v = upper[t]
            if not cont[t]:
                v = np.rint(v)
            o[t] = v
        best = 0
        best_d = np.inf
        for r in range(P.shape[0]):
            d = 0.0
            for t in range(dim):
                diff = P[r, t] - o[t]
                d += diff * diff
            if d < best_d:
                best_d = d
                best = r
        fam = families[l] if sampled else full_family
        fwd = _count(kind, params, o, P[best], fam, tol, cont, reading, tally,
                     u0, u, comp, differs)
        bwd = _count(kind, params, P[best], o, fam, tol, cont, reading, tally,
                     u0, u, comp, differs)
        if fwd < bwd:
            for t in range(dim):
                P[best, t] = o[t]
            replaced += 1
    return replaced


@njit(cache=True)
def pair_counts(kind, params, P, i0, i1, families, full_family, sampled, tol, cont, reading, tally,
                out):
    """Counts for all pairs ``(i, j)``, ``i0 <= i < i1``, ``j > i``, in row-major order.

    Row ``r`` of ``out`` holds ``(a(P_i, P_j), a(P_j, P_i))`` of the r-th pair.
    """
    k, dim = P.shape
    u0, u, comp = np.empty(dim), np.empty(dim), np.empty(dim)
    differs = np.empty(dim, dtype=np.bool_)
    r = 0
    for i in range(i0, i1):
        for j in range(i + 1, k):
            fam = families[r] if sampled else full_family
            out[r, 0] = _count(kind, params, P[i], P[j], fam, tol, cont, reading, tally,
                               u0, u, comp, differs)
            out[r, 1] = _count(kind, params, P[j], P[i], fam, tol, cont, reading, tally,
                               u0, u, comp, differs)
            r += 1
