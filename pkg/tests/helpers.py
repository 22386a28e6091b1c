"""Independent oracles and small builders shared by the test modules.

The oracles deliberately avoid the library's fast paths: the reference
transform multiplies out characters term by term, and the sensitivity
oracles walk edges with single-point evaluations, so agreement with the
vectorized implementations is meaningful.
"""

from __future__ import annotations

import numpy as np

from sparseact import CubePoint, SparseNet, Subset, character


def naive_spectrum(values: np.ndarray, n: int) -> np.ndarray:
    """O(4^n) reference transform: coeff[mask] = mean_x f(x) chi_T(x)."""
    size = 1 << n
    out = np.zeros(size)
    for mask in range(size):
        T = Subset.from_mask(n, mask)
        total = 0.0
        for u in range(size):
            total += values[u] * character(T, CubePoint(n, u))
        out[mask] = total / size
    return out


def brute_sensitivity_at(f, n: int, x: CubePoint) -> float:
    """Edge-walking oracle for the pointwise sensitivity of a callable."""
    fx = f(x)
    return 0.25 * sum((fx - f(x.flip(i))) ** 2 for i in range(1, n + 1))


def brute_avg_sensitivity(f, n: int) -> float:
    """Exhaustive mean of the pointwise sensitivity, single-point calls only."""
    total = 0.0
    for u in range(1 << n):
        total += brute_sensitivity_at(f, n, CubePoint(n, u))
    return total / (1 << n)


def brute_split(net: SparseNet) -> tuple[float, float]:
    """Edge-by-edge decomposition oracle using active_set on each endpoint."""
    n = net.n
    same = 0.0
    changed = 0.0
    for u in range(1 << n):
        x = CubePoint(n, u)
        hx = net.eval(x)
        rx = net.active_set(x)
        for i in range(1, n + 1):
            y = x.flip(i)
            term = 0.25 * (hx - net.eval(y)) ** 2
            if rx == net.active_set(y):
                same += term
            else:
                changed += term
    size = 1 << n
    return same / size, changed / size


def random_net(rng: np.random.Generator, n: int, s: int, k: int | None = None) -> SparseNet:
    return SparseNet(
        n=n,
        s=s,
        k=k if k is not None else s,
        u=rng.uniform(-1, 1, size=s),
        w=rng.normal(size=(s, n)),
        b=rng.normal(size=s),
    )


def parity_function(n: int, members: tuple[int, ...]):
    T = Subset(n, frozenset(members))

    def f(x: CubePoint) -> float:
        return float(character(T, x))

    return f
