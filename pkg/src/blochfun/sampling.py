"""Seeded random samples from the unit ball of the Bloch space.

Coefficient components are drawn uniformly from [-1, 1], the degree
uniformly from {2, ..., max_degree}, and the vector is scaled to unit
seminorm with a tightly certified norm (tol 4e-12 by default, roughly the
evaluation noise floor at degree 12) so that inequality margins in the
property suites are not eaten by normalization error.  Each sample owns an
independent generator spawned from (seed, i), which keeps suites
reproducible and order-independent.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .norm import seminorm_general, seminorm_radial
from .poly import Coefficients

__all__ = ["unit_ball_samples", "random_coefficients"]


def random_coefficients(rng: np.random.Generator, max_degree: int = 12,
                        complex_valued: bool = True) -> Coefficients:
    d = int(rng.integers(2, max_degree + 1))
    if complex_valued:
        vals = rng.uniform(-1.0, 1.0, d) + 1j * rng.uniform(-1.0, 1.0, d)
    else:
        vals = rng.uniform(0.0, 1.0, d).astype(complex)
    if not np.any(vals):
        vals[0] = 1.0
    return Coefficients(tuple(vals))


def unit_ball_samples(count: int, seed: int = 0, max_degree: int = 12,
                      complex_valued: bool = True, tol: float = 4e-12) -> Iterator[Coefficients]:
    """Yield ``count`` unit-seminorm coefficient vectors."""
    for i in range(count):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(i,)))
        f = random_coefficients(rng, max_degree, complex_valued)
        if complex_valued:
            nv = seminorm_general(f, tol).value
        else:
            real = Coefficients(tuple(c.real for c in f.coeffs))
            nv = seminorm_radial(real, tol).value
            f = real
        yield f.scaled(1.0 / nv)
