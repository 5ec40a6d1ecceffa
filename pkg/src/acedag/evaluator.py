"""Numeric evaluation of pooled features, product graphs and linear models.

A particle configuration is a list of coordinate tuples, one per particle:

    T    (theta,)                angle on the circle
    SO2  (r, theta)              radius in [0, 1] and angle
    O3   (r, theta, phi)         radius, polar angle in [0, pi], azimuth
    O3F  (r, theta, phi, mu)     O3 plus a scalar feature mu in [-1, 1]

The one-particle basis is e^(i m theta) on the circle, R_n(r) e^(-i m theta)
in the plane (note the sign of the exponent; both conventions yield the same
invariance structure), and R_n(r) Y_l^m for O3, optionally times T_f(mu) for
the feature-augmented case.  R_n(r) is the Chebyshev polynomial T_n(2r - 1)
mapped to the unit interval; the feature basis is T_f(mu) directly.

Pooled features sum the one-particle basis over all particles; a product
graph then evaluates every basis tuple with one complex multiplication per
node of order >= 2.  ``naive_eval`` recomputes any single tuple as a direct
product of pooled values and is the evaluation oracle the graph is tested
against.

Deviations in the invariance report are measured as |a - b| / (1 + |b|),
which behaves like a relative error for large values without blowing up
near zero.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

from acedag.graphbuild import EvalGraph
from acedag.indexsets import (
    Group,
    format_elements,
    one_particle_indices,
    parse_elements,
)
from acedag.special import chebyshev, sph_harm

_NCOORDS = {Group.T: 1, Group.SO2: 2, Group.O3: 3, Group.O3F: 4}


def _check_coords(group: Group, coords) -> None:
    if len(coords) != _NCOORDS[group]:
        raise ValueError(
            f"{group.value} particles take {_NCOORDS[group]} coordinates, got {coords!r}"
        )
    if group is not Group.T:
        r = coords[0]
        if not 0.0 <= r <= 1.0:
            raise ValueError(f"radius must lie in [0, 1], got {r!r}")
    if group is Group.O3F:
        mu = coords[3]
        if not -1.0 <= mu <= 1.0:
            raise ValueError(f"feature value must lie in [-1, 1], got {mu!r}")


def one_particle(group: Group, element: tuple, coords) -> complex:
    """Value of the one-particle basis function for one label and particle."""
    _check_coords(group, coords)
    if group is Group.T:
        (m,) = element
        return cmath.exp(1j * m * coords[0])
    if group is Group.SO2:
        n, m = element
        r, theta = coords
        return chebyshev(n, 2.0 * r - 1.0) * cmath.exp(-1j * m * theta)
    if group is Group.O3:
        n, l, m = element
        r, theta, phi = coords
        return chebyshev(n, 2.0 * r - 1.0) * sph_harm(l, m, theta, phi)
    n, l, m, f = element
    r, theta, phi, mu = coords
    return chebyshev(n, 2.0 * r - 1.0) * sph_harm(l, m, theta, phi) * chebyshev(f, mu)


def pool(group: Group, spec, particles) -> dict[tuple, complex]:
    """Pooled features: sum of the one-particle basis over all particles.

    Returns a value for every label with element degree within the cap, so
    the keys cover exactly the order-1 nodes of a graph built with the same
    spec.  An empty configuration pools to all zeros.
    """
    pooled: dict[tuple, complex] = {}
    for e in one_particle_indices(group, spec.int_cap()):
        pooled[e] = sum((one_particle(group, e, c) for c in particles), 0j)
    return pooled


def evaluate_graph(graph: EvalGraph, pooled: dict[tuple, complex]) -> list[complex]:
    """Value of every node, indexed by node id.

    Order-1 nodes take their pooled value; every other node is the product
    of its two parents, one multiplication per node.
    """
    values = [0j] * len(graph.nodes)
    for node in graph.nodes:
        if node.parents is None:
            e = node.elements[0]
            try:
                values[node.id] = pooled[e]
            except KeyError:
                raise KeyError(f"pooled basis has no value for one-particle label {e!r}") from None
        else:
            a, b = node.parents
            values[node.id] = values[a] * values[b]
    return values


def naive_eval(elements, pooled: dict[tuple, complex]) -> complex:
    """Direct product of pooled values over the tuple; the evaluation oracle."""
    out = 1 + 0j
    for e in elements:
        try:
            out *= pooled[e]
        except KeyError:
            raise KeyError(f"pooled basis has no value for one-particle label {e!r}") from None
    return out


def evaluate_model(graph: EvalGraph, coefficients: dict[tuple, complex], particles,
                   real_part: bool = False):
    """Linear model: sum of coefficient times basis-tuple value.

    Coefficient keys must be target tuples of the graph; auxiliary nodes
    implicitly carry zero.  With ``real_part`` the real part is returned,
    which upgrades planar rotation invariance to full O(2).
    """
    ids = []
    for t, c in coefficients.items():
        try:
            ids.append((graph.id_of(t), c))
        except KeyError:
            raise KeyError(f"coefficient on tuple absent from the graph: {t!r}") from None
        if not graph.is_target(t):
            raise ValueError(f"coefficient on non-target node: {t!r}")
    values = evaluate_graph(graph, pool(graph.group, graph.spec, particles))
    out = sum((c * values[i] for i, c in ids), 0j)
    return out.real if real_part else out


# --------------------------------------------------------------------------
# Symmetry transforms and the invariance report


def rotate_particles(group: Group, particles, alpha: float):
    """Rotate every particle by the same angle (about z for O3/O3F)."""
    if group is Group.T:
        return [(c[0] + alpha,) for c in particles]
    if group is Group.SO2:
        return [(c[0], c[1] + alpha) for c in particles]
    if group is Group.O3:
        return [(c[0], c[1], c[2] + alpha) for c in particles]
    return [(c[0], c[1], c[2] + alpha, c[3]) for c in particles]


def invert_particles(group: Group, particles):
    """Point inversion r -> -r; only meaningful for O3/O3F."""
    if group is Group.O3:
        return [(c[0], math.pi - c[1], c[2] + math.pi) for c in particles]
    if group is Group.O3F:
        return [(c[0], math.pi - c[1], c[2] + math.pi, c[3]) for c in particles]
    raise ValueError(f"inversion applies to O3/O3F, not {group.value}")


def random_particles(group: Group, rng: random.Random, max_count: int = 8):
    """Random configuration with 1..max_count particles."""
    count = rng.randint(1, max_count)
    out = []
    for _ in range(count):
        if group is Group.T:
            out.append((rng.uniform(0.0, 2.0 * math.pi),))
        elif group is Group.SO2:
            out.append((rng.random(), rng.uniform(0.0, 2.0 * math.pi)))
        else:
            r = rng.random()
            theta = math.acos(rng.uniform(-1.0, 1.0))
            phi = rng.uniform(0.0, 2.0 * math.pi)
            if group is Group.O3:
                out.append((r, theta, phi))
            else:
                out.append((r, theta, phi, rng.uniform(-1.0, 1.0)))
    return out


def _deviation(a: complex, b: complex) -> float:
    return abs(a - b) / (1.0 + abs(b))


@dataclass(frozen=True)
class InvarianceReport:
    group: Group
    trials: int
    rotation_max_dev: float
    inversion_max_dev: float | None  # None for groups without inversion symmetry


def invariance_check(group: Group, graph: EvalGraph, particles, trials: int = 8,
                     seed: int = 0) -> InvarianceReport:
    """Maximal deviation of target-node values under symmetry transforms.

    Rotations use ``trials`` random angles.  For T/SO2 the rotation is the
    full group action; for O3/O3F only z-rotations are exercised (the zero
    m-sum guarantees exactly those), plus point inversion, which the even
    l-sum guarantees.  Full SO(3) invariance of individual nodes is neither
    claimed nor tested.
    """
    rng = random.Random(seed)
    spec = graph.spec
    base = evaluate_graph(graph, pool(group, spec, particles))
    target_ids = [n.id for n in graph.nodes if not n.auxiliary and graph.is_target(n.elements)]
    rot_max = 0.0
    for _ in range(trials):
        alpha = rng.uniform(0.0, 2.0 * math.pi)
        vals = evaluate_graph(graph, pool(group, spec, rotate_particles(group, particles, alpha)))
        rot_max = max(rot_max, max((_deviation(vals[i], base[i]) for i in target_ids), default=0.0))
    inv_max = None
    if group.has_l:
        vals = evaluate_graph(graph, pool(group, spec, invert_particles(group, particles)))
        inv_max = max((_deviation(vals[i], base[i]) for i in target_ids), default=0.0)
    return InvarianceReport(group, trials, rot_max, inv_max)


# --------------------------------------------------------------------------
# File formats: particle configurations and coefficient vectors


def write_particles(path, group: Group, particles) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# group={group.value}\n")
        for coords in particles:
            _check_coords(group, coords)
            fh.write(" ".join(repr(float(c)) for c in coords) + "\n")


def read_particles(path) -> tuple[Group, list[tuple]]:
    """Parse a configuration file: a ``# group=..`` header, one particle per line."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    group = None
    particles: list[tuple] = []
    for i, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.startswith("group="):
                group = Group(body[len("group="):].strip())
            continue
        if group is None:
            raise ValueError(f"{path}: missing '# group=...' header before data")
        try:
            coords = tuple(float(tok) for tok in line.split())
        except ValueError:
            raise ValueError(f"{path}:{i}: bad coordinate line: {raw!r}") from None
        _check_coords(group, coords)
        particles.append(coords)
    if group is None:
        raise ValueError(f"{path}: missing '# group=...' header")
    return group, particles


def write_coefficients(path, coefficients: dict[tuple, complex]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for t in sorted(coefficients):
            c = complex(coefficients[t])
            fh.write(f"{format_elements(t)} {c.real!r} {c.imag!r}\n")


def read_coefficients(path, group: Group) -> dict[tuple, complex]:
    """Parse a coefficient file: ``<tuple> <re> <im>`` per line."""
    out: dict[tuple, complex] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for i, raw in enumerate(fh.read().splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"{path}:{i}: expected '<tuple> <re> <im>', got {raw!r}")
            elements = parse_elements(group, parts[0])
            try:
                out[elements] = complex(float(parts[1]), float(parts[2]))
            except ValueError:
                raise ValueError(f"{path}:{i}: bad coefficient values: {raw!r}") from None
    return out
