"""Proximity catch digraphs and their invariants: domination number,
family-wise bounds on it, and relative arc density.

The digraph on a sample has an arc i -> j exactly when sample point j lies in
the proximity region of sample point i.  A vertex dominates itself and its
out-neighbors; the domination number is found exactly by a branch-and-bound
search over closed out-neighborhood bitmasks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Union

import numpy as np

from .geom import CENTROID, CenterSelector, Point2, Triangle, center
from .gamma import gamma1_interval_1d
from .proximity import ProximityMapSpec, adjacency, as_points_array


@dataclass(frozen=True)
class PcdDigraph:
    """Vertex count and loop-free arc set (ordered index pairs)."""

    n: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for i, j in self.arcs:
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"invalid arc ({i}, {j}) for a digraph on {self.n} vertices")

    def closed_out_masks(self) -> list[int]:
        """Bitmask per vertex: itself plus its out-neighbors."""
        masks = [1 << i for i in range(self.n)]
        for i, j in self.arcs:
            masks[i] |= 1 << j
        return masks

    def to_json_dict(self, spec: Optional[ProximityMapSpec] = None, seed: Optional[int] = None) -> dict:
        d: dict = {"n": self.n, "arcs": sorted(map(list, self.arcs))}
        d["spec"] = spec.describe() if spec is not None else None
        d["seed"] = seed
        return d

    @staticmethod
    def from_json_dict(d: dict) -> "PcdDigraph":
        return PcdDigraph(int(d["n"]), frozenset((int(i), int(j)) for i, j in d["arcs"]))


def build_pcd(spec: ProximityMapSpec, points) -> PcdDigraph:
    """Digraph with an arc i -> j iff point j is inside N(point i)."""
    if spec.family == "interval":
        n = len(points)
    else:
        n = len(as_points_array(points))
    adj = adjacency(spec, points)
    arcs = set()
    ii, jj = np.nonzero(adj)
    for i, j in zip(ii.tolist(), jj.tolist()):
        if i != j:
            arcs.add((i, j))
    return PcdDigraph(n, frozenset(arcs))


def arc_density(d: PcdDigraph) -> float:
    """|arcs| / (n (n - 1))."""
    if d.n < 2:
        raise ValueError("relative arc density needs at least two vertices")
    return len(d.arcs) / (d.n * (d.n - 1))


@dataclass(frozen=True)
class DominationResult:
    gamma: int
    witness: tuple[int, ...]


_EXHAUSTIVE_LIMIT = 24


def domination_number(d: PcdDigraph, kmax: Optional[int] = None) -> DominationResult:
    """Exact minimum dominating set via branch and bound on bitmask covers.

    Without `kmax` the search is allowed only up to 24 vertices; with `kmax`
    (use the family's worst-case bound) any size is accepted, and a ValueError
    signals that no dominating set of size <= kmax exists.
    """
    n = d.n
    if n == 0:
        raise ValueError("domination number of an empty digraph")
    if kmax is None and n > _EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search limited to {_EXHAUSTIVE_LIMIT} vertices; pass kmax")
    masks = d.closed_out_masks()
    full = (1 << n) - 1
    dominators_of = [[u for u in range(n) if (masks[u] >> v) & 1] for v in range(n)]
    limit_max = min(kmax, n) if kmax is not None else n

    def dfs(covered: int, chosen: list[int], limit: int) -> Optional[list[int]]:
        if covered == full:
            return chosen
        if len(chosen) >= limit:
            return None
        # branch on the uncovered vertex with the fewest dominators
        best_v, best_cands = -1, None
        rem = full & ~covered
        v = 0
        while rem:
            if rem & 1:
                cands = [u for u in dominators_of[v] if masks[u] & ~covered]
                if best_cands is None or len(cands) < len(best_cands):
                    best_v, best_cands = v, cands
                    if len(cands) <= 1:
                        break
            rem >>= 1
            v += 1
        if not best_cands:
            return None
        best_cands.sort(key=lambda u: -(masks[u] & ~covered).bit_count())
        for u in best_cands:
            res = dfs(covered | masks[u], chosen + [u], limit)
            if res is not None:
                return res
        return None

    for limit in range(1, limit_max + 1):
        res = dfs(0, [], limit)
        if res is not None:
            return DominationResult(len(res), tuple(sorted(res)))
    raise ValueError(f"no dominating set of size <= {limit_max}")


KappaBound = Union[int, Literal["unbounded", "unknown"]]


def kappa_upper_bound(spec: ProximityMapSpec) -> KappaBound:
    """Almost-sure least upper bound on the domination number, per family."""
    if spec.family == "pe":
        return 3
    if spec.family == "interval":
        return 2
    if spec.family == "cs":
        return "unbounded"
    return "unknown"


def pe_three_point_cover(spec: ProximityMapSpec, points) -> tuple[int, ...]:
    """For each nonempty vertex cell, the sample point closest to the opposite
    edge; the returned index set dominates the proportional-edge digraph."""
    if spec.family != "pe":
        raise ValueError("three-point cover applies to the proportional-edge family")
    from .proximity import bary_coords, vertex_cells

    pts = as_points_array(points)
    if len(pts) == 0:
        raise ValueError("empty sample")
    cells = vertex_cells(spec, pts)
    b = bary_coords(spec.triangle, pts)
    witness = []
    for i in range(3):
        members = np.nonzero(cells == i)[0]
        if len(members) == 0:
            continue
        k = members[int(np.argmin(b[i, members]))]
        witness.append(int(k))
    return tuple(sorted(set(witness)))


def cs_gamma_n_construction(
    n: int,
    t: Triangle,
    tau: float,
    center_sel: CenterSelector = CENTROID,
    epsilon: Optional[float] = None,
    rng=None,
) -> list[Point2]:
    """Points realizing domination number n under central similarity.

    Place n similar subtriangles of base 1/n along the edge between the first
    two vertices and put each point at the M-analogous center of its
    subtriangle.  With epsilon > 0 (and an rng) each point is jittered
    uniformly in a disk of that radius; `default_cs_epsilon` gives the
    base-length/(8n) default.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if not 0.0 < tau <= 1.0:
        raise ValueError("construction needs tau in (0, 1]")
    m = center(t, center_sel)
    v0, v1 = t.vertices[0], t.vertices[1]
    out = []
    for i in range(n):
        zx = v0[0] + (i / n) * (v1[0] - v0[0]) + (m[0] - v0[0]) / n
        zy = v0[1] + (i / n) * (v1[1] - v0[1]) + (m[1] - v0[1]) / n
        if epsilon:
            if rng is None:
                raise ValueError("epsilon jitter needs an rng")
            ang = rng.uniform(0.0, 2.0 * math.pi)
            rad = epsilon * math.sqrt(rng.uniform(0.0, 1.0))
            zx += rad * math.cos(ang)
            zy += rad * math.sin(ang)
        out.append(Point2(zx, zy))
    return out


def default_cs_epsilon(n: int, t: Triangle) -> float:
    base = math.dist(t.vertices[0], t.vertices[1])
    return base / (8.0 * n)


def interval_domination(sample: Sequence[float]) -> DominationResult:
    """Exact domination number for the 1-D map with anchors {0, 1}.

    Equals 1 iff some sample point lies in the covering interval; otherwise 2,
    witnessed by the innermost points on each side of 1/2.
    """
    if not len(sample):
        raise ValueError("empty sample")
    lo, hi = gamma1_interval_1d(sample)
    for idx, x in enumerate(sample):
        if lo < x < hi:
            return DominationResult(1, (idx,))
    left = [i for i, x in enumerate(sample) if x <= 0.5]
    right = [i for i, x in enumerate(sample) if x > 0.5]
    assert left and right, "one-sided samples always have domination number 1"
    i1 = max(left, key=lambda i: sample[i])
    i2 = min(right, key=lambda i: sample[i])
    return DominationResult(2, tuple(sorted((i1, i2))))
