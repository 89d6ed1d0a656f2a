"""Finite spectral spaces of prime convex subgroups.

Points are the primes of a frame; basic opens are enumerated over principal
subgroups only, since U(g) = {P : g not in P} depends only on the principal
subgroup of g.  Point sets are int bitmasks over the sorted prime list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .frame import ConvexSubgroup, Frame

TOPOLOGIES = ("hull_kernel", "inverse", "patch")


def _levels_label(H: ConvexSubgroup) -> str:
    return "(" + ",".join(str(x) for x in H.levels) + ")"


@dataclass(frozen=True)
class FiniteSpectrum:
    topology: str
    points: tuple[ConvexSubgroup, ...]
    basic_opens: tuple[tuple[str, int], ...]

    @property
    def all_mask(self) -> int:
        return (1 << len(self.points)) - 1

    def mask_of(self, elems: Sequence[ConvexSubgroup]) -> int:
        index = {p.levels: i for i, p in enumerate(self.points)}
        m = 0
        for e in elems:
            try:
                m |= 1 << index[e.levels]
            except KeyError:
                raise ValueError("element is not a point of this spectrum")
        return m

    def points_of(self, mask: int) -> tuple[ConvexSubgroup, ...]:
        return tuple(p for i, p in enumerate(self.points) if mask >> i & 1)


def _u_mask(frame: Frame, points, H: ConvexSubgroup) -> int:
    m = 0
    for i, P in enumerate(points):
        if not frame.leq(H, P):
            m |= 1 << i
    return m


def spec_space(frame: Frame, topology: str) -> FiniteSpectrum:
    if topology not in TOPOLOGIES:
        raise ValueError(f"unknown topology {topology!r}")
    points = frame.primes()
    full = (1 << len(points)) - 1
    principals = frame.principals()
    hk = []
    inv = []
    for H in principals:
        u = _u_mask(frame, points, H)
        hk.append((f"U{_levels_label(H)}", u))
        inv.append((f"V{_levels_label(H)}", full & ~u))
    if topology == "hull_kernel":
        base = hk
    elif topology == "inverse":
        base = inv
    else:
        base = [
            (f"{lu}&{lv}", mu & mv)
            for lu, mu in hk
            for lv, mv in inv
        ]
    return FiniteSpectrum(topology, points, tuple(base))


def closure(space: FiniteSpectrum, mask: int) -> int:
    """Topological closure: Q is close to S iff every basic open at Q meets S."""
    out = 0
    for i in range(len(space.points)):
        bit = 1 << i
        if mask & bit:
            out |= bit
            continue
        if all(not (m & bit) or (m & mask) for _, m in space.basic_opens):
            out |= bit
    return out


def is_dense(space: FiniteSpectrum, mask: int) -> bool:
    return all(m & mask for _, m in space.basic_opens if m)


def patch_closure_membership(frame: Frame, Q: ConvexSubgroup, family: Sequence[ConvexSubgroup]) -> bool:
    space = spec_space(frame, "patch")
    mask = space.mask_of(family)
    return bool(closure(space, mask) & space.mask_of([Q]))


# ---------------------------------------------------------------------------
# spectral characterizations used by the property deciders


def min_patch_dense(frame: Frame) -> bool:
    """The minimal primes are dense in the patch topology."""
    space = spec_space(frame, "patch")
    return is_dense(space, space.mask_of(frame.minimal_primes()))


def principal_pi_base(frame: Frame) -> bool:
    """{U(g) : 0 < g} is a pi-base for the patch topology."""
    space = spec_space(frame, "patch")
    points = space.points
    u_masks = [
        _u_mask(frame, points, H)
        for H in frame.principals()
        if H.rank > 0
    ]
    for _, m in space.basic_opens:
        if m and not any(u and u & m == u for u in u_masks):
            return False
    return True


def compact_open_distinct_closures(frame: Frame) -> bool:
    """Distinct compact opens of the hull-kernel space have distinct closures.

    Opens are unions of U(g) sets, and the principal subgroups are closed
    under join, so the compact opens are exactly the U(g).
    """
    space = spec_space(frame, "hull_kernel")
    masks = sorted({m for _, m in space.basic_opens})
    closures = [closure(space, m) for m in masks]
    return len(set(closures)) == len(masks)


def principal_is_min_intersection(frame: Frame) -> bool:
    """Every principal subgroup is the meet of the minimal primes above it."""
    mins = frame.minimal_primes()
    for H in frame.principals():
        above = [P for P in mins if frame.leq(H, P)]
        if frame.intersect_all(above) != H.lattice:
            return False
    return True
