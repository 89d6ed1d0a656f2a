"""The finite frame of convex lattice-ordered subgroups of an instance.

Every convex l-subgroup of a subgroup of a product of lex fibers is the
intersection of the subgroup with a product of per-fiber chain cuts (proof in
docs/theory.md), so the frame is enumerated by level patterns and deduplicated
by canonical basis.  Join and meet are cuts at componentwise max/min of the
minimal patterns; containment is the componentwise order on minimal patterns.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence

from .ambient import Ambient, Vec
from .lattice import IntLattice, canonical_basis, lattice_intersect, zero_lattice
from .lgroup import (
    LGroupInstance,
    _combined_status,
    minimal_levels,
    pattern_lattice,
    realizable_level_patterns,
    trivial_instance,
)

DEFAULT_FRAME_CAP = 4096


class FrameCapError(RuntimeError):
    """Raised when an ambient's level-pattern count exceeds the guard."""


def frame_cap() -> int:
    raw = os.environ.get("ELLGROUP_FRAME_CAP")
    if raw is None:
        return DEFAULT_FRAME_CAP
    try:
        return int(raw)
    except ValueError:
        raise FrameCapError(f"ELLGROUP_FRAME_CAP is not an integer: {raw!r}")


def check_frame_cap(ambient: Ambient) -> None:
    cap = frame_cap()
    n = ambient.pattern_count()
    if n > cap:
        raise FrameCapError(f"frame guard: {n} level patterns exceed the cap {cap}")


@dataclass(frozen=True)
class ConvexSubgroup:
    """A convex l-subgroup: minimal cutting levels plus its lattice."""

    levels: tuple[int, ...]
    lattice: IntLattice

    @property
    def rank(self) -> int:
        return self.lattice.rank


class Frame:
    def __init__(self, G: LGroupInstance):
        check_frame_cap(G.ambient)
        self.G = G
        self.ambient = G.ambient
        cut_to_elem: dict[tuple[Vec, ...], ConvexSubgroup] = {}
        by_pattern: dict[tuple[int, ...], ConvexSubgroup] = {}
        for pat in G.ambient.all_level_patterns():
            lat = pattern_lattice(G, pat)
            elem = cut_to_elem.get(lat.basis)
            if elem is None:
                elem = ConvexSubgroup(minimal_levels(G.ambient, lat), lat)
                cut_to_elem[lat.basis] = elem
            by_pattern[pat] = elem
        self._by_pattern = by_pattern
        self.elements: tuple[ConvexSubgroup, ...] = tuple(
            sorted(cut_to_elem.values(), key=lambda e: e.levels)
        )
        self._by_levels = {e.levels: e for e in self.elements}
        self.bottom = self._by_levels[
            minimal_levels(G.ambient, zero_lattice(G.ambient.dim))
        ]
        self.top = by_pattern[tuple(G.ambient.depths)]
        self._primes: Optional[tuple[ConvexSubgroup, ...]] = None

    # -- basic poset structure ------------------------------------------------

    def cut(self, levels: Sequence[int]) -> ConvexSubgroup:
        """Frame element for an arbitrary (not necessarily minimal) pattern."""
        return self._by_pattern[tuple(levels)]

    def by_levels(self, levels: Sequence[int]) -> Optional[ConvexSubgroup]:
        return self._by_levels.get(tuple(levels))

    def leq(self, a: ConvexSubgroup, b: ConvexSubgroup) -> bool:
        return all(x <= y for x, y in zip(a.levels, b.levels))

    def meet(self, a: ConvexSubgroup, b: ConvexSubgroup) -> ConvexSubgroup:
        return self.cut(tuple(min(x, y) for x, y in zip(a.levels, b.levels)))

    def join(self, a: ConvexSubgroup, b: ConvexSubgroup) -> ConvexSubgroup:
        return self.cut(tuple(max(x, y) for x, y in zip(a.levels, b.levels)))

    def hasse_edges(self) -> list[tuple[ConvexSubgroup, ConvexSubgroup]]:
        out = []
        for a in self.elements:
            for b in self.elements:
                if a is b or not self.leq(a, b):
                    continue
                if any(
                    c is not a and c is not b and self.leq(a, c) and self.leq(c, b)
                    for c in self.elements
                ):
                    continue
                out.append((a, b))
        return out

    # -- principal subgroups and polars ---------------------------------------

    def principal(self, g: Sequence[int]) -> ConvexSubgroup:
        """Smallest convex l-subgroup containing g: the cut at g's levels."""
        g = self.ambient.check(g)
        if not self.G.member(g):
            raise ValueError("element is not in the instance")
        return self.cut(self.ambient.level_pattern(g))

    def principals(self) -> tuple[ConvexSubgroup, ...]:
        """All principal convex l-subgroups (one per attained level pattern)."""
        pats = realizable_level_patterns(self.G)
        seen = {}
        for pat in pats:
            elem = self.cut(pat)
            seen[elem.levels] = elem
        return tuple(sorted(seen.values(), key=lambda e: e.levels))

    def is_principal(self, H: ConvexSubgroup) -> Optional[Vec]:
        """Witness generator if H is singly generated, else None."""
        return realizable_level_patterns(self.G).get(H.levels)

    def polar_of_support(self, fibers) -> ConvexSubgroup:
        pat = tuple(
            0 if i in fibers else d for i, d in enumerate(self.ambient.depths)
        )
        return self.cut(pat)

    def realized_support(self, H: ConvexSubgroup) -> frozenset[int]:
        supp: set[int] = set()
        for row in H.lattice.basis:
            supp |= self.ambient.support(row)
        return frozenset(supp)

    def polar(self, S: Sequence[Sequence[int]] | ConvexSubgroup) -> ConvexSubgroup:
        """S^perp: elements disjoint from everything in S.

        In a product of chains, |h| ^ |s| = 0 iff h and s have disjoint fiber
        support, so the polar is the cut vanishing on the union of supports.
        """
        if isinstance(S, ConvexSubgroup):
            supp = self.realized_support(S)
        else:
            supp = frozenset()
            for s in S:
                s = self.ambient.check(s)
                if not self.G.member(s):
                    raise ValueError("polar argument outside the instance")
                supp |= self.ambient.support(s)
        return self.polar_of_support(supp)

    def double_polar(self, g: Sequence[int]) -> ConvexSubgroup:
        g = self.ambient.check(g)
        if not self.G.member(g):
            raise ValueError("element is not in the instance")
        return self.double_polar_of_support(self.ambient.support(g))

    def double_polar_of_support(self, fibers) -> ConvexSubgroup:
        p = self.polar_of_support(fibers)
        return self.polar_of_support(self.realized_support(p))

    def d_closure(self, H: ConvexSubgroup) -> ConvexSubgroup:
        """Join of the double polars of the elements of H."""
        sub = LGroupInstance(self.ambient, H.lattice, _combined_status(self.G))
        out = self.bottom
        for pat in realizable_level_patterns(sub):
            supp = frozenset(i for i, lam in enumerate(pat) if lam > 0)
            out = self.join(out, self.double_polar_of_support(supp))
        return out

    def is_d_subgroup(self, H: ConvexSubgroup) -> bool:
        return self.d_closure(H) == H

    # -- primes ---------------------------------------------------------------

    def is_prime(self, H: ConvexSubgroup) -> bool:
        """H != G is prime iff the frame elements above it form a chain."""
        if H is self.top:
            raise ValueError("primality is only defined for proper subgroups")
        above = [K for K in self.elements if self.leq(H, K)]
        for i in range(len(above)):
            for j in range(i + 1, len(above)):
                if not self.leq(above[i], above[j]) and not self.leq(above[j], above[i]):
                    return False
        return True

    def primes(self) -> tuple[ConvexSubgroup, ...]:
        if self._primes is None:
            self._primes = tuple(
                H for H in self.elements if H is not self.top and self.is_prime(H)
            )
        return self._primes

    def minimal_primes(self) -> tuple[ConvexSubgroup, ...]:
        ps = self.primes()
        return tuple(
            p for p in ps if not any(q is not p and self.leq(q, p) for q in ps)
        )

    def max_convex(self) -> tuple[ConvexSubgroup, ...]:
        proper = [H for H in self.elements if H is not self.top]
        return tuple(
            h
            for h in proper
            if not any(k is not h and self.leq(h, k) for k in proper)
        )

    def values(self, g: Sequence[int]) -> tuple[ConvexSubgroup, ...]:
        """Convex subgroups maximal with respect to omitting g."""
        g = self.ambient.check(g)
        if not self.G.member(g):
            raise ValueError("element is not in the instance")
        if not any(g):
            raise ValueError("the zero element has no values")
        omit = [H for H in self.elements if not H.lattice.member(g)]
        return tuple(
            h for h in omit if not any(k is not h and self.leq(h, k) for k in omit)
        )

    def spec_d(self) -> tuple[ConvexSubgroup, ...]:
        return tuple(p for p in self.primes() if self.is_d_subgroup(p))

    def max_d(self) -> tuple[ConvexSubgroup, ...]:
        ds = [H for H in self.elements if H is not self.top and self.is_d_subgroup(H)]
        return tuple(
            h for h in ds if not any(k is not h and self.leq(h, k) for k in ds)
        )

    def intersect_all(self, elems: Sequence[ConvexSubgroup]) -> IntLattice:
        """Lattice intersection; the empty intersection is all of G."""
        out = self.G.lattice
        for e in elems:
            out = lattice_intersect(out, e.lattice)
        return out


def convex_frame(G: LGroupInstance) -> Frame:
    if G._frame is None:
        G._frame = Frame(G)
    return G._frame


# ---------------------------------------------------------------------------
# quotients and subgroups as standalone instances


@dataclass(frozen=True)
class Quotient:
    """G/H presented on the coordinates above H's cut.

    Projection drops, in each fiber, the H.levels[i] least significant
    coordinates (and whole fibers cut to depth zero); the kernel is exactly H
    and cosets map bijectively to projections, with g+H >= H iff the projected
    vector is nonnegative in the truncated ambient.
    """

    instance: LGroupInstance
    kept: tuple[tuple[int, int], ...]  # (source slice, kept top depth)
    trivial: bool

    def project(self, v: Sequence[int]) -> Vec:
        if self.trivial:
            return self.instance.ambient.zero()
        out: list[int] = []
        for (a, b), keep in self.kept:
            out.extend(v[a : a + keep])
        return tuple(out)


def quotient(G: LGroupInstance, H: ConvexSubgroup) -> Quotient:
    kept = []
    for i, d in enumerate(G.ambient.depths):
        keep = d - H.levels[i]
        if keep > 0:
            kept.append((G.ambient.slices[i], keep))
    if not kept:
        return Quotient(trivial_instance(), (), True)
    ambient = Ambient(tuple(keep for _, keep in kept))
    rows = []
    for row in G.lattice.basis:
        out: list[int] = []
        for (a, b), keep in kept:
            out.extend(row[a : a + keep])
        rows.append(out)
    inst = LGroupInstance(ambient, canonical_basis(rows, ambient.dim), _combined_status(G))
    return Quotient(inst, tuple(kept), False)


@dataclass(frozen=True)
class SubInstance:
    """H as a standalone instance on the coordinates below its cut."""

    instance: LGroupInstance
    kept: tuple[tuple[int, int], ...]  # (source slice, kept low depth)
    all_slices: tuple[tuple[int, int], ...]
    levels: tuple[int, ...]
    trivial: bool

    def restrict(self, v: Sequence[int]) -> Vec:
        for (a, b), lam in zip(self.all_slices, self.levels):
            if any(v[a : b - lam]):
                raise ValueError("element is not inside the subgroup's cut")
        if self.trivial:
            return self.instance.ambient.zero()
        out: list[int] = []
        for (a, b), keep in self.kept:
            out.extend(v[b - keep : b])
        return tuple(out)

    def extend(self, v: Sequence[int], total_dim: int) -> Vec:
        out = [0] * total_dim
        if self.trivial:
            return tuple(out)
        pos = 0
        for (a, b), keep in self.kept:
            out[b - keep : b] = v[pos : pos + keep]
            pos += keep
        return tuple(out)


def sub_as_lgroup(G: LGroupInstance, H: ConvexSubgroup) -> SubInstance:
    kept = []
    for i, lam in enumerate(H.levels):
        if lam > 0:
            kept.append((G.ambient.slices[i], lam))
    if not kept:
        return SubInstance(trivial_instance(), (), G.ambient.slices, H.levels, True)
    ambient = Ambient(tuple(lam for _, lam in kept))
    rows = []
    for row in H.lattice.basis:
        out: list[int] = []
        for (a, b), keep in kept:
            out.extend(row[b - keep : b])
        rows.append(out)
    inst = LGroupInstance(ambient, canonical_basis(rows, ambient.dim), _combined_status(G))
    return SubInstance(inst, tuple(kept), G.ambient.slices, H.levels, False)
