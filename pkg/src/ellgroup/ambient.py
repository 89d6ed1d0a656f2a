"""Ambient ordered groups: finite products of lexicographically ordered Z^d.

A fiber of depth d is Z^d ordered lexicographically with the FIRST coordinate
most significant.  The ambient is the direct product of fibers with the
product order.  Vectors are flat tuples of ints; the Ambient object knows the
fiber boundaries.
"""

from __future__ import annotations

from typing import Optional, Sequence

Vec = tuple[int, ...]


def lex_sign(t: Sequence[int]) -> int:
    """Sign of the most significant nonzero coordinate (0 for the zero tuple)."""
    for x in t:
        if x:
            return 1 if x > 0 else -1
    return 0


def lex_level(t: Sequence[int]) -> int:
    """Convex-chain level: 0 for zero, else depth minus leading index.

    Level d means the most significant coordinate is nonzero; level 1 means
    only the least significant coordinate is.
    """
    d = len(t)
    for i, x in enumerate(t):
        if x:
            return d - i
    return 0


class Ambient:
    def __init__(self, depths: Sequence[int]):
        depths = tuple(int(d) for d in depths)
        if not depths:
            raise ValueError("ambient needs at least one fiber")
        if any(d < 1 for d in depths):
            raise ValueError("fiber depths must be >= 1")
        self.depths = depths
        self.dim = sum(depths)
        slices = []
        start = 0
        for d in depths:
            slices.append((start, start + d))
            start += d
        self.slices = tuple(slices)

    def __eq__(self, other):
        return isinstance(other, Ambient) and self.depths == other.depths

    def __hash__(self):
        return hash(self.depths)

    def __repr__(self):
        return f"Ambient{self.depths}"

    @property
    def fiber_count(self) -> int:
        return len(self.depths)

    def check(self, v: Sequence[int]) -> Vec:
        if len(v) != self.dim:
            raise ValueError(f"vector length {len(v)} != ambient dimension {self.dim}")
        return tuple(int(x) for x in v)

    def zero(self) -> Vec:
        return (0,) * self.dim

    def split(self, v: Sequence[int]) -> tuple[Vec, ...]:
        return tuple(tuple(v[a:b]) for a, b in self.slices)

    def sign_pattern(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(lex_sign(v[a:b]) for a, b in self.slices)

    def level_pattern(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(lex_level(v[a:b]) for a, b in self.slices)

    def is_nonneg(self, v: Sequence[int]) -> bool:
        return all(s >= 0 for s in self.sign_pattern(v))

    def leq(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.is_nonneg(self.sub(b, a))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Vec:
        self.check(a), self.check(b)
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Vec:
        self.check(a), self.check(b)
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a: Sequence[int]) -> Vec:
        return tuple(-x for x in self.check(a))

    def scale(self, a: Sequence[int], n: int) -> Vec:
        return tuple(n * x for x in self.check(a))

    def join(self, a: Sequence[int], b: Sequence[int]) -> Vec:
        self.check(a), self.check(b)
        out = []
        for lo, hi in self.slices:
            pa, pb = a[lo:hi], b[lo:hi]
            out.extend(pa if lex_sign([x - y for x, y in zip(pa, pb)]) >= 0 else pb)
        return tuple(out)

    def meet(self, a: Sequence[int], b: Sequence[int]) -> Vec:
        self.check(a), self.check(b)
        out = []
        for lo, hi in self.slices:
            pa, pb = a[lo:hi], b[lo:hi]
            out.extend(pa if lex_sign([x - y for x, y in zip(pa, pb)]) <= 0 else pb)
        return tuple(out)

    def pos_part(self, a: Sequence[int]) -> Vec:
        self.check(a)
        out = []
        for lo, hi in self.slices:
            part = a[lo:hi]
            out.extend(part if lex_sign(part) > 0 else [0] * (hi - lo))
        return tuple(out)

    def neg_part(self, a: Sequence[int]) -> Vec:
        return self.pos_part(self.neg(a))

    def abs(self, a: Sequence[int]) -> Vec:
        return self.join(a, self.neg(a))

    def support(self, v: Sequence[int]) -> frozenset[int]:
        """Indices of fibers where v is nonzero."""
        return frozenset(i for i, (a, b) in enumerate(self.slices) if any(v[a:b]))

    def dominating_multiple(self, a: Sequence[int], b: Sequence[int]) -> Optional[int]:
        """Some k >= 1 with a <= k*b, or None when no multiple of b covers a.

        Both arguments must be nonnegative.  Per fiber, a strictly higher
        leading position in a than in b can never be covered; otherwise the
        leading coefficients settle it, so the answer is exact.
        """
        if not (self.is_nonneg(a) and self.is_nonneg(b)):
            raise ValueError("dominating_multiple needs nonnegative arguments")
        k = 1
        for lo, hi in self.slices:
            fa, fb = a[lo:hi], b[lo:hi]
            la, lb = lex_level(fa), lex_level(fb)
            if la == 0:
                continue
            if la > lb:
                return None
            if la == lb:
                lead_a, lead_b = fa[hi - lo - la], fb[hi - lo - lb]
                k = max(k, lead_a // lead_b + 1)
        return k

    def fiber_coords(self, fibers) -> list[int]:
        out = []
        for i in sorted(fibers):
            a, b = self.slices[i]
            out.extend(range(a, b))
        return out

    def coords_above_levels(self, levels: Sequence[int]) -> list[int]:
        """Coordinates that vanish on the convex cut at `levels`.

        In fiber i only the levels[i] least significant coordinates survive.
        """
        if len(levels) != self.fiber_count:
            raise ValueError("level pattern length != fiber count")
        out = []
        for i, lam in enumerate(levels):
            d = self.depths[i]
            if not (0 <= lam <= d):
                raise ValueError(f"level {lam} out of range for depth {d}")
            a, _ = self.slices[i]
            out.extend(range(a, a + d - lam))
        return out

    def all_level_patterns(self):
        """All per-fiber level vectors, lexicographically ordered."""
        from itertools import product

        return product(*(range(d + 1) for d in self.depths))

    def pattern_count(self) -> int:
        n = 1
        for d in self.depths:
            n *= d + 1
        return n
