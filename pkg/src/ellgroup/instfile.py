"""Line-oriented instance files.

A file is a sequence of blocks separated by blank lines; '#' starts a comment
line.  Each block describes one instance and may refer to instances from
earlier blocks by name.  The last block is the main instance of the file.

Block fields, one per line, in canonical order:

    name <identifier>
    ambient <depth> <depth> ...          (omitted for construction blocks)
    mode full | generators | construction
    construction full <name>             (copy)
                 sum <name> <name>
                 lex <name>
                 quotient <name> <levels...>
                 sub <name> <levels...>
    gen <int> ...                        (generators mode, repeatable)
    verify_box <int>                     (optional, generators mode)
    unit <int> ...                       (optional designated element)
    prime <levels...>                    (optional, repeatable)

parse() and print_doc() are mutually inverse on well-formed documents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .ambient import Ambient
from .frame import convex_frame, quotient, sub_as_lgroup
from .lgroup import (
    LGroupInstance,
    direct_sum,
    full,
    generate_lsubgroup,
    lex_extension,
)

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*$")

CONSTRUCTIONS = ("full", "sum", "lex", "quotient", "sub")


class ParseError(ValueError):
    def __init__(self, msg: str, lineno: int):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass
class InstanceBlock:
    name: str
    mode: str
    depths: Optional[tuple[int, ...]] = None
    construction: Optional[tuple] = None  # (op, ref[, ref2 | levels])
    gens: tuple[tuple[int, ...], ...] = ()
    verify_box: Optional[int] = None
    unit: Optional[tuple[int, ...]] = None
    primes: tuple[tuple[int, ...], ...] = ()


@dataclass
class InstanceDoc:
    blocks: tuple[InstanceBlock, ...] = ()

    @property
    def main(self) -> InstanceBlock:
        return self.blocks[-1]


def _ints(parts, lineno, what, allow_negative=True):
    out = []
    for p in parts:
        try:
            v = int(p)
        except ValueError:
            raise ParseError(f"{what}: {p!r} is not an integer", lineno)
        if v < 0 and not allow_negative:
            raise ParseError(f"{what}: {p!r} must be nonnegative", lineno)
        out.append(v)
    return tuple(out)


def parse(text: str) -> InstanceDoc:
    blocks: list[InstanceBlock] = []
    cur: dict = {}
    cur_line = 0
    names = set()

    def flush():
        if not cur:
            return
        # absences point at the block's first line, stray fields at their own
        lineno = cur_line
        at = cur.get("_lines", {})
        if "name" not in cur:
            raise ParseError("block has no name line", lineno)
        mode = cur.get("mode")
        if mode is None:
            raise ParseError(f"block {cur['name']!r} has no mode line", lineno)
        blk = InstanceBlock(
            name=cur["name"],
            mode=mode,
            depths=cur.get("ambient"),
            construction=cur.get("construction"),
            gens=tuple(cur.get("gens", ())),
            verify_box=cur.get("verify_box"),
            unit=cur.get("unit"),
            primes=tuple(cur.get("primes", ())),
        )
        if mode == "construction":
            if blk.construction is None:
                raise ParseError(f"block {blk.name!r} lacks a construction line", lineno)
            if blk.depths is not None:
                raise ParseError(
                    "construction blocks must not declare an ambient",
                    at.get("ambient", lineno),
                )
        else:
            if blk.depths is None:
                raise ParseError(f"block {blk.name!r} lacks an ambient line", lineno)
            if blk.construction is not None:
                raise ParseError(
                    "only construction blocks take a construction line",
                    at.get("construction", lineno),
                )
        if mode == "full" and blk.gens:
            raise ParseError("full blocks take no generators", at.get("gen", lineno))
        if mode == "generators" and not blk.gens:
            raise ParseError(f"block {blk.name!r} has no gen lines", lineno)
        if blk.verify_box is not None and mode != "generators":
            raise ParseError(
                "verify_box only applies to generators blocks",
                at.get("verify_box", lineno),
            )
        blocks.append(blk)
        cur.clear()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            flush()
            continue
        if not cur:
            cur_line = lineno
        parts = line.split()
        key, rest = parts[0], parts[1:]
        cur.setdefault("_lines", {}).setdefault(key, lineno)
        if key == "name":
            if len(rest) != 1 or not _NAME_RE.match(rest[0]):
                raise ParseError("name wants a single identifier", lineno)
            if rest[0] in names:
                raise ParseError(f"duplicate block name {rest[0]!r}", lineno)
            if "name" in cur:
                raise ParseError("block already has a name", lineno)
            names.add(rest[0])
            cur["name"] = rest[0]
        elif key == "ambient":
            depths = _ints(rest, lineno, "ambient", allow_negative=False)
            if not depths or any(d < 1 for d in depths):
                raise ParseError("ambient wants positive fiber depths", lineno)
            cur["ambient"] = depths
        elif key == "mode":
            if rest not in (["full"], ["generators"], ["construction"]):
                raise ParseError(f"unknown mode {' '.join(rest)!r}", lineno)
            cur["mode"] = rest[0]
        elif key == "construction":
            if not rest or rest[0] not in CONSTRUCTIONS:
                raise ParseError("unknown construction", lineno)
            op = rest[0]
            if op in ("full", "lex"):
                if len(rest) != 2:
                    raise ParseError(f"{op} wants one instance name", lineno)
                cur["construction"] = (op, rest[1])
            elif op == "sum":
                if len(rest) != 3:
                    raise ParseError("sum wants two instance names", lineno)
                cur["construction"] = (op, rest[1], rest[2])
            else:  # quotient | sub
                if len(rest) < 3:
                    raise ParseError(f"{op} wants an instance name and levels", lineno)
                levels = _ints(rest[2:], lineno, op, allow_negative=False)
                cur["construction"] = (op, rest[1], levels)
        elif key == "gen":
            cur.setdefault("gens", []).append(_ints(rest, lineno, "gen"))
        elif key == "verify_box":
            vb = _ints(rest, lineno, "verify_box", allow_negative=False)
            if len(vb) != 1:
                raise ParseError("verify_box wants one integer", lineno)
            cur["verify_box"] = vb[0]
        elif key == "unit":
            cur["unit"] = _ints(rest, lineno, "unit")
        elif key == "prime":
            cur.setdefault("primes", []).append(
                _ints(rest, lineno, "prime", allow_negative=False)
            )
        else:
            raise ParseError(f"unknown field {key!r}", lineno)
    flush()
    if not blocks:
        raise ParseError("empty document", 1)
    return InstanceDoc(tuple(blocks))


def print_doc(doc: InstanceDoc) -> str:
    chunks = []
    for blk in doc.blocks:
        lines = [f"name {blk.name}"]
        if blk.depths is not None:
            lines.append("ambient " + " ".join(map(str, blk.depths)))
        lines.append(f"mode {blk.mode}")
        if blk.construction is not None:
            op = blk.construction[0]
            if op in ("full", "lex"):
                lines.append(f"construction {op} {blk.construction[1]}")
            elif op == "sum":
                lines.append(f"construction sum {blk.construction[1]} {blk.construction[2]}")
            else:
                lvl = " ".join(map(str, blk.construction[2]))
                lines.append(f"construction {op} {blk.construction[1]} {lvl}")
        for g in blk.gens:
            lines.append("gen " + " ".join(map(str, g)))
        if blk.verify_box is not None:
            lines.append(f"verify_box {blk.verify_box}")
        if blk.unit is not None:
            lines.append("unit " + " ".join(map(str, blk.unit)))
        for p in blk.primes:
            lines.append("prime " + " ".join(map(str, p)))
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


# ---------------------------------------------------------------------------
# building instances from a document


class BuildError(ValueError):
    pass


def build(doc: InstanceDoc) -> dict[str, LGroupInstance]:
    out: dict[str, LGroupInstance] = {}
    for blk in doc.blocks:
        if blk.mode == "full":
            inst = full(Ambient(blk.depths))
        elif blk.mode == "generators":
            amb = Ambient(blk.depths)
            for g in blk.gens:
                if len(g) != amb.dim:
                    raise BuildError(
                        f"{blk.name}: generator length {len(g)} != ambient dim {amb.dim}"
                    )
            vb = blk.verify_box if blk.verify_box is not None else 5
            inst = generate_lsubgroup(amb, blk.gens, verify_box=vb)
        else:
            op = blk.construction[0]
            ref = blk.construction[1]
            if ref not in out:
                raise BuildError(f"{blk.name}: unknown instance {ref!r}")
            base = out[ref]
            if op == "full":
                inst = base
            elif op == "lex":
                inst = lex_extension(base)
            elif op == "sum":
                ref2 = blk.construction[2]
                if ref2 not in out:
                    raise BuildError(f"{blk.name}: unknown instance {ref2!r}")
                inst = direct_sum(base, out[ref2])
            else:
                levels = blk.construction[2]
                F = convex_frame(base)
                if len(levels) != base.ambient.fiber_count:
                    raise BuildError(
                        f"{blk.name}: levels length {len(levels)} != fiber count"
                    )
                try:
                    H = F.cut(levels)
                except KeyError:
                    raise BuildError(f"{blk.name}: levels {levels} exceed fiber depths")
                inst = (
                    quotient(base, H).instance
                    if op == "quotient"
                    else sub_as_lgroup(base, H).instance
                )
        if blk.unit is not None and len(blk.unit) != inst.ambient.dim:
            raise BuildError(f"{blk.name}: unit length != ambient dim {inst.ambient.dim}")
        out[blk.name] = inst
    return out


def load(path: str) -> tuple[InstanceDoc, dict[str, LGroupInstance]]:
    with open(path, "r", encoding="utf-8") as fh:
        doc = parse(fh.read())
    return doc, build(doc)
