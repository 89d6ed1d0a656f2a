"""Line-oriented instance files: parsing, printing, building, and errors."""

import pathlib

import pytest

from ellgroup.frame import convex_frame
from ellgroup.instfile import BuildError, ParseError, build, load, parse, print_doc

SAMPLE = """# two building blocks and a main instance
name base
ambient 2 1
mode generators
gen 1 0 0
gen 0 1 1
verify_box 4

name quot
mode construction
construction quotient base 1 0

name main
ambient 2 1
mode full
unit 1 1 1
prime 0 1
prime 2 0
"""


def test_parse_fields():
    doc = parse(SAMPLE)
    assert [b.name for b in doc.blocks] == ["base", "quot", "main"]
    base, quot, main = doc.blocks
    assert base.depths == (2, 1)
    assert base.gens == ((1, 0, 0), (0, 1, 1))
    assert base.verify_box == 4
    assert quot.construction == ("quotient", "base", (1, 0))
    assert doc.main is main
    assert main.unit == (1, 1, 1)
    assert main.primes == ((0, 1), (2, 0))


def test_print_parse_round_trip():
    doc = parse(SAMPLE)
    text = print_doc(doc)
    assert print_doc(parse(text)) == text
    assert text.endswith("\n")


def test_build_resolves_references():
    insts = build(parse(SAMPLE))
    assert insts["base"].ambient.depths == (2, 1)
    assert insts["quot"].ambient.depths == (1, 1)
    assert insts["main"].lattice.rank == 3


def test_construction_forms():
    text = """name a
ambient 1
mode full

name s
mode construction
construction sum a a

name l
mode construction
construction lex a

name c
mode construction
construction full a

name sb
mode construction
construction sub s 1 0
"""
    insts = build(parse(text))
    assert insts["s"].ambient.depths == (1, 1)
    assert insts["l"].ambient.depths == (2,)
    assert insts["c"].lattice == insts["a"].lattice
    assert insts["sb"].ambient.depths == (1,)


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("name x\nambient 2\nmode full\nbogus 1\n", 4),
        ("ambient 2\nmode full\n", 1),  # nameless: points at block start
        ("name x\nambient 0\nmode full\n", 2),
        ("name x\nambient 2\nmode generators\n", 1),  # no gen lines: block start
        ("name 9bad\nambient 2\nmode full\n", 1),
        ("name x\nambient 2\nmode full\ngen 1 1\n", 4),  # gen outside generators mode
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.lineno == lineno
    assert f"line {lineno}" in str(err.value)


def test_duplicate_and_missing_names():
    with pytest.raises(ParseError):
        parse("name a\nambient 1\nmode full\n\nname a\nambient 1\nmode full\n")
    with pytest.raises(BuildError):
        build(parse("name y\nmode construction\nconstruction quotient nosuch 1\n"))


def test_forward_reference_rejected():
    text = """name first
mode construction
construction lex later

name later
ambient 1
mode full
"""
    with pytest.raises(BuildError):
        build(parse(text))


def test_unit_must_fit_instance():
    with pytest.raises(BuildError):
        build(parse("name x\nambient 2\nmode full\nunit 1\n"))


def test_quotient_levels_must_fit():
    text = "name a\nambient 1\nmode full\n\nname q\nmode construction\nconstruction quotient a 5\n"
    with pytest.raises(BuildError):
        build(parse(text))


def test_load_from_disk(tmp_path):
    p = tmp_path / "inst.ell"
    p.write_text(SAMPLE)
    doc, insts = load(str(p))
    assert doc.main.name == "main"
    assert set(insts) == {"base", "quot", "main"}


BUNDLED = sorted((pathlib.Path(__file__).parent.parent / "instances").glob("*.ell"))


@pytest.mark.parametrize("path", BUNDLED, ids=lambda p: p.stem)
def test_bundled_instance_loads(path):
    doc, insts = load(str(path))
    G = insts[doc.main.name]
    F = convex_frame(G)
    assert len(F.elements) >= 2
    # round-trip: the printed doc parses back to the same blocks
    assert parse(print_doc(doc)) == doc


def test_bundled_instances_present():
    assert len(BUNDLED) >= 5
