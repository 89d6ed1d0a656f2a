"""Acceptance sweep: fourteen numbered end-to-end criteria.

Each criterion prints a single PASS or FAIL line (visible under plain
pytest) and then asserts, so the console scoreboard and the test outcomes
always agree.  The corpus criteria share one seeded 320-instance corpus;
oracle code for the frame-enumeration check lives at the bottom of this
file and deliberately avoids the level-cut machinery it is auditing.
"""

import itertools
import json
import subprocess
import sys
import time

import pytest

from ellgroup.ambient import Ambient
from ellgroup.deciders import (
    MAIN_CONDITIONS,
    check_bigard,
    check_main_theorem,
    check_mart_yos,
    check_quotient_lemma,
    check_radical_closure,
    check_w_theorem,
    check_yosida_theorem,
    is_hyperarchimedean,
    is_martinez,
    is_projectable,
    is_yosida,
    martinez_witness,
)
from ellgroup.frame import convex_frame, quotient, sub_as_lgroup
from ellgroup.fuzz import FuzzParams, random_instance, run_corpus
from ellgroup.gb import (
    FamilyError,
    gb_abs,
    gb_disjoint,
    gb_in_double_polar,
    gb_is_martinez,
    gb_is_yosida,
    gb_is_zero,
    gb_join,
    gb_leq,
    gb_martinez_witness,
    gb_meet,
    gb_principal_witness,
    gb_scale,
    min_in_patch_closure,
    pelement_check,
    prime_family,
    random_gb,
)
from ellgroup.lattice import canonical_basis, lattice_intersect
from ellgroup.lgroup import (
    direct_sum,
    disjointify,
    full,
    generate_lsubgroup,
    is_archimedean,
    lex_extension,
    riesz_decompose,
    weak_unit_exists,
)
from ellgroup.rng import SplitMix64

PARAMS = FuzzParams(count=320, seed=0)

_timings: dict[str, float] = {}


def verdict(capsys, label: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n{label} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"{label}: {detail}"


@pytest.fixture(scope="module")
def corpus():
    """Same instance stream as run_corpus(PARAMS): fork once per instance,
    once more for the per-instance extension sampling."""
    t0 = time.monotonic()
    rng = SplitMix64(PARAMS.seed)
    out = []
    for k in range(PARAMS.count):
        recipe, G = random_instance(rng.fork(), PARAMS)
        rng.fork()
        out.append((f"i{k:03d}-{recipe}", G))
    _timings["corpus_build"] = time.monotonic() - t0
    return out


@pytest.fixture(scope="module")
def corpus_report():
    t0 = time.monotonic()
    rep = run_corpus(PARAMS)
    _timings["corpus_run"] = time.monotonic() - t0
    return rep


def test_a01_main_equivalence_on_corpus(corpus, corpus_report, capsys):
    t0 = time.monotonic()
    defects = []
    for name, G in corpus:
        defects.extend(check_main_theorem(G, name).defects)
    sweep = time.monotonic() - t0
    total = sweep + _timings["corpus_build"] + _timings["corpus_run"]
    ok = (
        len(corpus) >= 300
        and not defects
        and corpus_report["defect_count"] == 0
        and total < 300.0
    )
    detail = (
        f"{len(corpus)} instances, {len(MAIN_CONDITIONS)} routes agree, "
        f"corpus defects {corpus_report['defect_count']}, "
        f"box-certified flags {corpus_report['flag_count']}, {total:.1f}s"
    )
    if defects:
        detail += f"; first: {defects[0]}"
    verdict(capsys, "A1", ok, detail)


def test_a02_totally_ordered_chain(capsys):
    rows = []
    ok = True
    for depth in range(1, 5):
        G = full(Ambient((depth,)))
        m, y, a = is_martinez(G), is_yosida(G), is_archimedean(G)
        agree = m == y == a and m == (depth == 1)
        ok = ok and agree
        rows.append(f"depth {depth}: {'yes' if m else 'no'}")
    verdict(capsys, "A2", ok, "single fiber, three routes agree (" + ", ".join(rows) + ")")


def test_a03_hyperarchimedean_decomposition(corpus, capsys):
    bad = [name for name, G in corpus if not check_bigard(G, name).passed]
    L = full(Ambient((2,)))
    frozen = is_projectable(L) and not is_martinez(L) and not is_hyperarchimedean(L)
    ok = not bad and frozen
    verdict(
        capsys,
        "A3",
        ok,
        f"hyper = projectable + double-polar on {len(corpus)} instances; "
        "depth-2 chain is projectable only",
    )


def test_a04_direct_sum_preservation(corpus, capsys):
    mart = [G for _, G in corpus if is_martinez(G)]
    yos = [G for _, G in corpus if is_yosida(G)]
    rng = SplitMix64(41)
    pairs = 0
    ok = len(mart) >= 2 and len(yos) >= 2
    for _ in range(100):
        A, B = (mart[rng.randrange(len(mart))] for _ in range(2))
        ok = ok and is_martinez(direct_sum(A, B))
        A, B = (yos[rng.randrange(len(yos))] for _ in range(2))
        ok = ok and is_yosida(direct_sum(A, B))
        pairs += 1
    verdict(
        capsys,
        "A4",
        ok and pairs >= 100,
        f"{pairs} pairs each: double-polar and max-intersection survive direct sums "
        f"({len(mart)} and {len(yos)} candidates)",
    )


def test_a05_lex_extension_always_breaks(corpus, capsys):
    checked = 0
    ok = True
    for name, G in corpus:
        if G.lattice.rank == 0 or not is_martinez(G):
            continue
        L = lex_extension(G)
        wit = martinez_witness(L)
        if wit is None:
            ok = False
            break
        g, h = wit
        F = convex_frame(L)
        P = F.principal(g)
        DP = F.double_polar_of_support(L.ambient.support(g))
        ok = ok and DP.lattice.member(h) and not P.lattice.member(h)
        checked += 1
        if not ok:
            break
    verdict(
        capsys,
        "A5",
        ok and checked >= 50,
        f"{checked} extensions lost the double-polar property, every witness re-verified",
    )


def test_a06_radical_closure_and_quotients(corpus, capsys):
    defects, flags = [], []
    join_pairs = quotients = disjoint_joins = 0
    for name, G in corpus:
        r = check_radical_closure(G, name)
        q = check_quotient_lemma(G, name)
        defects.extend(r.defects + q.defects)
        flags.extend(r.flags + q.flags)
        join_pairs += r.conditions["pairs"]
        quotients += q.conditions["quotients"]
        disjoint_joins += q.conditions["joins"]
    ok = not defects and join_pairs >= 100 and quotients + disjoint_joins >= 100
    verdict(
        capsys,
        "A6",
        ok,
        f"{join_pairs} subgroup joins, {quotients} quotients, {disjoint_joins} disjoint "
        f"joins kept the property; {len(flags)} box-certified flags, {len(defects)} defects",
    )


def test_a07_yosida_equivalence(corpus, capsys):
    defects = []
    for name, G in corpus:
        defects.extend(check_yosida_theorem(G, name).defects)
        defects.extend(check_mart_yos(G, name).defects)
    verdict(
        capsys,
        "A7",
        not defects,
        f"max-intersection routes agree on {len(corpus)} instances; "
        "emc + double-polar always implies it",
    )


def test_a08_unital_equivalence(corpus, capsys):
    checked = 0
    defects = []
    for name, G in corpus:
        u = weak_unit_exists(G)
        if u is None or not is_archimedean(G):
            continue
        defects.extend(check_w_theorem(G, u, name).defects)
        checked += 1
    ok = checked >= 30 and not defects
    verdict(
        capsys,
        "A8",
        ok,
        f"{checked} archimedean instances with weak units, unital routes (1)(3)(4) agree",
    )


def test_a09_pelement_routes(corpus, capsys):
    rng = SplitMix64(93)
    families = members = 0
    defects = []
    for name, G in corpus:
        F = convex_frame(G)
        primes = F.primes()
        cands = [prime_family(G, F.minimal_primes())]
        for _ in range(3):
            subset = [P for P in primes if rng.randrange(2)]
            try:
                cands.append(prime_family(G, subset))
            except FamilyError:
                continue
        for fam in cands:
            families += 1
            okmin, missing = min_in_patch_closure(G, fam)
            if not okmin:
                defects.append(f"{name}: minimal primes escape the patch closure {missing}")
            for Q in fam.primes:
                members += 1
                chk = pelement_check(G, fam, Q)
                if not chk["agree"]:
                    defects.append(f"{name}: routes split at {Q.levels}")
                defects.extend(f"{name}: {d}" for d in chk["defects"])
    ok = families >= len(corpus) and not defects
    verdict(
        capsys,
        "A9",
        ok,
        f"{families} valid families, {members} member checks, four routes agree; "
        "minimal primes always in the patch closure",
    )


def test_a10_extension_equivalence(corpus, capsys):
    pairs = false_verdicts = 0
    confirmed = True
    defects = []
    for name, G in corpus:
        F = convex_frame(G)
        fam = prime_family(G, F.minimal_primes())
        pairs += 1
        m, y = gb_is_martinez(G, fam), gb_is_yosida(G, fam)
        if m != y:
            defects.append(f"{name}: extension verdicts split ({m} vs {y})")
            continue
        if m:
            continue
        false_verdicts += 1
        wit = gb_martinez_witness(G, fam)
        if wit is None:
            defects.append(f"{name}: false verdict without witness")
            continue
        b, c = wit
        inside = gb_in_double_polar(c, b)
        ab, ac = gb_abs(b), gb_abs(c)
        undominated = all(not gb_leq(ac, gb_scale(ab, k)) for k in range(1, 65))
        exact = gb_principal_witness(ac, ab) is None
        confirmed = confirmed and inside and undominated and exact
    zsq, lexz2 = full(Ambient((1, 1))), full(Ambient((2,)))
    fz = prime_family(zsq, convex_frame(zsq).minimal_primes())
    fl = prime_family(lexz2, [convex_frame(lexz2).cut((0,))])
    frozen = (
        gb_is_martinez(zsq, fz)
        and gb_is_yosida(zsq, fz)
        and not gb_is_martinez(lexz2, fl)
        and not gb_is_yosida(lexz2, fl)
    )
    ok = pairs >= 100 and not defects and confirmed and frozen
    verdict(
        capsys,
        "A10",
        ok,
        f"{pairs} (instance, family) pairs agree; {false_verdicts} false verdicts "
        "confirmed undominated through multiple 64 (and exactly)",
    )


def test_a11_extension_polars(capsys):
    fams = []
    for depths in ((1, 1), (2,), (2, 1), (1, 1, 1)):
        G = full(Ambient(depths))
        fams.append(prime_family(G, convex_frame(G).minimal_primes()))
    rng = SplitMix64(55)
    pairs = 0
    ok = True
    for i in range(1000):
        fam = fams[i % len(fams)]
        f, h = random_gb(fam, rng), random_gb(fam, rng)
        ok = ok and gb_disjoint(f, h) == gb_is_zero(gb_meet(gb_abs(f), gb_abs(h)))
        ok = ok and gb_in_double_polar(f, f)
        ok = ok and gb_in_double_polar(f, gb_join(gb_abs(f), gb_abs(h)))
        pairs += 1
    verdict(
        capsys,
        "A11",
        ok and pairs == 1000,
        f"{pairs} element pairs: disjointness matches meet-zero, double polar "
        "reflexive and join-monotone",
    )


def test_a12_perp_lemma_and_identities(corpus, capsys):
    rng = SplitMix64(67)
    perp_samples = 0
    ok = True
    stream = itertools.cycle(corpus)
    while perp_samples < 200:
        name, G = next(stream)
        F = convex_frame(G)
        elems = [H for H in F.elements if H.lattice.rank > 0]
        if not elems:
            continue
        H = elems[rng.randrange(len(elems))]
        sub = sub_as_lgroup(G, H)
        basis = sub.instance.lattice.basis
        h = sub.instance.ambient.zero()
        for row in basis:
            h = sub.instance.ambient.add(
                h, sub.instance.ambient.scale(row, rng.randint(-2, 2))
            )
        if not any(h):
            continue
        SF = convex_frame(sub.instance)
        inner = SF.double_polar_of_support(sub.instance.ambient.support(h))
        hg = sub.extend(h, G.ambient.dim)
        outer = F.double_polar_of_support(G.ambient.support(hg))
        lifted = canonical_basis(
            [sub.extend(row, G.ambient.dim) for row in inner.lattice.basis],
            G.ambient.dim,
        )
        ok = ok and lifted.basis == lattice_intersect(H.lattice, outer.lattice).basis
        perp_samples += 1
        if not ok:
            break

    ambients = [Ambient(d) for d in ((1, 1), (2,), (2, 1), (1, 1, 1), (3,))]
    unit_amb = Ambient((1, 1, 1))
    unit_inst = full(unit_amb)
    draws = 0
    for i in range(1000):
        amb = ambients[i % len(ambients)]
        a = tuple(rng.randint(-6, 6) for _ in range(amb.dim))
        b = tuple(rng.randint(-6, 6) for _ in range(amb.dim))
        ok = ok and amb.sub(amb.pos_part(a), amb.neg_part(a)) == a
        ok = ok and amb.abs(a) == amb.join(amb.pos_part(a), amb.neg_part(a))
        aa, ab = amb.abs(a), amb.abs(b)
        a1, b1 = disjointify(full(amb), aa, ab)
        m = amb.meet(aa, ab)
        ok = ok and amb.meet(a1, b1) == amb.zero()
        ok = ok and amb.sub(aa, a1) == m and amb.sub(ab, b1) == m
        ds = [tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(2)]
        total = unit_amb.add(ds[0], ds[1])
        c = tuple(rng.randint(0, t) for t in total)
        parts = riesz_decompose(unit_inst, c, ds)
        back = unit_amb.zero()
        for p, d in zip(parts, ds):
            ok = ok and unit_amb.is_nonneg(p) and unit_amb.leq(p, d)
            back = unit_amb.add(back, p)
        ok = ok and back == c
        draws += 1
    verdict(
        capsys,
        "A12",
        ok and perp_samples >= 200 and draws == 1000,
        f"{perp_samples} relative double polars match the intersection form; "
        f"{draws} draws of sign-part, disjointify and interpolation identities",
    )


# ---------------------------------------------------------------------------
# A13 oracle: brute-force convex closure inside a box, no level-cut machinery


def _box_points(G, bound):
    return [
        v
        for v in itertools.product(range(-bound, bound + 1), repeat=G.ambient.dim)
        if G.lattice.member(v)
    ]


def _convex_close(amb, boxset, seed_pts, known):
    """Smallest subset of the box containing seed_pts that is closed under the
    group and lattice operations (when the result stays in the box) and under
    absorbing box elements squeezed between zero and a member's absolute
    value.

    `known` holds (required, pool, closure) records of finished closures.  If
    the working set contains all of `required` plus one pool generator and
    sits inside the recorded closure, both closures coincide and the loop
    stops early."""
    members = {amb.zero()} | set(seed_pts)
    work = list(members)
    while True:
        while work:
            for required, pool, C in known:
                if (
                    required <= members
                    and (not pool or pool & members)
                    and members <= C
                ):
                    return C
            batch, work = work, []
            new = set()
            for x in batch:
                nx = amb.neg(x)
                if nx in boxset and nx not in members:
                    new.add(nx)
                for y in members:
                    for z in (
                        amb.add(x, y),
                        amb.sub(x, y),
                        amb.sub(y, x),
                        amb.join(x, y),
                        amb.meet(x, y),
                    ):
                        if z in boxset and z not in members:
                            new.add(z)
            members |= new
            work = list(new)
        absorbed = {
            z
            for z in boxset
            if z not in members and any(amb.leq(amb.abs(z), amb.abs(x)) for x in members)
        }
        if not absorbed:
            return frozenset(members)
        members |= absorbed
        work = list(absorbed)


def _oracle_convex_subgroups(G, bound):
    """All convex subgroups of G within the box: principal closures of every
    box element (small generators first, so repeated cuts exit through the
    pool record), then closure of the family under pairwise joins."""
    amb = G.ambient
    box = _box_points(G, bound)
    boxset = set(box)
    known: list = []  # (required, pool, closure); pool mutates as seeds repeat
    pools: dict[frozenset, set] = {}
    seen_keys = set()
    for g in sorted(box, key=amb.abs):
        key = amb.abs(g)
        if not any(g) or key in seen_keys:
            continue
        seen_keys.add(key)
        C = _convex_close(amb, boxset, [g], known)
        if C in pools:
            pools[C].add(g)
        else:
            pools[C] = {g}
            known.append((frozenset(), pools[C], C))
    found = {frozenset({amb.zero()})} | set(pools)
    reps = {C: frozenset([next(iter(pool))]) for C, pool in pools.items()}
    while True:
        new = set()
        for A, B in itertools.combinations(sorted(found, key=sorted), 2):
            if A <= B or B <= A or A not in reps or B not in reps:
                continue
            seeds = reps[A] | reps[B]
            J = _convex_close(amb, boxset, seeds, known)
            if J not in found:
                new.add((seeds, J))
        if not new:
            return found
        for seeds, J in new:
            known.append((seeds, frozenset(), J))
            found.add(J)
            reps[J] = seeds


A13_INSTANCES = [
    ("chain1", full(Ambient((1,)))),
    ("chain2", full(Ambient((2,)))),
    ("chain3", full(Ambient((3,)))),
    ("plane", full(Ambient((1, 1)))),
    ("mixed21", full(Ambient((2, 1)))),
    ("mixed12", full(Ambient((1, 2)))),
    ("cube", full(Ambient((1, 1, 1)))),
    ("diag", generate_lsubgroup(Ambient((1, 1)), [(1, 1)], verify_box=4)),
    ("plane-in-cube", generate_lsubgroup(Ambient((1, 1, 1)), [(1, 1, 0), (3, 0, 0)], verify_box=4)),
    ("ray", generate_lsubgroup(Ambient((2, 1)), [(1, 1, 1)], verify_box=4)),
]
A13_INSTANCES.append(
    ("chain2-over-cut", quotient(full(Ambient((2,))), convex_frame(full(Ambient((2,)))).cut((1,))).instance)
)
A13_INSTANCES.append(
    ("mixed21-below-cut", sub_as_lgroup(full(Ambient((2, 1))), convex_frame(full(Ambient((2, 1)))).cut((1, 1))).instance)
)


def test_a13_frame_enumeration_matches_box_oracle(capsys):
    bound = 3
    ok = True
    checked = 0
    detail_extra = ""
    for name, G in A13_INSTANCES:
        assert G.ambient.dim <= 3
        box = _box_points(G, bound)
        oracle = _oracle_convex_subgroups(G, bound)
        frame_sets = {
            frozenset(v for v in box if H.lattice.member(v))
            for H in convex_frame(G).elements
        }
        if oracle != frame_sets:
            ok = False
            detail_extra = f"; first split on {name}"
            break
        checked += 1
    verdict(
        capsys,
        "A13",
        ok,
        f"{checked} instances of dimension <= 3: level-cut enumeration equals the "
        f"box-{bound} convex-closure oracle" + detail_extra,
    )


def test_a14_report_determinism(capsys):
    argv = [sys.executable, "-m", "ellgroup.cli", "fuzz", "--count", "50", "--seed", "7", "--json"]
    runs = [subprocess.run(argv, capture_output=True, timeout=300) for _ in range(2)]
    ok = (
        runs[0].returncode == 0
        and runs[1].returncode == 0
        and runs[0].stdout == runs[1].stdout
        and len(runs[0].stdout) > 0
    )
    rep = json.loads(runs[0].stdout) if ok else {}
    ok = ok and rep.get("defect_count") == 0 and len(rep.get("instances", ())) == 50
    verdict(
        capsys,
        "A14",
        ok,
        f"two subprocess runs, byte-identical {len(runs[0].stdout)}-byte reports, "
        "zero defects",
    )
