"""Exact workbench for finitely generated abelian lattice-ordered groups.

Instances live in products of lexicographic fibers; every computation is
integer-exact.  The main entry points:

- ambient/lgroup: build instances (full ambients, generated subgroups,
  sums, lexicographic extensions, quotients, subgroups)
- frame: the finite frame of convex subgroups, polars, primes
- spectra: hull-kernel, inverse, and patch topologies on the primes
- deciders: structural properties and equivalence cross-checks
- gb: the coset-column extension over a prime family
- fuzz: randomized corpus runs
- cli: `ellgroup` command line
"""

from .ambient import Ambient, Vec, lex_level, lex_sign
from .lattice import IntLattice, canonical_basis, escapes_sections
from .lgroup import (
    ClosureStatus,
    LGroupInstance,
    archimedean_witness,
    direct_sum,
    disjointify,
    full,
    generate_lsubgroup,
    is_archimedean,
    is_strong_unit,
    is_weak_unit,
    lex_extension,
    realizable_level_patterns,
    riesz_decompose,
    strong_unit,
    trivial_instance,
    weak_unit_exists,
)
from .frame import (
    ConvexSubgroup,
    Frame,
    FrameCapError,
    convex_frame,
    quotient,
    sub_as_lgroup,
)
from .spectra import FiniteSpectrum, TOPOLOGIES, closure, is_dense, spec_space
from .deciders import (
    PropertyReport,
    build_property_report,
    check_bigard,
    check_main_theorem,
    check_preservation,
    check_w_theorem,
    check_yosida_theorem,
    has_emc,
    is_complemented,
    is_hyperarchimedean,
    is_martinez,
    is_martinez_via,
    is_projectable,
    is_yosida,
    is_yosida_via,
    martinez_witness,
    yosida_witness,
)
from .gb import (
    CofiniteIndexSet,
    FamilyError,
    GBElement,
    PrimeFamily,
    cozero,
    gb_abs,
    gb_add,
    gb_disjoint,
    gb_element,
    gb_from_global,
    gb_in_double_polar,
    gb_is_martinez,
    gb_is_yosida,
    gb_join,
    gb_leq,
    gb_meet,
    gb_principal_witness,
    gb_single,
    prime_family,
)
from .fuzz import FuzzParams, run_corpus
from .instfile import InstanceBlock, InstanceDoc, ParseError, load, parse, print_doc
from .rng import SplitMix64

__version__ = "0.1.0"
