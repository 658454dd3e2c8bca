"""Chermak-Delgado lattices and groups with dense CD-subgroups.

Typical use::

    from cdlattice import build, enumerate_subgroups, cd_lattice, is_dense_cd

    G = build("D(8)")
    L = enumerate_subgroups(G)
    cd = cd_lattice(G, L)
    is_dense_cd(G, L, cd).dense   # True
"""

from .catalog import build, load_generator_file, parse_spec, survey_corpus
from .chermak_delgado import CDResult, cd_lattice, cd_measure, measure_image, verify_cd_properties
from .density import (
    DensityVerdict,
    check_dense_p_group,
    check_pq_classification,
    classify_density,
    is_dense_cd,
    verify_zm_chain,
)
from .errors import (
    CDLatticeError,
    ClosureExceedsCap,
    InvalidPermutation,
    InvalidSpec,
    LatticeExceedsCap,
    NotAGroup,
    NotComparable,
    NotNormal,
    PreconditionUnmet,
    SpecSyntaxError,
)
from .group import (
    ElementSet,
    GroupTable,
    center,
    centralizer,
    conjugate_subgroup,
    direct_product,
    from_cayley_table,
    from_generators,
    generated_subgroup,
    quotient,
    structure_flags,
)
from .lattice import Lattice, enumerate_subgroups, is_maximal_in, join, meet, normal_subgroups, open_interval

__version__ = "0.1.0"

__all__ = [
    "build",
    "load_generator_file",
    "parse_spec",
    "survey_corpus",
    "CDResult",
    "cd_lattice",
    "cd_measure",
    "measure_image",
    "verify_cd_properties",
    "DensityVerdict",
    "check_dense_p_group",
    "check_pq_classification",
    "classify_density",
    "is_dense_cd",
    "verify_zm_chain",
    "CDLatticeError",
    "ClosureExceedsCap",
    "InvalidPermutation",
    "InvalidSpec",
    "LatticeExceedsCap",
    "NotAGroup",
    "NotComparable",
    "NotNormal",
    "PreconditionUnmet",
    "SpecSyntaxError",
    "ElementSet",
    "GroupTable",
    "center",
    "centralizer",
    "conjugate_subgroup",
    "direct_product",
    "from_cayley_table",
    "from_generators",
    "generated_subgroup",
    "quotient",
    "structure_flags",
    "Lattice",
    "enumerate_subgroups",
    "is_maximal_in",
    "join",
    "meet",
    "normal_subgroups",
    "open_interval",
    "__version__",
]
