"""GF(q)-chordal matroids over small finite fields.

Matroids are simple and GF(q)-represented: a list of distinct projective
points with string labels.  The package builds them, glues them by
generalized parallel connection, decides chordality with checkable
certificates and verifies the surrounding theory on enumerated corpora.
"""

from .chordal import (
    ConstructionCertificate,
    ForbiddenWitness,
    cfk_chordal,
    find_forbidden_induced_minor,
    induced_minors,
    is_gfq_chordal,
    is_nq,
    normal_form_minors,
    rq_decompose,
)
from .enumeration import OrbitCatalog, corpus, enumerate_matroids, group_elements
from .field import FieldSpec, make_field
from .geometry import (
    construct_hyperoval,
    construct_mk4,
    construct_pg_minus_flat,
    construct_uniform_line,
    pg_points,
    projective_geometry,
)
from .gpc import GpcSpec, gpc, is_modular_flat
from .iso import CanonicalForm, canonical_form, detect_forbidden, is_isomorphic, is_projective_geometry
from .matroid import (
    Matroid,
    circuits,
    closure,
    cocircuits,
    contract_simplify,
    delete,
    direct_sum,
    flats,
    rank,
    restrict_to_flat,
)
from .structure import SeparationReport, dividers, is_round, local_connectivity, minimal_dividers

__version__ = "0.1.0"
