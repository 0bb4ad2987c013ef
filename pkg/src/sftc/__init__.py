"""Exact computations with correspondences between shifts of finite type."""

from .correspondences import (
    Correspondence,
    compose_correspondences,
    correspondence_new,
    h_equivalent,
    identity_correspondence,
    induced_maps,
    lind_marcus_correspondence,
    rationally_h_equivalent,
)
from .coverings import cyclic_cover, full_shift, lind_marcus_build
from .dimgroups import DimElement, DimGroupPres, LaggedHom, lagged_hom_equal, lagged_hom_new
from .equivalences import (
    ShiftEquivalenceWitness,
    h_inverse_pair_from_se,
    shift_equivalence_search,
    shift_equivalence_verify,
)
from .errors import SFTError
from .graphs import Edge, Graph, GraphHom, period
from .invariants import invariant_report, kunneth_check, zeta
from .linalg import Matrix, RatPoly, perron_equal

__version__ = "0.1.0"
