"""Principal boundary of strata of abelian and quadratic differentials.

Enumerates configurations of homologous saddle connections, builds and
checks the twisted differentials they degenerate to, realises the flat
half-plane pictures, and tracks spin parity and hyperelliptic structure.
"""
from ._kernels import BACKEND
from .configs import (TypeIConfig, TypeIIConfig, count_Z, enumerate_type1, enumerate_type2,
                      newborn_order)
from .errors import PrincipalBoundaryError
from .flatsurf import (DomainComplex, GeometryReport, analyze, build_type1_surface,
                       build_type2_surface, reconstruct_config)
from .parity import (Label, LabeledBoundary, ParityResult, admissible_labels, hyp_type1,
                     hyp_type2, parity_type1, parity_type2, partition_boundary)
from .residues import INF, RationalForm, parse_form, residue_at, residue_sum, solve_Z
from .stratum import ComponentLabel, Kind, Stratum, components, validate_stratum
from .svg import emit_svg
from .twisted import (BoundaryReport, TwistedDiff, build_q22_boundary, build_type1,
                      build_type2, check_genus13, validate)

__version__ = "0.1.0"
