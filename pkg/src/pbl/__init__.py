"""Exact computations for projective bundles over projective space and the drums built from them."""

from .algebra import MultiPoly, RatMatrix, as_rational, det, kernel_basis, mat_rank, rational_str
from .bundles import (
    DEFAULT_SEED,
    BundlePresentation,
    FiberClass,
    catalog_bundle,
    custom_split,
    fiber_over,
    image_equations,
    image_membership,
    nowhere_vanishing_section,
    standard_instances,
)
from .cones import ConeReport, cone_report, contraction_verdict, fano_check, table_c
from .drums import DrumDatum, check_degree_identity, drum_by_id, drum_catalog, flip_classify
from .errors import PblError
from .geometry import ProjPoint, determinantal_locus, smooth_at, vnd_hypersurface
from .pencils import PencilPair, canonical_pencil, pencil_is_regular, pencil_normal_form
from .report import Check, VerificationReport, emit_report
from .sections import SectionSpace, cone_slope, section_space
from .verify import RunConfig, verify_all

__version__ = "0.1.0"
