"""Knot invariants from skein recursion, helicity phases and Gauss integrals."""
from importlib.resources import files

from .diagram import (
    Crossing,
    CrossingSite,
    LinkDiagram,
    blackboard_framing,
    braid_closure,
    canonical_key,
    helicity_diagram,
    linking_matrix,
    linking_number,
    parse_diagram,
    unlink,
    writhe,
)
from .errors import (
    BadIndex,
    BadSite,
    CurvesTooClose,
    DegenerateSegments,
    EpsilonTooLarge,
    InconsistentDiagram,
    KnotError,
    MalformedInput,
    PointOnCurve,
    PoleAtZero,
    RecursionBudgetExceeded,
)
from .laurent import LaurentPoly1H, LaurentPoly2
from .moves import add_eight, mirror, reidemeister, reverse, smooth_crossing, switch_crossing
from .phase import Phase, PhaseParam, alpha_of, psi_diagram, psi_geometric, surgery_ratio, verify_curl_balance
from .skein import (
    SkeinConfig,
    SkeinEngine,
    homflypt,
    specialize_jones,
    specialize_trivial,
    unlink_value,
    verify_skein,
)

__version__ = "0.1.0"


def corpus_dir():
    """Directory of the shipped diagram and geometric fixtures."""
    return files(__name__) / "corpus"
