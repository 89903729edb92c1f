"""Exact Reidemeister torsion, Novikov Morse complexes and closed-orbit zeta functions."""

from ._kernels import BACKEND
from .complexes import (
    DOWN,
    UP,
    BasedComplex,
    TorsionCertificate,
    change_basis,
    direct_sum,
    greedy_subsets,
    is_acyclic,
    torsion,
)
from .cover import (
    CoverComplex,
    HomologySummary,
    PresentationMatrix,
    cover_torsion,
    fitting_order,
    homology_summary,
    lefschetz_series,
    lemma_torsion,
)
from .errors import (
    ComplexError,
    InconsistentSystemError,
    NotAcyclicError,
    ParseError,
    PrecisionError,
    TorsionLabError,
)
from .exactalg import (
    PM_TK,
    Q_TK,
    LaurentPoly,
    RationalFunction,
    TruncatedSeries,
    UnitClass,
    gcd_laurent,
    normalize_unit_class,
    series_exp,
    series_expand,
    series_log,
)
from .instance import InstanceBundle, load_instance, parse_instance
from .matrices import (
    RingMatrix,
    SmithForm,
    determinant,
    enumerate_minors,
    rank,
    rank_and_solve,
    smith_normal_form,
)
from .morse import (
    MorseComplex,
    MorseData,
    build_morse_complex,
    chain_homotopy_W,
    morse_torsion,
)
from .novikov import (
    GroupRingElement,
    NovikovBlock,
    NovikovElement,
    PathMatrix,
    i_eta,
    orbit_product,
    path_determinant,
    reconstruct_from_specialization,
    rho_specialize,
    specialize_alpha,
    sw_series,
    symmetrize,
)
from .orbits import (
    FixCounts,
    Orbit,
    OrbitSet,
    fix_counts,
    zeta_exp,
    zeta_product,
    zeta_rational,
)
from .verify import (
    CHECKS,
    VerificationReport,
    run_checks,
    run_suite,
    verify_leading_coefficient,
    verify_lemma_torsion,
    verify_main,
    verify_meng_taubes,
    verify_refinement,
    verify_w_identity,
    verify_zeta_forms,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BACKEND",
    "BasedComplex",
    "build_morse_complex",
    "chain_homotopy_W",
    "change_basis",
    "CHECKS",
    "ComplexError",
    "cover_torsion",
    "CoverComplex",
    "determinant",
    "direct_sum",
    "DOWN",
    "enumerate_minors",
    "fitting_order",
    "fix_counts",
    "FixCounts",
    "gcd_laurent",
    "greedy_subsets",
    "GroupRingElement",
    "homology_summary",
    "HomologySummary",
    "i_eta",
    "InconsistentSystemError",
    "InstanceBundle",
    "is_acyclic",
    "LaurentPoly",
    "lefschetz_series",
    "lemma_torsion",
    "load_instance",
    "morse_torsion",
    "MorseComplex",
    "MorseData",
    "normalize_unit_class",
    "NotAcyclicError",
    "NovikovBlock",
    "NovikovElement",
    "Orbit",
    "orbit_product",
    "OrbitSet",
    "parse_instance",
    "ParseError",
    "path_determinant",
    "PathMatrix",
    "PM_TK",
    "PrecisionError",
    "PresentationMatrix",
    "Q_TK",
    "rank",
    "rank_and_solve",
    "RationalFunction",
    "reconstruct_from_specialization",
    "rho_specialize",
    "RingMatrix",
    "run_checks",
    "run_suite",
    "series_exp",
    "series_expand",
    "series_log",
    "smith_normal_form",
    "SmithForm",
    "specialize_alpha",
    "sw_series",
    "symmetrize",
    "torsion",
    "TorsionCertificate",
    "TorsionLabError",
    "TruncatedSeries",
    "UnitClass",
    "UP",
    "VerificationReport",
    "verify_leading_coefficient",
    "verify_lemma_torsion",
    "verify_main",
    "verify_meng_taubes",
    "verify_refinement",
    "verify_w_identity",
    "verify_zeta_forms",
    "zeta_exp",
    "zeta_product",
    "zeta_rational",
]
