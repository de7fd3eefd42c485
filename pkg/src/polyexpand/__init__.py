"""Exact structure of bivariate polynomial pairs over the rationals.

Decides whether ``(P, Q)`` is an additive pair, a multiplicative pair or an
expanding candidate, with certificates that are recomposed and checked
before they are returned, and measures the consequences experimentally:
curve-family overlap counts and image-size growth on explicit sets.
"""

__version__ = "0.1.0"

from .bipoly import (
    BiPoly,
    compose,
    eval_bi,
    exact_div,
    gcd_bi,
    partials,
    reduce_in_powers,
    section,
    separate_product,
)
from .classify import (
    AdditiveCertificate,
    MultiplicativeCertificate,
    PairClassification,
    SymmetricClassification,
    Verdict,
    classify_pair,
    classify_single,
    classify_symmetric,
    verify_certificate,
)
from .decompose import (
    AdditiveForm,
    MultiplicativeForm,
    additive_decompose,
    multiplicative_decompose,
    primitive_base,
)
from .errors import (
    CertificateError,
    DegenerateParameters,
    PolyExpandError,
    PrecisionExhausted,
    TrivialDependence,
    UnreachableCardinality,
)
from .exact_arith import (
    BigRational,
    RootInterval,
    UniPoly,
    derivative,
    gcd_uni,
    isolate_real_roots,
    nth_root,
    poly_divmod,
    refine_root,
    squarefree_part,
)
from .geometry import CurveParams, Intersection, IntersectionDim, ScatterReport, intersection_dim, scatter_probe
from .harness import (
    AlgebraicReal,
    Certified,
    ExpansionSeries,
    Mode,
    SetFamily,
    WitnessSets,
    build_witness_sets,
    image_size,
    run_series,
)
from .parser import ParseError, parse_bipoly, parse_poly, lower

__all__ = [name for name in dir() if not name.startswith("_")]
