"""Exact algebra toolkit and certificate pipeline for pencils on the symmetric cube of an elliptic curve."""

__version__ = "0.1.0"

from .arith import GF, QQ, ExactMatrix, FpElem, exact_nullspace, rref
from .ellcurve import CoverDatum, WeierstrassCurve, point
from .groebner import Ideal, buchberger
from .multipoly import MultiPoly, Ring
from .unipoly import UniPoly

__all__ = [
    "__version__", "GF", "QQ", "ExactMatrix", "FpElem", "exact_nullspace", "rref",
    "CoverDatum", "WeierstrassCurve", "point", "Ideal", "buchberger", "MultiPoly", "Ring", "UniPoly",
]
