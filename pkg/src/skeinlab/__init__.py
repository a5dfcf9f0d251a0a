"""skeinlab: exact quantum link invariants and fusion-ring analytics."""

from .poly import LaurentPoly, RationalFn, TwoVarLaurentPoly

__version__ = "0.1.0"

__all__ = ["LaurentPoly", "RationalFn", "TwoVarLaurentPoly", "__version__"]
