"""Exact engine for finite-set and linear canonical relations.

Two computable models of the category of relations — finite sets
(``finrel``) and symplectic vector spaces over Q with lagrangian graphs
(``symplin``) — under a shared path/collapse layer (``paths``) that
factors every composable word into one reduction followed by one
coreduction.
"""
from .errors import CanrelError
from .exact import Matrix, Rational, Subspace, rational
from .finrel import FinRelation, FinSet, RelationProfile
from .symplin import CanRel, PairAnalysis, SymplecticSpace
from .paths import FINREL, SYMPLIN, Factorization, Path, VerifyReport

__all__ = [
    "CanRel",
    "CanrelError",
    "Factorization",
    "FinRelation",
    "FinSet",
    "FINREL",
    "Matrix",
    "PairAnalysis",
    "Path",
    "Rational",
    "RelationProfile",
    "Subspace",
    "SYMPLIN",
    "SymplecticSpace",
    "VerifyReport",
    "rational",
]

__version__ = "0.1.0"
