"""Elliptic curves with large Tamagawa products from good abc-triples."""
from .abctriple import AbcTriple, classify, derive_triples, make_triple, merit, quality
from .arith import Factorization, StepBudget, factor, is_prime, radical
from .curve import WeierstrassCurve, frey_curve, frey_model, minimal_model, parse_curve, quadratic_twist
from .isogeny import enumerate_isogenous, isogeny_tree, torsion_points, velu
from .localdata import global_data, tamagawa_quality, tate

__version__ = "0.1.0"

__all__ = [
    "AbcTriple", "classify", "derive_triples", "make_triple", "merit", "quality", "Factorization", "StepBudget",
    "factor", "is_prime", "radical", "WeierstrassCurve", "frey_curve", "frey_model", "minimal_model",
    "parse_curve", "quadratic_twist", "enumerate_isogenous", "isogeny_tree", "torsion_points", "velu",
    "global_data", "tamagawa_quality", "tate",
]
