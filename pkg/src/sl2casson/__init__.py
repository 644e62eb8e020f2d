"""Exact SL(2,C) Casson invariants of Seifert fibered homology spheres and twist-knot surgeries."""
from .seifert import DomainError, SeifertTuple, SumPiece, lambda_connected_sum, lambda_seifert
from .twist import Slope, TorusKnot, TwistKnot, cs_norm, lambda_prime, lambda_torus_surgery, lambda_twist_surgery

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "SeifertTuple",
    "SumPiece",
    "Slope",
    "TorusKnot",
    "TwistKnot",
    "cs_norm",
    "lambda_connected_sum",
    "lambda_prime",
    "lambda_seifert",
    "lambda_torus_surgery",
    "lambda_twist_surgery",
]
