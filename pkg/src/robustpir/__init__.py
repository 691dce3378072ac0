"""Robust private information retrieval from GRS-coded storage.

Servers store a database encoded with a generalized Reed-Solomon code; the
user sends star-product queries that hide the requested file from any t
colluding servers and decodes the answers so that up to b wrong and r
missing responses are tolerated.
"""

from .adversary import AdversaryConfig, Strategy, privacy_audit, run_session, sweep_adversary_placements
from .decoder import ERASED, DecodingFailure, brute_force_decode, decode_errors_erasures
from .field import PrimeField, ff_inv, lagrange_interpolate, poly_eval
from .grs import GrsCode, generator_matrix, grs_encode, make_grs, star_product_generic, star_product_grs
from .pir import PirScheme, SchemeParams, compute_params, recover, setup_scheme
from .storage import Database, distribute, layout_database

__all__ = [
    "AdversaryConfig",
    "Database",
    "DecodingFailure",
    "ERASED",
    "GrsCode",
    "PirScheme",
    "PrimeField",
    "SchemeParams",
    "Strategy",
    "brute_force_decode",
    "compute_params",
    "decode_errors_erasures",
    "distribute",
    "ff_inv",
    "generator_matrix",
    "grs_encode",
    "lagrange_interpolate",
    "layout_database",
    "make_grs",
    "poly_eval",
    "privacy_audit",
    "recover",
    "run_session",
    "setup_scheme",
    "star_product_generic",
    "star_product_grs",
    "sweep_adversary_placements",
]
