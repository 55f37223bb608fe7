"""Python interface to the sahlkracht correspondence engine."""

import json as _json

from ._core import (  # noqa: F401
    Expr,
    FormulaSyntaxError,
    Fo,
    Modal,
    NotKracht,
    NotSahlqvist,
    SahlkrachtError,
    VerificationFailed,
    check_kracht,
    correspond,
    normalize_kracht,
    parse_expr,
    parse_fo,
    parse_modal,
    quantifier_eliminate,
    safety_status,
    synthesize,
)
from . import _core


def _coerce(x, parser):
    return parser(x) if isinstance(x, str) else x


def analyze_safety(e):
    return _json.loads(_core.analyze_safety(_coerce(e, parse_expr)))


def classify_sahlqvist(f):
    return _json.loads(_core.classify_sahlqvist(_coerce(f, parse_modal)))


def check_correspondence(phi, alpha, max_worlds=None, samples=None, seed=None):
    return _json.loads(
        _core.check_correspondence(
            _coerce(phi, parse_modal), _coerce(alpha, parse_fo), max_worlds, samples, seed
        )
    )


def tree_json(t):
    return _json.loads(t.to_json())
