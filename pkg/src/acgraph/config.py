"""Run configuration documents (YAML).

Example::

    n: 1000
    delta: 0.5001
    seed: 7
    erase: true
    retry: 200            # optional: max sampling attempts before falling back
    P:
      J: 4
      K: 4
      matrix:             # (J + 1) rows of (K + 1) entries, p[j][k]
        - [0, 0, 0, 0, 0]
        - [0, 0, 0, 0, 0]
        - [0, 0, 0.5, 0, 0]
        - [0, 0, 0, 0, 0]
        - [0, 0, 0, 0, 0.5]
    Q:                    # exactly one of: matrix | copula (+ lambda) | rho
      rho: 0.8
    outputs:
      edges: edges.csv
      nodes: nodes.csv
      stats: stats.json

An out-out variant run replaces ``Q`` with ``Qv: {matrix: ...}`` holding
``K`` rows of ``K + 1`` entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .copula import CopulaSpec, calibrate_lambda, q_from_copula
from .distributions import (
    CONSISTENCY_TOL,
    EdgeTypeDistribution,
    NodeTypeDistribution,
    validate_consistency,
)
from .errors import AcgraphError, ParseError, ValidationError
from .generator import DEFAULT_DELTA
from .variant import OutOutEdgeDistribution, validate_variant_consistency

_TOP_KEYS = {"n", "delta", "seed", "erase", "retry", "P", "Q", "Qv", "outputs"}
_COPULA_NAMES = {"w": "W", "m": "M", "pi": "Pi", "independence": "Pi", "mixture": "mixture"}


@dataclass
class RunConfig:
    n: int | None
    delta: float
    seed: int
    P: NodeTypeDistribution
    Q: EdgeTypeDistribution | None = None
    Qv: OutOutEdgeDistribution | None = None
    q_source: str | None = None  # "matrix", "copula" or "rho"
    lam: float | None = None
    erase: bool = False
    max_attempts: int = 1
    outputs: dict[str, str] = field(default_factory=dict)


def _require(mapping: dict, key: str, where: str):
    if key not in mapping:
        raise ValidationError(f"{where}: missing field '{key}'")
    return mapping[key]


def _int_field(value, where: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{where}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ValidationError(f"{where}: must be >= {minimum}, got {value}")
    return value


def _float_field(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _matrix(value, rows: int, cols: int, where: str):
    if not isinstance(value, list) or len(value) != rows:
        raise ValidationError(f"{where}: expected {rows} rows")
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            raise ValidationError(f"{where}[{i}]: expected {cols} entries")
        for x in row:
            _float_field(x, f"{where}[{i}]")
    return value


def _wrap(where: str, fn, *args):
    try:
        return fn(*args)
    except AcgraphError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def parse_node_distribution(section) -> NodeTypeDistribution:
    if not isinstance(section, dict):
        raise ValidationError("P: expected a mapping with J, K and matrix")
    J = _int_field(_require(section, "J", "P"), "P.J", 1)
    K = _int_field(_require(section, "K", "P"), "P.K", 1)
    rows = _matrix(_require(section, "matrix", "P"), J + 1, K + 1, "P.matrix")
    return _wrap("P", NodeTypeDistribution, rows)


def _resolve_edges(section, P: NodeTypeDistribution):
    if not isinstance(section, dict):
        raise ValidationError("Q: expected a mapping")
    sources = [key for key in ("matrix", "copula", "rho") if key in section]
    if len(sources) != 1:
        raise ValidationError(
            f"Q: exactly one of matrix, copula, rho must be given, found {sources or 'none'}"
        )
    kind = sources[0]
    lam = None
    if kind == "matrix":
        Q = _wrap("Q", EdgeTypeDistribution, _matrix(section["matrix"], P.K, P.J, "Q.matrix"))
        check = validate_consistency(P, Q, CONSISTENCY_TOL)
        if not check.ok:
            raise ValidationError(f"Q: inconsistent with P: {check.describe()}")
    elif kind == "copula":
        name = _COPULA_NAMES.get(str(section["copula"]).lower())
        if name is None:
            raise ValidationError(f"Q.copula: unknown copula {section['copula']!r}")
        if name == "mixture":
            lam = _float_field(_require(section, "lambda", "Q"), "Q.lambda")
            if not 0 <= lam <= 1:
                raise ValidationError(f"Q.lambda: must lie in [0, 1], got {lam}")
            spec = CopulaSpec.mixture(lam)
        else:
            if "lambda" in section:
                raise ValidationError("Q.lambda: only valid with copula: mixture")
            spec = CopulaSpec(name)
        Q = _wrap("Q", q_from_copula, P, spec)
    else:
        rho = _float_field(section["rho"], "Q.rho")
        lam, Q = _wrap("Q.rho", calibrate_lambda, P, rho)
    return Q, kind, lam


def config_from_mapping(doc, require_edges: bool = True) -> RunConfig:
    """Validate a parsed document and resolve its edge-type source."""
    if not isinstance(doc, dict):
        raise ValidationError("config: top level must be a mapping")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ValidationError(f"config: unknown fields {sorted(unknown)}")
    n = _int_field(doc["n"], "n", 2) if "n" in doc else None
    delta = _float_field(doc.get("delta", DEFAULT_DELTA), "delta")
    if not 0.5 < delta < 1.0:
        raise ValidationError(f"delta: must lie in the open interval (0.5, 1), got {delta}")
    seed = _int_field(doc.get("seed", 0), "seed", 0)
    if seed >= 2**64:
        raise ValidationError("seed: must fit in 64 unsigned bits")
    erase = doc.get("erase", False)
    if not isinstance(erase, bool):
        raise ValidationError(f"erase: expected true/false, got {erase!r}")
    max_attempts = _int_field(doc.get("retry", 1), "retry", 1)
    outputs = doc.get("outputs") or {}
    if not isinstance(outputs, dict):
        raise ValidationError("outputs: expected a mapping")

    P = parse_node_distribution(_require(doc, "P", "config"))
    cfg = RunConfig(
        n=n,
        delta=delta,
        seed=seed,
        P=P,
        erase=erase,
        max_attempts=max_attempts,
        outputs={str(k): str(v) for k, v in outputs.items()},
    )
    if "Q" in doc and "Qv" in doc:
        raise ValidationError("config: give either Q or Qv, not both")
    if "Q" in doc:
        cfg.Q, cfg.q_source, cfg.lam = _resolve_edges(doc["Q"], P)
    elif "Qv" in doc:
        section = doc["Qv"]
        if not isinstance(section, dict):
            raise ValidationError("Qv: expected a mapping with matrix")
        rows = _matrix(_require(section, "matrix", "Qv"), P.K, P.K + 1, "Qv.matrix")
        cfg.Qv = _wrap("Qv", OutOutEdgeDistribution, rows)
        check = _wrap("Qv", validate_variant_consistency, P, cfg.Qv)
        if not check.ok:
            raise ValidationError(f"Qv: inconsistent with P: {check.describe()}")
        cfg.q_source = "matrix"
    elif require_edges:
        raise ValidationError("config: an edge-type source (Q or Qv) is required")
    return cfg


def load_config(path, require_edges: bool = True) -> RunConfig:
    """Read and validate a YAML run configuration.

    Raises:
        ParseError: the document is not valid YAML (message carries the line).
        ValidationError: a field is missing, malformed or inconsistent.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise ParseError(f"{path}: {where}: {getattr(exc, 'problem', exc)}") from exc
    return config_from_mapping(doc, require_edges=require_edges)
