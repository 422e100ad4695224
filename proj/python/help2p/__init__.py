"""HeLP constraints, mod-4 block constraints and prime graph verdicts for PSL(2,q) and PGL(2,q)."""

import json

from . import _core
from ._core import DataError, UnsupportedInput, lambda_membership, root_trace

__all__ = [
    "DataError",
    "UnsupportedInput",
    "conditions",
    "lambda_membership",
    "oracle",
    "order2p",
    "pgq",
    "root_trace",
    "solve",
    "table",
    "validate_table",
]


def table(family: str, q: int) -> dict:
    return json.loads(_core.table_json(family, q))


def validate_table(document: dict | str) -> str:
    """Ingest a table document; returns its descriptor or raises DataError."""
    if not isinstance(document, str):
        document = json.dumps(document)
    return _core.validate_table_json(document)


def solve(family: str, q: int, order: int, *, mod4: bool = True, table: dict | None = None, jobs: int = 1) -> dict:
    doc = None if table is None else json.dumps(table)
    return json.loads(_core.solve_json(family, q, order, mod4, doc, jobs))


def order2p(q: int, family: str = "PSL", *, mod4: bool = True, jobs: int = 1) -> dict:
    return json.loads(_core.order2p_json(q, family, mod4, jobs))


def pgq(q: int, family: str = "PSL", *, disabled: list[str] | None = None, mod4: bool = True) -> dict:
    return json.loads(_core.pgq_json(q, family, disabled or [], mod4))


def conditions(q: int) -> dict:
    return json.loads(_core.conditions_json(q))


def oracle(experiment: str, a: int = 1, c: int = 1, *, precision: int = 16, samples: int = 1000, seed: int = 1,
           jobs: int = 1) -> dict:
    return json.loads(_core.oracle_json(experiment, a, c, precision, samples, seed, jobs))
