"""Built-in worked operator matrices, embedded as inspectable JSON data.

Three invariant submodules of the inertia endomorphism ship with the
library:

* ``bgl2``  4x4 around the class of BGL2, spectrum
            {q-1, q(q-1), q^2-1, (q-1)^2};
* ``bn``    4x4 around BN for the rank-2 torus extended by the swap,
            featuring the non-monic eigenvalue 2(q-1);
* ``bgl3``  12 pivot classes around BGL3 with 9 distinct eigenvalues;
            the Y column is diagonal-only (partial), so only eigenvalue
            extraction is available.
"""

from __future__ import annotations

import json
from importlib import resources

from .linalg import OperatorMatrix, matrix_from_json

FIXTURE_NAMES = ("bgl2", "bn", "bgl3")

_cache: dict[str, dict] = {}


def fixture_json(name: str) -> dict:
    """The raw JSON document of a fixture (with any notes)."""
    if name not in FIXTURE_NAMES:
        raise ValueError(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")
    if name not in _cache:
        path = resources.files("inertia").joinpath("data", f"{name}.json")
        _cache[name] = json.loads(path.read_text(encoding="utf-8"))
    return _cache[name]


def fixture(name: str) -> OperatorMatrix:
    """Load a built-in operator matrix by name."""
    return matrix_from_json(fixture_json(name))


def fixture_notes(name: str) -> list[str]:
    return list(fixture_json(name).get("notes", []))
