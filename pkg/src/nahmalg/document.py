"""JSON algebra documents: ``{"name", "dim", "brackets": [{"i", "j", "coeffs": [{"k", "num", "den"}]}]}``.

Indices are 1-based with i < j; the antisymmetric completion is implied.
Rationals travel as integer ``num``/``den`` pairs, never as decimals.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InvalidAlgebra
from .liealg import LieAlgebra


class DocumentError(InvalidAlgebra):
    pass


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{what} must be an integer, got {value!r}")
    return value


def from_dict(doc: dict, check: bool = True) -> LieAlgebra:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    try:
        name, dim, entries = doc["name"], doc["dim"], doc.get("brackets", [])
    except KeyError as e:
        raise DocumentError(f"missing field {e.args[0]!r}") from None
    if not isinstance(name, str):
        raise DocumentError("name must be a string")
    dim = _int(dim, "dim")
    if dim < 0:
        raise DocumentError("dim must be nonnegative")
    brackets: dict[tuple[int, int], list[Fraction]] = {}
    for e in entries:
        i, j = _int(e.get("i"), "i"), _int(e.get("j"), "j")
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise DocumentError(f"bracket index ({i}, {j}) out of range 1..{dim}")
        if i >= j:
            raise DocumentError(f"bracket entries need i < j, got ({i}, {j})")
        if (i - 1, j - 1) in brackets:
            raise DocumentError(f"duplicate bracket entry ({i}, {j})")
        v = [Fraction(0)] * dim
        for c in e.get("coeffs", []):
            k = _int(c.get("k"), "k")
            if not 1 <= k <= dim:
                raise DocumentError(f"coefficient index {k} out of range 1..{dim}")
            num, den = _int(c.get("num"), "num"), _int(c.get("den", 1), "den")
            if den <= 0:
                raise DocumentError("den must be positive")
            v[k - 1] += Fraction(num, den)
        brackets[(i - 1, j - 1)] = v
    return LieAlgebra.from_brackets(name, dim, brackets, check=check)


def parse(text: str, check: bool = True) -> LieAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"malformed JSON: {e}") from None
    return from_dict(doc, check)


def to_dict(g: LieAlgebra) -> dict:
    entries = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            coeffs = [
                {"k": k + 1, "num": c.numerator, "den": c.denominator}
                for k, c in enumerate(g.c[i][j]) if c
            ]
            if coeffs:
                entries.append({"i": i + 1, "j": j + 1, "coeffs": coeffs})
    return {"name": g.name, "dim": g.dim, "brackets": entries}


def emit(g: LieAlgebra) -> str:
    return json.dumps(to_dict(g), indent=2, sort_keys=True)


def load(path, check: bool = True) -> LieAlgebra:
    with open(path) as f:
        return parse(f.read(), check)
