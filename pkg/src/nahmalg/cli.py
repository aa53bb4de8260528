"""Command-line front end: ``nahmalg <command> <algebra> [options]``.

An algebra is either a path to a JSON document or ``catalog:NAME``.
Exit codes: 0 all checks pass, 1 a check failed, 2 bad input or unmet
precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

import numpy as np

from . import derivations as der
from .checks import run_checks
from .document import DocumentError, emit, load
from .errors import ConvergenceError, NahmError, PreconditionError, StepUnderflow
from .flow import MONITORS, FlowOptions, integrate
from .liealg import (
    CATALOG_EXAMPLES,
    LieAlgebra,
    catalog,
    is_semisimple,
    is_simple,
    is_solvable,
    killing,
    radical,
    validate,
)
from .linalg import Matrix
from .nahm import NahmAlgebra, NahmElement, grading_check, is_compact, product, standard_form
from .special import find_idempotent, is_idempotent, power_assoc_witness


class InputError(Exception):
    pass


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.results: dict[str, Any] = {}
        self.checks: list[dict] = []

    def add(self, key: str, value) -> None:
        self.results[key] = value

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "pass": bool(passed), "detail": detail})

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def render(self, as_json: bool) -> str:
        if as_json:
            env = {"command": self.command, "inputs": self.inputs,
                   "results": _jsonable(self.results), "checks": self.checks}
            return json.dumps(env, indent=2)
        lines = [f"{k}: {_text(v)}" for k, v in self.results.items()]
        for c in self.checks:
            lines.append(f"{'PASS' if c['pass'] else 'FAIL':4}  {c['name']}  {c['detail']}".rstrip())
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, NahmElement):
        return [_jsonable(list(s)) for s in v.components]
    if isinstance(v, Matrix):
        return [_jsonable(list(r)) for r in v.tolist()]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.floating):
        return float(v)
    return v


def _text(v) -> str:
    if isinstance(v, Matrix):
        return "[" + "; ".join(" ".join(str(x) for x in r) for r in v.tolist()) + "]"
    if isinstance(v, (list, tuple)) and v and isinstance(v[0], Matrix):
        return "\n  " + "\n  ".join(_text(m) for m in v)
    if isinstance(v, (list, tuple)) and v and isinstance(v[0], dict):
        return "\n  " + "\n  ".join(
            "  ".join(f"{k}={_text(x)}" for k, x in row.items()) for row in v
        )
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_text(x) for x in v) + ")"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return repr(v)
    return str(v)


# --- input parsing -----------------------------------------------------------------

def load_algebra(source: str, check: bool = True) -> LieAlgebra:
    if source.startswith("catalog:"):
        try:
            return catalog(source[len("catalog:"):])
        except (KeyError, ValueError) as e:
            raise InputError(e.args[0]) from None
    try:
        return load(source, check)
    except OSError as e:
        raise InputError(f"cannot read {source}: {e.strerror}") from None
    except NahmError as e:
        raise InputError(str(e)) from None


def parse_element(text: str, n: int) -> NahmElement:
    """``"a,b,c;d,e,f;g,h,i"`` with entries ``num`` or ``num/den``."""
    slots = text.split(";")
    if len(slots) != 3:
        raise InputError(f"expected three ';'-separated slots, got {len(slots)}")
    comps = []
    for s in slots:
        parts = [p.strip() for p in s.split(",")] if s.strip() else []
        if len(parts) != n:
            raise InputError(f"each slot needs {n} entries, got {len(parts)}")
        try:
            comps.append(tuple(Fraction(p) for p in parts))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad rational in {s!r}") from None
    return NahmElement(*comps)


def _standard_idempotent(A: NahmAlgebra) -> NahmElement | None:
    if A.n < 3:
        return None
    n = A.n
    E = A.element([1 if k in (0, n + 1, 2 * n + 2) else 0 for k in range(3 * n)])
    return E if is_idempotent(A, E) else None


# --- commands ----------------------------------------------------------------------

def cmd_validate(args, rep: Report):
    g = load_algebra(args.algebra, check=False)
    r = validate(g)
    rep.add("name", g.name)
    rep.add("dim", g.dim)
    rep.check("antisymmetry", r.antisymmetry_ok, "" if r.antisymmetry_ok else r.describe())
    rep.check("jacobi", r.jacobi_ok, "" if r.jacobi_ok else r.describe())


def cmd_info(args, rep: Report):
    g = load_algebra(args.algebra)
    rep.add("name", g.name)
    rep.add("dim", g.dim)
    rep.add("solvable", is_solvable(g))
    rep.add("semisimple", is_semisimple(g))
    rep.add("simple", is_simple(g))
    rep.add("radical_dim", radical(g).dim)
    rep.add("killing_signature", list(killing(g).signature()))


def cmd_nahm_info(args, rep: Report):
    g = load_algebra(args.algebra)
    A = NahmAlgebra(g)
    rep.add("name", g.name)
    rep.add("dim", A.dim)
    rep.add("standard_form_signature", list(standard_form(A).signature()))
    rep.add("compact", is_compact(A) if is_semisimple(g) else "n/a (not semisimple)")
    rep.add("derivation_dim", len(der.derivation_basis(A)))
    gc = grading_check(A)
    rep.check("grading", gc.passed, "; ".join(gc.failures))
    w = power_assoc_witness(A)
    if w is None:
        rep.add("power_assoc_witness", "none")
    else:
        rep.add("power_assoc_witness", w.element)
        rep.add("fourth_power_left", w.left)
        rep.add("fourth_power_right", w.right)


def cmd_product(args, rep: Report):
    g = load_algebra(args.algebra)
    A = NahmAlgebra(g)
    X, Y = parse_element(args.x, g.dim), parse_element(args.y, g.dim)
    rep.add("x", X)
    rep.add("y", Y)
    rep.add("product", product(A, X, Y))


def cmd_derivations(args, rep: Report):
    g = load_algebra(args.algebra)
    A = NahmAlgebra(g)
    basis = der.derivation_basis(A)
    rep.add("dim", len(basis))
    rep.add("basis", basis)
    if args.check_decomposition:
        if not is_simple(g):
            raise PreconditionError(f"{g.name} is not simple")
        d = der.decomposition_check(A)
        rep.check("dimension", d.der_dim == d.expected_dim, f"{d.der_dim} = {g.dim} + 3")
        rep.check("span", d.span_equal, "Der = diag(ad g) + so(3)")
        rep.check("commute", d.commute, "[diag(ad x), so3] = 0")


def cmd_idempotent(args, rep: Report):
    g = load_algebra(args.algebra)
    A = NahmAlgebra(g)
    if not args.newton:
        E = _standard_idempotent(A)
        rep.add("method", "exact")
        rep.add("idempotent", E if E is not None else "none")
        rep.check("found", E is not None, "E = (b1, b2, b3)" if E else "(b1, b2, b3) is not an so(3)-triple")
        return
    rng = np.random.default_rng(args.seed)
    x0 = rng.standard_normal(A.dim)
    rep.add("method", "newton")
    rep.add("seed", args.seed)
    try:
        r = find_idempotent(A, x0, tol=args.tol, max_iter=args.max_iter)
    except ConvergenceError as e:
        rep.check("converged", False, str(e))
        return
    rep.add("iterations", r.iterations)
    rep.add("residual", r.residual)
    rep.add("numeric", [float(v) for v in r.x])
    rep.add("exact", r.exact if r.exact is not None else "approximate only")
    rep.check("converged", True, f"residual {r.residual:.3e}")


def cmd_integrate(args, rep: Report):
    g = load_algebra(args.algebra)
    A = NahmAlgebra(g)
    if args.p == "idempotent":
        P = _standard_idempotent(A)
        if P is None:
            raise PreconditionError("no standard idempotent (b1, b2, b3) in this algebra")
    else:
        P = parse_element(args.p, g.dim)
    mons = [m for m in args.monitors.split(",") if m] if args.monitors else []
    try:
        opts = FlowOptions(t_end=args.t_end, rel_tol=args.rel_tol, abs_tol=args.abs_tol,
                           monitors=frozenset(mons))
    except ValueError as e:
        raise InputError(str(e)) from None
    try:
        tr = integrate(A, P, opts)
    except StepUnderflow as e:
        rep.check("integration", False, f"step underflow at t={e.t}")
        return
    rep.add("p", P)
    rep.add("status", tr.status.value)
    rep.add("t_final", tr.t_final)
    rep.add("samples", len(tr.times))
    if tr.t_est is not None:
        rep.add("t_est", tr.t_est)
    if args.out:
        tr.write_csv(args.out)
        rep.add("csv", args.out)


def cmd_check_theorems(args, rep: Report):
    g = load_algebra(args.algebra)
    rep.add("algebra", g.name)
    for c in run_checks(g):
        detail = f"[{c.ref}] {c.detail}" if c.status != "skip" else f"[{c.ref}] skipped: {c.detail}"
        rep.check(c.name, c.passed, detail)


def cmd_catalog(args, rep: Report):
    rows = []
    for name in CATALOG_EXAMPLES:
        g = catalog(name.replace("(n)", "(2)"))
        rows.append({
            "name": name,
            "dim": "n" if "(n)" in name else g.dim,
            "simple": is_simple(g),
            "semisimple": is_semisimple(g),
            "solvable": is_solvable(g),
        })
    rep.add("algebras", rows)


def cmd_emit(args, rep: Report):
    rep.add("document", json.loads(emit(load_algebra(args.algebra))))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON envelope")

    p = argparse.ArgumentParser(prog="nahmalg", description="Nahm algebras of Lie algebras")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, algebra=True):
        s = sub.add_parser(name, parents=[common], help=help_)
        if algebra:
            s.add_argument("algebra", help="JSON file or catalog:NAME")
        s.set_defaults(fn=fn)
        return s

    add("validate", cmd_validate, "antisymmetry and Jacobi check")
    add("info", cmd_info, "structure of the base Lie algebra")
    add("nahm-info", cmd_nahm_info, "invariants of A(g)")
    s = add("product", cmd_product, "exact Nahm product")
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s = add("derivations", cmd_derivations, "basis of Der(A(g))")
    s.add_argument("--check-decomposition", action="store_true")
    s = add("idempotent", cmd_idempotent, "exact or numeric idempotent")
    s.add_argument("--newton", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--max-iter", type=int, default=50)
    s = add("integrate", cmd_integrate, "integrate X' = X^2")
    s.add_argument("--p", required=True, help="initial vector or 'idempotent'")
    s.add_argument("--t-end", type=float, required=True)
    s.add_argument("--monitors", default="", help=f"comma list from {', '.join(MONITORS)}")
    s.add_argument("--rel-tol", type=float, default=1e-10)
    s.add_argument("--abs-tol", type=float, default=1e-12)
    s.add_argument("--out", help="CSV output path")
    add("check-theorems", cmd_check_theorems, "run the property suite")
    add("catalog", cmd_catalog, "list built-in algebras", algebra=False)
    add("emit", cmd_emit, "print the JSON document of an algebra")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in ("fn", "json", "command")}
    rep = Report(args.command, inputs)
    try:
        args.fn(args, rep)
    except (InputError, PreconditionError, DocumentError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(rep.render(args.json))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
