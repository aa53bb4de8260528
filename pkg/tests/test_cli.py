import json
from fractions import Fraction

import pytest

from nahmalg.cli import main, parse_element, InputError
from nahmalg.document import emit
from nahmalg.liealg import catalog


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info_heisenberg(capsys):
    code, out, _ = run(capsys, "info", "catalog:heisenberg")
    assert code == 0
    assert "solvable: yes" in out and "semisimple: no" in out and "radical_dim: 3" in out


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog", "--json")
    rows = {r["name"]: r for r in json.loads(out)["results"]["algebras"]}
    assert rows["so3"]["dim"] == 3 and rows["so3"]["simple"]
    assert rows["sl2+aff1"]["dim"] == 5
    assert "abelian(n)" in rows


def test_validate_file(tmp_path, capsys):
    good = tmp_path / "so3.json"
    good.write_text(emit(catalog("so3")))
    assert run(capsys, "validate", str(good))[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "bad", "dim": 3, "brackets": [
        {"i": 1, "j": 2, "coeffs": [{"k": 1, "num": 1, "den": 1}]},
        {"i": 1, "j": 3, "coeffs": [{"k": 3, "num": 1, "den": 1}]}]}))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1 and "(1, 2, 3, 3)" in out
    assert run(capsys, "info", str(bad))[0] == 2
    assert run(capsys, "info", str(tmp_path / "missing.json"))[0] == 2


def test_product(capsys):
    code, out, _ = run(capsys, "product", "catalog:so3", "--x", "1,0,0;0,1,0;0,0,0",
                       "--y", "1,0,0;0,1,0;0,0,0")
    assert code == 0 and "product: [(0, 0, 0); (0, 0, 0); (0, 0, 1)]" in out
    assert run(capsys, "product", "catalog:so3", "--x", "1,0;0;0", "--y", "0,0,0;0,0,0;0,0,0")[0] == 2


def test_parse_element():
    X = parse_element("1/2,0,-3;0,0,0;1,1,1", 3)
    assert X.x1 == (Fraction(1, 2), 0, -3)
    with pytest.raises(InputError):
        parse_element("1,2,3;4,5,6", 3)
    with pytest.raises(InputError):
        parse_element("a,2,3;4,5,6;7,8,9", 3)


def test_derivations(capsys):
    code, out, _ = run(capsys, "derivations", "catalog:so3", "--check-decomposition", "--json")
    env = json.loads(out)
    assert code == 0 and env["results"]["dim"] == 6 and all(c["pass"] for c in env["checks"])
    assert run(capsys, "derivations", "catalog:heisenberg", "--check-decomposition")[0] == 2


def test_nahm_info(capsys):
    code, out, _ = run(capsys, "nahm-info", "catalog:so3")
    assert code == 0
    assert "standard_form_signature: (9, 0, 0)" in out and "compact: yes" in out
    assert "derivation_dim: 6" in out and "fourth_power_left: [(0, 0, 0); (0, 0, 0); (0, 0, 1/2)]" in out


def test_idempotent(capsys):
    code, out, _ = run(capsys, "idempotent", "catalog:so3")
    assert code == 0 and "idempotent: [(1, 0, 0); (0, 1, 0); (0, 0, 1)]" in out
    assert run(capsys, "idempotent", "catalog:heisenberg")[0] == 1
    code, out, _ = run(capsys, "idempotent", "catalog:so3", "--newton", "--seed", "3")
    assert code == 0 and "approximate only" in out
    assert run(capsys, "idempotent", "catalog:abelian(2)", "--newton")[0] == 1


def test_integrate(tmp_path, capsys):
    out_csv = tmp_path / "traj.csv"
    code, out, _ = run(capsys, "integrate", "catalog:so3", "--p", "idempotent", "--t-end", "2",
                       "--monitors", "phi", "--out", str(out_csv), "--json")
    env = json.loads(out)
    assert code == 0 and env["results"]["status"] == "blow_up"
    assert abs(env["results"]["t_est"] - 1) <= 0.01
    assert out_csv.read_text().splitlines()[0].endswith(",phi")
    assert run(capsys, "integrate", "catalog:heisenberg", "--p", "idempotent", "--t-end", "1")[0] == 2
    assert run(capsys, "integrate", "catalog:so3", "--p", "1,0,0;0,0,0;0,0,0", "--t-end", "1",
               "--monitors", "nope")[0] == 2


def test_check_theorems(capsys):
    code, out, _ = run(capsys, "check-theorems", "catalog:so3")
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert code == 0 and len(lines) >= 25
    assert all("[" in l and "]" in l for l in lines)


def test_check_theorems_heisenberg_skips_not_fails(capsys):
    code, out, _ = run(capsys, "check-theorems", "catalog:heisenberg")
    assert code == 0 and "skipped" in out


def test_deterministic_output(capsys):
    first = run(capsys, "idempotent", "catalog:so3", "--newton", "--seed", "5", "--json")[1]
    second = run(capsys, "idempotent", "catalog:so3", "--newton", "--seed", "5", "--json")[1]
    assert first == second


def test_unknown_catalog(capsys):
    code, _, err = run(capsys, "info", "catalog:e8")
    assert code == 2 and "unknown catalog algebra" in err
