"""Smoke test for the pgalois extension module.

Build and install first:

    pip install maturin
    pip install --no-build-isolation -e crates/python

then run `python python/smoke_test.py` from the repository root.
"""

import json
import sys
import tempfile
from pathlib import Path

import pgalois

ROOT = Path(__file__).resolve().parent.parent


def check(cond, what):
    if not cond:
        print(f"FAIL {what}")
        sys.exit(1)
    print(f"ok   {what}")


def main():
    check(pgalois.fixture_names() == ["triv", "swap", "shift", "null", "trivact"], "fixture names")

    shift = pgalois.Instance.fixture("shift")
    check((shift.prime, shift.dim, shift.group_order) == (2, 2, 3), "shift shape")
    check(shift.idempotents == [[1, 1], [0, 1], [1, 0]], "shift idempotents")
    check(shift.validate() == {}, "shift is a valid partial action")
    check(shift.alpha(1, [1, 0]) == [0, 1], "alpha_s(f1) = f2")
    check(shift.invariants() == [[1, 1]], "invariants of shift are the scalars")
    check(shift.is_galois(), "shift is Galois")

    c = shift.coring()
    x = c.grouplike()
    check(c.comultiply(x) == c.tensor(x, x), "Delta(x) = x (x) x")
    check(c.counit(x) == [1, 1], "epsilon(x) = 1")
    check(c.check_axioms() == {}, "coring axioms")

    d = shift.dual_ring()
    check(d.dim == 4, "dim *C = 4")
    u_f2 = d.mul(d.u(1), d.j([0, 1]))
    check(d.mul(u_f2, u_f2) == [0] * 4, "(u_s f2)^2 = 0")
    check(d.check() == {}, "dual ring checks")

    report = shift.run("galois")
    check(report["verdicts"]["can_bijective"] is True, "galois report")
    text, code = pgalois.Instance.fixture("trivact").emit("morita")
    check(code == 1 and json.loads(text)["verdicts"]["strict"] is False, "trivact is not strict")
    check(shift.emit("dashboard") == shift.emit("dashboard"), "reports are deterministic")

    swap = pgalois.Instance.fixture("swap")
    check(swap.run("galois", subring=[[1, 1]])["dimensions"]["subring"] == 1, "explicit subring")

    global_text = (ROOT / "fixtures" / "shift-global.json").read_text()
    check(pgalois.generate(global_text) == shift.to_json(), "generate restricts to shift")

    corpus = pgalois.corpus(5, 20)
    check(all(inst.validate() == {} for inst in corpus), "random corpus is valid")
    mutants = pgalois.mutants(5, 5)
    check(all("compatibility" in m.validate() for m in mutants), "mutants break compatibility")
    check(all("delta_right_linear" in m.coring().check_axioms() for m in mutants), "mutants break Delta")

    with tempfile.TemporaryDirectory() as tmp:
        paths = pgalois.write_fixtures(tmp)
        check(len(paths) == 5, "fixtures written")
        back = pgalois.Instance.from_file(str(Path(tmp) / "shift.json"))
        check(back.to_json() == shift.to_json(), "fixture file round trip")

    try:
        pgalois.Instance.from_json(shift.to_json().replace('"prime": 2', '"prime": 4', 1))
    except pgalois.PgaloisError as e:
        check("modulus not prime" in str(e), "composite prime rejected")
    else:
        check(False, "composite prime rejected")

    try:
        shift.alpha(1, [1, 0, 0])
    except ValueError as e:
        check(str(e).startswith("[shape]"), "shape errors are ValueErrors")
    else:
        check(False, "shape errors are ValueErrors")

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
