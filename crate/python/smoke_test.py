"""Smoke test for the quon_su2_py extension module.

Build and run from the repository root:

    cargo build -p quon-su2-py --release --features extension-module
    cp target/release/libquon_su2_py.so python/quon_su2_py.so
    python3 python/smoke_test.py
"""

import cmath
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import quon_su2_py as q  # noqa: E402


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    assert close(q.cg("1/2", "1/2", "1/2", "-1/2", 0, 0), math.sqrt(0.5))
    assert q.cg_exact(1, 1, 0, 0, 1, 0) == "0"
    assert close(q.threejm("1/2", "1/2", 0, "1/2", "-1/2", 0), math.sqrt(0.5))
    assert close(q.sixj("1/2", "1/2", 1, "1/2", "1/2", 1), 1 / 6)
    assert close(q.ninej(["1/2", "1/2", 1, "1/2", "1/2", 1, 1, 1, 0]), q.ninej([0.5, 0.5, 1, 0.5, 0.5, 1, 1, 1, 0]))

    assert q.alpha_values("3/2", 0.5) == [-0.75, 0.25, 1.25, 2.25]
    assert close(q.overlap("1/2", "1/2", 1), 1j * math.sqrt(0.5))
    assert close(q.cg_nonstandard("1/2", "1/2", 0, 1, 0, 0), 1j * math.sqrt(0.5))
    f = q.fbar("1/2", "1/2", 1, 0, 1, 2, r=0.37)
    assert abs(f.imag) < 1e-12

    ops = q.SpinOperators("3/2", r=0.37)
    assert ops.dim == 4 and ops.j == "3/2"
    assert close(ops.phi_r, 2 * math.pi * 1.5 * 0.37)
    u = ops.matrix("U_r", alpha=True)
    for i, row in enumerate(u):
        for j, z in enumerate(row):
            assert close(abs(z), 1.0 if i == j else 0.0, 1e-12)
    assert max(ops.residuals().values()) < 1e-10

    quon = q.quon_operators(3, phi=0.5)
    assert len(quon["U_r"]) == 9
    assert max(v for name, v in q.quon_relations(5).items()) < 1e-12

    checks = q.verify(j_max="3/2", r=[0.0, 0.37], k=[2, 3])
    assert checks and all(c["pass"] for c in checks)

    try:
        q.cg("x", 1, 0, 0, 1, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("bad spin accepted")

    print(f"python smoke test ok: {len(checks)} verify checks passed, e^(i phi_r) = {cmath.exp(1j * ops.phi_r):.4f}")


if __name__ == "__main__":
    main()
