"""Smoke test for the qdis extension module.

Build and install first:
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/qdis-*.whl
"""

import math
from fractions import Fraction

import qdis


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    bell = qdis.make_state("bell:0")
    p = qdis.profile(bell)
    assert close(p["N"], 3.0) and close(p["Ic"], 2.0), p
    assert qdis.ppt_verdict(bell)["verdict"] == "entangled"

    dec = qdis.decompose(qdis.make_state("werner:0.5"))
    assert close(dec["t"][0][0], 0.5) and close(dec["t"][1][1], -0.5)

    out = qdis.apply_isotropic(bell, 1.0, 1.0 / 3.0)
    v = qdis.ppt_verdict(out)
    assert v["verdict"] == "separable" and close(v["min_pt_eigenvalue"], 0.0), v
    assert close(qdis.quality_factor(1.0, 1.0 / 3.0), 2.0 / 3.0)
    assert qdis.threshold_ok(1.0, 1.0 / 3.0) and not qdis.threshold_ok(0.9, 0.9)
    assert close(qdis.analytic_ppt_margin(math.pi / 4, 1.0, 1.0), -4.0)

    mixed = qdis.TwoQubitState([[0.25 if i == j else 0 for j in range(4)] for i in range(4)])
    assert qdis.profile(mixed)["region"] == "separability_correlation"
    try:
        qdis.TwoQubitState([[0.5, 0, 0, 0.6], [0, 0, 0, 0], [0, 0, 0, 0], [0.6, 0, 0, 0.5]])
    except ValueError:
        pass
    else:
        raise AssertionError("non-PSD matrix accepted")

    state, report = qdis.dephase_disentangle(qdis.make_state(f"schmidt:{math.pi / 6}"))
    assert report["verdict"]["verdict"] == "separable"
    assert report["reduced_a_delta"] < 1e-10 and report["reduced_b_delta"] < 1e-10
    weights = sorted(t[0] for t in report["product_terms"])
    assert close(weights[0], 0.25) and close(weights[1], 0.75), weights
    assert close(sum(state.eigenvalues()), 1.0)

    assert qdis.clone_eta("local_symmetric", 3) == Fraction(5, 9)
    assert qdis.net_shrink("nonlocal", 6) == Fraction(1, 3)
    assert qdis.min_copies("local_symmetric") == 3
    assert qdis.min_copies("nonlocal") == 6
    assert qdis.min_copies("local_single") is None

    assert close(qdis.bell_diag_eof(0.5), 0.0)
    assert close(qdis.bell_diag_eof(1.0), 1.0)
    s = qdis.make_state("schmidt:0.4")
    assert qdis.fef_direct(s) <= qdis.profile(s)["f"] + 1e-9

    print("smoke test passed")


if __name__ == "__main__":
    main()
