"""Quick checks that the extension module loads and agrees with numpy."""

import cmath
import json
import math

import numpy as np

import almost_hilbert as ah


def test_pairing():
    listed = [(1, 1), (2, 1), (1, 2), (1, 3), (2, 2), (3, 1), (3, 2), (2, 3)]
    assert [ah.pairing_order(k) for k in range(1, 9)] == listed
    for k in range(1, 500):
        assert ah.pairing_index(*ah.pairing_order(k)) == k


def test_operator():
    a = ah.Operator.random(6, seed=3)
    t = np.array(a.weights)
    m = np.array(a.matrix())
    expected = np.diag(1 / t) @ m.conj().T @ np.diag(t)
    assert np.allclose(np.array(a.adjoint().matrix()), expected, atol=1e-12)

    b = np.array(a.h_matrix())
    sv = np.linalg.svd(b, compute_uv=False)
    assert np.allclose(a.singular_values(), sv, rtol=1e-10)
    assert math.isclose(a.schatten_norm(2), np.linalg.norm(b), rel_tol=1e-10)
    assert math.isclose(a.h_norm(), sv[0], rel_tol=1e-10)

    u, p = a.polar()
    assert np.allclose(np.array(u.compose(p).h_matrix()), b, atol=1e-10)

    s = ah.Operator.random(5, seed=4, selfadjoint=True)
    assert s.is_selfadjoint() and not a.is_selfadjoint()
    eig = np.sort(np.linalg.eigvalsh(np.array(s.h_matrix())))[::-1]
    assert np.allclose(s.eigenvalues(), eig, atol=1e-9)


def test_hilbert():
    gaps = []
    for m in (256, 512, 1024):
        x = np.arange(m) / m
        f = np.cos(2 * math.pi * 5 * x)
        hf = np.array(ah.hilbert_transform(list(f)))
        assert np.allclose(hf, np.sin(2 * math.pi * 5 * x), atol=1e-12)
        pv = np.array(ah.hilbert_pv(list(f), 4 / m))
        gaps.append(np.max(np.abs(pv - hf)))
    # excluded window shrinks with the grid, so the gap roughly halves
    assert 1.8 < gaps[0] / gaps[1] < 2.2 and 1.8 < gaps[1] / gaps[2] < 2.2, gaps


def test_functions():
    n = 1024
    x = (np.arange(n) + 0.5) / n
    ks_low = ah.ks2_norm(list(np.sin(2 * math.pi * x)))
    ks_high = ah.ks2_norm(list(np.sin(2 * math.pi * 64 * x)))
    assert ks_high < 0.2 * ks_low
    u = list(np.exp(1j * x) + x**2)
    p = 3.0
    j = np.array(ah.duality_map(u, p))
    nu = ah.lp_norm(u, p)
    assert cmath.isclose(np.sum(np.array(u) * j.conj()) / n, nu * nu, rel_tol=1e-10)
    r = ah.riesz_potential([1.0] * n, 0.5)
    assert len(r) == n and all(z.real > 0 for z in r)


def test_suite():
    report = json.loads(ah.run_suite("schatten", seed=42))
    assert report["suite"] == "schatten" and report["seed"] == 42
    assert all(c["status"] != "fail" for c in report["checks"])
    assert sorted(c["name"] for c in report["checks"]) == ah.check_names("schatten")
    assert ah.run_suite("schatten", seed=42) == ah.run_suite("schatten", seed=42)
    try:
        ah.run_suite("nope")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown suite accepted")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print("ok", name)
