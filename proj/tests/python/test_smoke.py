import json
import math

import pytest

import dunklpot


def test_params_constants():
    p = dunklpot.Params(2, 1.0)
    assert p.d == 2 and p.k == 1.0
    assert p.c_k * p.C_k == pytest.approx(1.0 / (4.0 * math.pi), rel=1e-12)
    with pytest.raises(dunklpot.DunklError):
        dunklpot.Params(1, 0.25)


def test_kernels():
    v = dunklpot.kernel("newton", 3, 1.0, [0.3, 0.2, 0.0], [0.1, -0.4, 0.2])
    assert v == pytest.approx(0.24080514647548468, rel=1e-12)
    assert dunklpot.kernel("poisson", 2, 1.0, [0.0, 0.0], [0.6, 0.8]) == pytest.approx(1.0)
    assert math.isinf(dunklpot.kernel("newton", 2, 1.0, [0.3, 0.2], [-0.3, 0.2]))
    with pytest.raises(dunklpot.DunklError):
        dunklpot.kernel("green", 2, 1.0, [1.3, 0.2], [0.1, 0.1])


def test_basis_round_trip():
    z = [0.5, 0.1]
    assert dunklpot.to_a1_basis(dunklpot.from_a1_basis(z)) == pytest.approx(z)


def test_scan_is_deterministic():
    a = dunklpot.scan("green-estimate", 2, 1.0, n=500, seed=3)
    b = dunklpot.scan("green-estimate", 2, 1.0, n=500, seed=3)
    assert a == b
    assert 0.0 < a["ratio_min"] <= a["ratio_max"] < math.inf


def test_verify_suite():
    report = dunklpot.verify("dyson", n=20)
    assert report["suite"] == "dyson"
    assert report["passed"] is True


def test_cli():
    code, out, err = dunklpot.run_cli(["eval", "--kernel", "poisson", "--x", "0,0", "--y", "1,0"])
    assert code == 0
    assert out.splitlines()[0] == "kernel,d,k,x,y,value"
    code, _, _ = dunklpot.run_cli(["verify", "--suite", "nonsense"])
    assert code == 2
    code, out, _ = dunklpot.run_cli(["verify", "--suite", "closed-forms", "--n", "50"])
    assert json.loads(out)["passed"]
