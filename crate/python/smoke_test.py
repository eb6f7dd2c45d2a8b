"""Smoke test for the liouheun extension module."""

import cmath

import liouheun


def main():
    c = liouheun.Covering.cyclic(2, 1)
    assert c.degree == 3 and c.belyi
    assert c.passport == {"0": [2, 1], "1": [2, 1], "inf": [3]}
    assert c.phi["num"] == ["0", "0", "3", "-2"]

    d = liouheun.Covering.dihedral(1, 2)
    assert d.to_dict()["Theta1"] == ["1", "-3/4"]
    try:
        liouheun.Covering.dihedral(3, 3)
    except ValueError:
        pass
    else:
        raise AssertionError("N = M must be rejected")

    nb = liouheun.Covering.nonbelyi("1/3")
    assert not nb.belyi

    v = liouheun.eval_heun(4, "3/2", "-3/2", -1, "-1/2", 0, 0.1)
    assert abs(v - 0.925) < 1e-14, v
    assert abs(liouheun.eval_hpg(-1, 1, 2, 0.3) - 0.85) < 1e-14
    # 2F1(1, 1; 2; x) = -log(1 - x)/x
    z = 0.3 + 0.2j
    assert abs(liouheun.eval_hpg(1, 1, 2, z) + cmath.log(1 - z) / z) < 1e-14
    try:
        liouheun.eval_heun("1/4", 0, 1, 1, 1, 1, 0.95)
    except ArithmeticError:
        pass
    else:
        raise AssertionError("point outside the disc must be rejected")

    assert liouheun.heun_series(4, "3/2", "-3/2", -1, "-1/2", 0, 5) == ["1", "-3/4"]
    assert liouheun.hpg_series(1, "3/2", "1/2", 3) == ["1", "3", "5", "7"]

    ids = liouheun.catalog()
    assert len(ids) >= 19 and "DIH-EVAL1" in ids
    (rep,) = liouheun.verify("CYC1", "quick", 0)
    assert rep["status"] == "pass", rep
    reports = liouheun.verify("all")
    assert all(r["status"] == "pass" for r in reports), [r["id"] for r in reports if r["status"] != "pass"]

    pb = liouheun.pullback("P1")
    assert pb["match"] and pb["heun"] == ["-1", "0", "2/3", "2/5", "0", "31/30"]
    pb = liouheun.pullback("DIHEDRAL-DIFF", n=2, m=3, alpha="1/5")
    assert pb["exponent_differences"] == ["2/5", "1/2", "3/5", "3/2"]

    print("ok: %d identities verified" % len(reports))


if __name__ == "__main__":
    main()
