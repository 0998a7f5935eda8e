"""Smoke test for the hadamard_ml extension module.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

import math

import hadamard_ml as hm


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    assert close(hm.alpha_ml(1, 1, 1, 1.0), math.e)
    assert close(hm.mittag_leffler(2, 1, 4.0), math.cosh(2.0))
    assert close(hm.le_roy(1, 2.0), (math.exp(2.0) - 1) / 2.0)
    assert close(hm.gcom_normalizer(0, 1, 3.0), math.exp(3.0))
    assert close(hm.gcom_normalizer(1, 1, 0.5), 2.0)
    assert close(hm.wright(1, 1, 0.25), 1.2660658777520082, 1e-12)  # I_0(1)

    assert close(hm.hadamard_integral_power(0.7, 3.0), 3.0 ** -0.7)
    assert close(hm.caputo_hadamard_power(0.5, 4.0), 2.0)
    value, warned = hm.hadamard_integral_quad(lambda x: x**3, 0.7, 2.0, min_exponent=3.0)
    assert close(value, 3.0 ** -0.7 * 8.0, 1e-10) and not warned

    d = hm.Distribution("com", 2.0, nu=0.5)
    mean, var, disp = d.moments()
    assert disp > 1.0
    assert close(d.pgf(1.0), 1.0)
    assert close(sum(d.pmf(k) for k in range(200)), 1.0)
    assert d.sample(10, seed=42) == d.sample(10, seed=42)

    geo = hm.Distribution("gcom", 0.5, r=1, nu=1)
    assert close(geo.pmf(3), 0.5**4)

    for bad in (lambda: hm.Distribution("gcom", 1.0, r=0.7, nu=1), lambda: hm.Distribution("fcom", 1.0)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("invalid model accepted")
    try:
        hm.alpha_ml(1, 1, 1, 1e5)
    except OverflowError:
        pass
    else:
        raise AssertionError("overflow not reported")

    reports = hm.run_all()
    assert {r.check_id.split("/")[0] for r in reports} == set(hm.CHECK_IDS)
    assert all(r.passed for r in reports), [r for r in reports if not r.passed]
    assert not any(r.passed for r in hm.run_check("theorem2", tol=1e-30, alpha=2.0))

    print(f"ok: {len(reports)} reports passed")


if __name__ == "__main__":
    main()
