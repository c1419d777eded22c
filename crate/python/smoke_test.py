"""Smoke test for the hilbk3 Python module.

Build and install the extension first:

    pip install --no-build-isolation crates/hilbk3-py

then run ``python3 python/smoke_test.py``.
"""

from fractions import Fraction

import hilbk3


def check(name, ok):
    print(f"[{'ok' if ok else 'FAIL'}] {name}")
    return ok


def main():
    results = []

    delta = hilbk3.series("Delta", 4)
    row = lambda n: delta.row(n).get(0, (Fraction(0), Fraction(0)))[0]
    results.append(check("Delta = q - 24 q^2 + 252 q^3 - 1472 q^4", [row(n) for n in range(1, 5)] == [1, -24, 252, -1472]))

    inv = delta.invert()
    results.append(check("1/Delta starts at q^-1", inv.q_min == -1))
    results.append(check("QSeries JSON round trip", hilbk3.QSeries.from_json(inv.to_json()) == inv))

    results.append(check("Yau-Zaslow numbers", hilbk3.yau_zaslow(3) == [1, 24, 324, 3200]))

    f = hilbk3.series("F", 8)
    fit = hilbk3.fit(f * f, 0, 2)
    results.append(check(f"F^2 fits as {fit}", fit.weight == -2 and fit.holomorphic))

    table = hilbk3.wdvv_solve(3)
    results.append(check("WDVV table passes its checks", all(ok for _, ok, _ in table.verify())))

    hyp = hilbk3.hyperelliptic_table(6)
    results.append(check("h_(2,2) = 1, h_(2,3) = 36", (hyp.bps(2, 2), hyp.bps(2, 3)) == (1, 36)))

    fibers = hilbk3.gw_table("fibers", 1, 3)
    results.append(check("fiber series for d = 1 reproduces 1, 24, 324", [fibers.get(h, 0) for h in range(3)] == [1, 24, 324]))

    model = hilbk3.SurfaceModel("k3-rank24")
    results.append(check("rank-24 model pairs F with B+F to 1", model.rank == 24 and model.pair("F", "B+F") == 1))

    hilb = hilbk3.Hilb("k3-rank24", 2)
    br = hilb.bracket("p(-1,F) 1", "p(-1,F) 1")
    results.append(check("<p(-1,F), p(-1,F)> starts at q^-1", br.q_min == -1 and br.q_max == 2))

    try:
        hilb.bracket("p(-1,F 1", "p(-1,F) 1")
        results.append(check("malformed monomial is rejected", False))
    except ValueError:
        results.append(check("malformed monomial is rejected", True))

    if not all(results):
        raise SystemExit(1)
    print("all smoke checks passed")


if __name__ == "__main__":
    main()
