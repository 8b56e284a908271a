"""Smoke test for the extalg_py bindings.

Build and install first:

    pip install --no-build-isolation -e crates/py

then run ``python python/smoke_test.py``.
"""

import json
import math

import extalg_py as ea
from extalg_py import FockOperator, Multivector, Outermorphism


def e(n, *idx):
    return Multivector.e(n, *idx)


def close(a, b, tol=1e-12):
    return (a - b).norm() <= tol


def main():
    m = 3 * e(5, 2, 5) + (2 + 1j) * e(5, 3, 4)
    assert m << e(5, 1, 2, 4, 5) == -3 * e(5, 1, 4)
    assert (e(5, 4) + 1j * e(5, 3, 4, 5)) >> e(5, 3, 4) == 1j * e(5, 5)
    assert (e(3, 2) ^ e(3, 1)) == -e(3, 1, 2)
    assert Multivector(3, [((2, 1), 1.0)]) == -e(3, 1, 2)

    assert e(4, 1).rstar() == e(4, 2, 3, 4)
    assert e(4, 1).lstar() == -e(4, 2, 3, 4)
    assert close(e(4, 1, 4).regressive(e(4, 1, 2, 3)), e(4, 1))
    assert e(3, 1, 2).meet(e(3, 2, 3)).norm() == 1.0

    ex = e(5, 1, 3, 4) - e(5, 1, 4, 5) + e(5, 3, 4, 5) + e(5, 1, 2, 3, 5)
    assert len(ex.inner_space()) == 2 and len(ex.outer_space()) == 5
    assert ex.grades() == (2, 3, 4, 5)
    b, n = ex.factorize()
    assert close(b ^ n, ex, 1e-12)
    b, n = ex.carve()
    assert close(n << b, ex, 1e-12)

    assert not (e(4, 1, 2) + e(4, 3, 4)).is_simple()
    assert ((e(4, 1) + e(4, 2)) ^ (e(4, 3) - e(4, 4))).is_simple()

    t = Outermorphism([[0, 1, -1], [2, 1, 0], [1, 0, 2]])
    assert abs(t.det() + 3) < 1e-12 and abs(t.volume_factor() - 3) < 1e-12
    y = e(3, 2) + 3 * e(3, 1, 3)
    assert close(t.apply(t.inverse_apply(y)), y, 1e-12)

    a14 = FockOperator.annihilation([1, 4], 4)
    assert a14(e(4, 1, 2, 4)) == -e(4, 2)
    c = FockOperator.creation([2, 3, 4, 7], 7).supercommutator(FockOperator.annihilation([1, 3, 6], 7))
    assert c(e(7, 1, 3, 5, 6)) == e(7, 2, 3, 4, 5, 7)
    assert ea.supercommutator_basis(7, [1, 2, 3, 6], [1, 3, 4, 6, 7], [4, 5, 7]) == (-1, [2, 5])

    assert ea.epsilon([2, 1, 3]) == -1 and ea.epsilon([1, 1]) == 0
    assert ea.pairs([3, 1], [2]) == 1
    cos = ea.principal_cosines([[1, 0, 0, 0], [0, 1, 0, 0]], [[1, 0, 1, 0], [0, 1, 0, 1]])
    assert all(abs(x - math.sqrt(0.5)) < 1e-12 for x in cos)

    assert ea.evaluate("e14 & e123", 4) == e(4, 1)
    assert ea.evaluate("simple(e12 + e34)", 4) is False
    assert len(ea.evaluate("isp(e12 ^ (e3 + e4))", 4)) == 3

    doc = json.loads(m.to_json())
    assert list(doc) == ["dimension", "field", "terms"]
    assert Multivector.from_json(m.to_json()) == m
    assert m.terms() == [([2, 5], 3 + 0j), ([3, 4], 2 + 1j)]

    print("extalg_py smoke test passed")


if __name__ == "__main__":
    main()
