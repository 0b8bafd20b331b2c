"""Smoke test for the pyspinrep extension module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/pyspinrep-*.whl
"""

import pyspinrep


def main():
    r = pyspinrep.build(4, 3)
    assert r.degree == 2 and r.n == 4 and r.field == "GF(3^2)"
    assert r.matrices()[2] == [["0", "1"], ["2", "0"]]
    assert all(r.verify().values())

    for n, p in [(6, 0), (9, 3), (10, 5), (8, 2)]:
        r = pyspinrep.build(n, p)
        assert r.degree == pyspinrep.delta_degree(n, p), (n, p)
        assert all(r.verify().values()), (n, p)
        assert r.is_irreducible()

    r = pyspinrep.build(4, 5)
    factors = r.double().chop()
    assert [f.degree for f in factors] == [2, 2]
    a, b = factors
    assert not a.is_equivalent(b)
    assert a.is_equivalent(b.associate())

    r6 = pyspinrep.build(6, 0)
    assert not r6.is_equivalent(r6.associate())
    minus = pyspinrep.build(6, 0, {6: "minus"})
    assert not r6.is_equivalent(minus)

    hat = pyspinrep.build(7, 7).twist()
    assert hat.cover == "hat" and all(hat.verify().values())

    for fmt in ["json", "text"]:
        assert pyspinrep.Representation.parse(r6.dumps(fmt)) == r6

    try:
        pyspinrep.build(3, 5)
    except ValueError:
        pass
    else:
        raise AssertionError("n = 3 should be rejected")

    print("pyspinrep smoke test passed")


if __name__ == "__main__":
    main()
