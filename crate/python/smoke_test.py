"""Smoke test for the a4lattice extension module.

Build and install first, e.g. `maturin build --release -m crates/python/Cargo.toml`
followed by `pip install target/wheels/a4lattice-*.whl`.
"""

import json

import a4lattice as a4


def main() -> None:
    assert [a4.f_ssl(m) for m in (1, 4, 5, 9, 11, 36)] == [1, 6, 6, 11, 24, 66]
    assert a4.series("soc", 11) == [1, 5, 10, 20, 30, 50, 50, 80, 90, 150, 144]
    assert a4.check_identity("ssl", 36) and a4.check_identity("soc", 100)
    assert a4.representable_ssl_indices(20) == [1, 4, 5, 9, 11, 16, 19, 20]

    tau = a4.GoldenInt(0, 1)
    assert tau * tau == tau + a4.GoldenInt(1)
    assert a4.GoldenInt(2, 1).norm() == 5

    units = a4.Icosian.units()
    assert len(units) == 120 and all(u.is_unit() for u in units)

    q = a4.Icosian([1, 1, 0, 0, 0, 0, 0, 0])
    assert str(q.nr()) == "2" and q.sigma() == 2
    c = a4.csl(q)
    assert c["sigma"] == 2 and len(c["hnf"]) == 4
    assert a4.ssl(q)["index"] == 16
    assert a4.denominator(q) == 2

    irrational = a4.Icosian([0, 1, 0, 0, 1, 0, 0, 0])
    assert a4.denominator(irrational) is None
    try:
        a4.csl(irrational)
    except ValueError as e:
        assert "not admissible" in str(e)
    else:
        raise AssertionError("non-admissible icosian accepted")

    assert [a4.oracle_ssl_count(m) for m in range(1, 6)] == [1, 0, 0, 6, 6]
    assert a4.oracle_ssl_count(4, dual=True) == 6
    assert a4.oracle_soc_count(2) == 5
    report = json.loads(a4.verify(4, 2, 5, 0))
    assert report["all_match"], report
    print("a4lattice smoke test passed")


if __name__ == "__main__":
    main()
