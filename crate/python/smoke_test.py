"""Quick end-to-end check of the twobridge extension module.

Build and install it first:

    cd crates/python && maturin build --release -o dist && pip install dist/*.whl
"""

import twobridge as tb


def main():
    k = tb.Knot(38, 85)
    assert (k.p, k.q) == (38, 85)
    assert k.vector() == [2, 2, 0, 2, 2, 0, 2, 2]
    assert k.crossing_number() == 12
    assert k.smaller() == [tb.Knot(2, 5)]
    assert k.dominates(tb.Knot.parse("2/5"))
    assert not tb.Knot(1, 3).dominates(tb.Knot(2, 5))
    assert tb.Knot(-47, 85) == k and len({k, tb.Knot(47, 85)}) == 1

    assert tb.even_expansion(38, 85) == (0, [2, 4, 4, 2])
    big = 10**30 + 1
    assert tb.even_expansion(big, 1) == (big, [])
    assert (tb.Knot(2, big).p, tb.Knot(2, big).q) == (2, big)

    assert [tb.c_m(m) for m in range(1, 8)] == [9, 15, 45, 45, 105, 105, 225]
    assert tb.ek(15) == (2, tb.Knot(1, 15))
    value, witness = tb.ek(45, assisted=True)
    assert value == 4 and witness == tb.Knot(1, 45)

    t27 = tb.torus_vector(27)
    assert tb.smaller_knots(t27) == [tb.Knot(1, 3), tb.Knot(1, 9)]
    assert tb.seams(t27) == [8, 9, 17, 18]
    d = tb.negate(t27, [5])
    assert tb.phi(d) == tb.Knot(17, 315) and tb.crossing_number(d) == 28

    lifted = tb.lift([2, -2], 10)
    assert tb.crossing_number(lifted) == 10
    assert tb.Knot(1, 3) in tb.smaller_knots(lifted)

    for bad in (lambda: tb.Knot(1, 4), lambda: tb.crossing_number([2, 1]), lambda: tb.lift([2, 2], 5)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    try:
        tb.ek(30, budget=18)
    except RuntimeError:
        pass
    else:
        raise AssertionError("expected RuntimeError")

    report, ok = tb.verify(budget=14)
    assert ok, report
    print(report, end="")
    print("smoke test passed")


if __name__ == "__main__":
    main()
