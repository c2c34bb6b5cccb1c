"""Quick check that the extension module imports and agrees with known values."""

import glab


def main():
    g = glab.Group("SL(2,5)")
    assert g.order() == 120
    assert g.commutator_width() == 1
    s = g.structure()
    assert s["center_order"] == 2 and s["is_perfect"]

    c = glab.Group("Cyc(12)")
    assert c.thickness("arc(1)") == 7
    assert c.power_cover("arc(1)") == 6
    assert glab.Group("Cyc(6)").gn_set(3) == ["1", "5"]

    a = glab.Permutation("(1,2,3)", 5)
    b = glab.Permutation("(3,4,5)", 5)
    assert (a * b).cycle_type() == [5]
    assert (a * a.inverse()) == glab.Permutation("()", 5)
    assert glab.cycle_quotient(1, [2, 3], [4, 5]) == "(1,4,5,3,2)"

    assert glab.lambda_weights("A2") == [1, 1]
    assert glab.is_regular([2, 3], 5)
    assert glab.transport_solve([2, 3], "1,3,0,1", 5) == [1, 4, 0, 1]
    assert all(ch["failures"] == 0 for ch in glab.verify_relations(3, 5)["checks"])

    report = glab.run_task("task=class-cube\nn=2\np=5\nt=2,3\n")
    assert report["passed"] and report["results"]["cube"]["covers"]
    assert "thick-analyze" in glab.task_names()

    try:
        glab.Group("SL(2,4)")
    except ValueError as e:
        assert "not prime" in str(e)
    else:
        raise AssertionError("SL(2,4) accepted")

    print("glab", glab.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
