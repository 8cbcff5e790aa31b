from smalldisc import verify


def test_crashing_check_is_a_failure():
    def boom():
        raise RuntimeError("broken")

    res = verify._run("demo", boom)
    assert not res.passed and "broken" in res.detail
    assert res.line().startswith("[FAIL] demo")


def test_failures_are_reported():
    res = verify._run("demo", lambda: (3, ["a", "b"]))
    assert not res.passed and res.cases == 3 and res.detail == "a; b"


def test_suite_names():
    assert set(verify.SUITES) == {"arith", "dirichlet", "fields", "repr", "bounds"}
    assert any("tensor trivial multiplicity" in label for label, _ in verify.SUITES["repr"])
    assert any("Euler vs splitting" in label for label, _ in verify.SUITES["fields"])


def test_small_suite_runs_clean():
    lines = []
    results = verify.run_suite("arith", lines.append)
    assert all(r.passed for r in results)
    assert len(lines) == len(results)


def test_parallel_matches_serial():
    serial = [r.passed for r in verify.run_suite("dirichlet")]
    par = [r.passed for r in verify.run_suite("dirichlet", jobs=2)]
    assert serial == par
