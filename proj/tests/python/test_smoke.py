import pytest

import thetacong as tc


def brute_partitions(n_max):
    ways = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for n in range(part, n_max + 1):
            ways[n] += ways[n - part]
    return ways


def test_kronecker_and_sigma():
    assert tc.kronecker(12, 5) == -1
    assert tc.kronecker(-4, 3) == -1
    s = tc.sigma(30)
    assert s[6] == 12
    assert all(s[n] == sum(d for d in range(1, n + 1) if n % d == 0) for n in range(1, 31))


def test_partition_tables():
    exact = tc.pr_exact(1, 60)
    assert exact == brute_partitions(60)
    assert tc.pr_mod(1, 7, 60) == [v % 7 for v in exact]
    assert tc.pr_exact(17, 1)[1] == 17


def test_generating_function_and_shapes():
    f = tc.build_f(21, 5, -1, 2000)
    g = tc.eta_pow(3, 5, 2000)
    offset = g["start"] - f["start"]
    assert f["coeffs"][offset:] == g["coeffs"]
    shape = tc.theta_detect_f(17, 7, 0)
    assert shape["kind"] == "eta" and shape["scalar"] == 3
    assert tc.abnormal_verify(23, 7, 1)["scalar"] == 3


def test_congruence_layer():
    assert tc.ramanujan_check(1, 5)
    assert not tc.ramanujan_check(17, 7)
    assert tc.reduce_modulus(1, 4, 161, 5) == (161, 1)
    assert tc.etafamily_verify(17, 7, 1) == 3
    assert len(tc.figure_pairs()) == 66
    rows = tc.search(5, 7, 0, 5, 40)
    assert rows and all(r["status"] == "ruled_out" for r in rows)


def test_errors_are_raised():
    with pytest.raises(tc.ThetacongError, match="excluded-case"):
        tc.build_f(14, 7, 0, 100)
    with pytest.raises(tc.ThetacongError):
        tc.inv_mod(5, 5)
