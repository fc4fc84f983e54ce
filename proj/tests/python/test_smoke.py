import os
import subprocess

import pytest

import ivme

TRIANGLE = [("R", 1, 2, 1), ("S", 2, 3, 1), ("T", 3, 1, 1)]


@pytest.mark.parametrize("query,k", [("d0", 0), ("d1", 1), ("d2", 2), ("d3", 3)])
def test_engine_matches_oracle(query, k):
    stream = ivme.generate_workload(seed=5, domain=8, updates=400, delete_frac=0.3, skew="zipf:1.2")
    engine = ivme.Engine(query, epsilon=0.5)
    engine.apply_stream(stream)
    assert engine.result() == ivme.oracle_triangle(stream, k)
    assert engine.check_invariants() == ""
    assert engine.check_views() == ""


def test_single_triangle():
    engine = ivme.Engine("d3")
    engine.apply_stream(TRIANGLE)
    assert engine.result() == {(1, 2, 3): 1}
    assert engine.count() == 1
    engine.update("S", 2, 3, -1)
    assert engine.result() == {}


def test_double_partition_count():
    engine = ivme.Engine("d0", epsilon=0.25, double_partition=True)
    engine.apply_stream(TRIANGLE * 2)
    assert engine.count() == 8
    assert engine.costs()["total"] > 0


def test_errors():
    engine = ivme.Engine("d1")
    with pytest.raises(ivme.RejectedDelete):
        engine.update("R", 1, 1, -1)
    assert engine.db_size == 0
    with pytest.raises(ivme.ParseError):
        ivme.parse_stream("+ Q 1 2\n")
    with pytest.raises(ValueError):
        ivme.Engine("d3", epsilon=2.0)


def test_parse_stream():
    assert ivme.parse_stream("# c\n+ R 1 2\n- T 3 1\n") == [("R", 1, 2, 1), ("T", 3, 1, -1)]


def test_oumv():
    matrix = [[True, False], [False, True]]
    rounds = [([True, False], [True, False]), ([True, False], [False, True])]
    assert ivme.solve_oumv(matrix, rounds) == [ivme.oracle_oumv(matrix, u, v) for u, v in rounds]
    assert ivme.solve_oumv(matrix, rounds) == [True, False]


@pytest.mark.skipif("IVME_CLI" not in os.environ, reason="command line tool path not given")
def test_cli_verify_and_usage():
    cli = os.environ["IVME_CLI"]
    ok = subprocess.run([cli, "verify", "--query", "d2", "--updates", "200", "--domain", "6"],
                        capture_output=True, text=True)
    assert ok.returncode == 0
    assert ok.stdout.startswith("PASS")
    bad = subprocess.run([cli, "run", "--query", "d9"], capture_output=True, text=True)
    assert bad.returncode == 2
