"""Tests for the tridiagonal MCP server tools."""
import asyncio
import json
import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from tridiag import codec
from tridiag.core import PerturbationParams, make_two_periodic, sylvester_kac
from tridiag_server.server import (
    MAX_TOOL_COUNT,
    compute_chains,
    compute_determinant,
    compute_spectrum,
    generate_matrix,
    map_spectrum,
    read_nilpotent_example,
    verify_corpus,
)


def test_generate_matrix():
    doc = asyncio.run(generate_matrix("paper-example"))
    assert doc["n"] == 5

    doc = asyncio.run(generate_matrix("random-b", n=6, seed=3))
    assert doc["seed"] == 3
    assert len(doc["diag"]) == 6
    assert asyncio.run(generate_matrix("random-b", n=6, seed=3)) == doc

    assert "error" in asyncio.run(generate_matrix("random-j"))
    assert "error" in asyncio.run(generate_matrix("identity", n=3))


def test_compute_spectrum():
    matrix = asyncio.run(generate_matrix("sylvester-kac", n=4))
    mapped = asyncio.run(compute_spectrum(matrix))
    assert mapped["shape"] == "zero"
    assert sorted(round(e["value"][0], 8) for e in mapped["entries"]) == [-4, -2, 0, 2, 4]

    oracle = asyncio.run(compute_spectrum(matrix, method="oracle"))
    assert oracle["method"] == "oracle"
    assert len(oracle["entries"]) == 5

    assert "error" in asyncio.run(compute_spectrum(matrix, method="guess"))
    assert "error" in asyncio.run(compute_spectrum({"n": 2}))


def test_map_spectrum():
    matrix = asyncio.run(generate_matrix("paper-example"))
    result = asyncio.run(map_spectrum(matrix, x=[1, 0]))
    assert result["paired"]["zero_mult"] == 5
    assert result["spectrum"]["entries"] == [{"value": [-1, 0], "mult": 2}, {"value": [1, 0], "mult": 3}]

    result = asyncio.run(map_spectrum(matrix, x=[1, 0], y=[2, 0]))
    assert sum(e["mult"] for e in result["spectrum"]["entries"]) == 5

    B = codec.matrix_to_json(make_two_periodic(sylvester_kac(2), PerturbationParams(1, 2)))
    assert "error" in asyncio.run(map_spectrum(B, x=[1, 0]))


def test_compute_determinant():
    B = codec.matrix_to_json(make_two_periodic(sylvester_kac(3), PerturbationParams(1, 2)))
    dets = asyncio.run(compute_determinant(B))
    # σ(J) = {±1, ±3}: det B = (xy - 1)(xy - 9)
    assert complex(*dets["recurrence"]) == -7
    for key in ("closed_form", "dense"):
        assert abs(complex(*dets[key]) + 7) <= 1e-9


def test_compute_chains():
    matrix = asyncio.run(generate_matrix("sylvester-kac", n=2))
    result = asyncio.run(compute_chains(matrix, left=True))
    assert result["shape"] == "zero"
    assert len(result["chains"]) == 6
    assert all(c["vectors"] for c in result["chains"])


def test_verify_corpus():
    report = asyncio.run(verify_corpus(count=5, nmax=5, seed=7))
    assert report["passed"], report["failures"]
    assert report["count"] == 5
    assert "error" in asyncio.run(verify_corpus(count=MAX_TOOL_COUNT + 1))
    assert "error" in asyncio.run(verify_corpus(nmax=1))


def test_nilpotent_resource():
    doc = json.loads(asyncio.run(read_nilpotent_example()))
    assert codec.matrix_from_json(doc).n == 5
