from pathlib import Path

import pytest

import semiinf

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def test_nf4_basis_at_h1():
    blocks = semiinf.basis(CONFIGS / "cfg_nf4.json", h_max="1")
    assert {"h": "1", "R": "1", "d": 0, "dim": 28} in blocks


def test_verify_all_passes_and_is_deterministic():
    code, a = semiinf.verify(CONFIGS / "cfg_nf4.json")
    assert code == 0 and a["status"] == "pass"
    _, b = semiinf.verify(CONFIGS / "cfg_nf4.json", jobs=2)
    assert a == b


def test_sign_flip_fails_positivity():
    code, rep = semiinf.verify(CONFIGS / "fail_sign_flip.json", suite="unitarity")
    assert code == 1
    failed = [c["name"] for c in rep["checks"] if not c["pass"]]
    assert "gram positivity" in failed


def test_hl_ring_degree_two():
    code, rep = semiinf.run(CONFIGS / "cfg_nf4.json", "hl-ring")
    assert code == 0
    row = next(r for r in rep["koszul"] if r["p"] == 2 and r["g"] == 0)
    assert row["cohomology"] == 28 and row["brst"] == 28


def test_bad_h_max_raises():
    with pytest.raises(semiinf.ConfigError):
        semiinf.basis(CONFIGS / "cfg_nf4.json", h_max="-1/2")


def test_not_critical_raises():
    with pytest.raises(semiinf.ValidationError):
        semiinf.basis(CONFIGS / "fail_not_critical.json")


def test_hash_tracks_h_max():
    p = CONFIGS / "cfg_nf4.json"
    assert semiinf.config_hash(p) != semiinf.config_hash(p, "1")
