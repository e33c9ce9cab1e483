import json
import os
import tempfile

import numpy as np
import pytest

import sepscope


def blobs(gap=6.0, n=30, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, 2)) * 0.3 + [gap / 2, 0]
    b = rng.normal(size=(n, 2)) * 0.3 - [gap / 2, 0]
    return a, b


def test_md_sum_and_gram_match_enumeration():
    rng = np.random.default_rng(1)
    a, b = rng.normal(size=(5, 3)), rng.normal(size=(4, 3))
    md = (a[:, None, :] - b[None, :, :]).reshape(-1, 3)
    np.testing.assert_allclose(sepscope.md_sum(a, b), md.sum(axis=0), rtol=1e-12)
    np.testing.assert_allclose(sepscope.md_gram(a, b), md.T @ md, rtol=1e-12)


def test_separable_sets_reach_one():
    a, b = blobs()
    r = sepscope.measure_sets(a, b, weight="exact")
    assert r["ls_star"] == 1.0
    assert r["ls0"] == 1.0
    assert r["ls1"] == 1.0
    assert r["counts"]["pos"] == 900


def test_measure_labels_and_pair_stats():
    a, b = blobs(gap=1.0, seed=2)
    pts = np.vstack([a, b])
    labels = [0] * len(a) + [1] * len(b)
    r = sepscope.measure(pts, labels)
    assert 0.5 <= r["ls_star"] <= 1.0
    w = sepscope.approx_weight(a, b)
    s = sepscope.pair_stats(a @ w, b @ w)
    assert s["pos"] + s["neg"] + s["zero"] == len(a) * len(b)
    assert r["counts"] == {"pos": s["pos"], "neg": s["neg"], "zero": s["zero"]}


def test_errors_are_typed():
    with pytest.raises(sepscope.DegenerateError):
        sepscope.approx_weight(np.ones((2, 2)), np.ones((3, 2)))
    with pytest.raises(sepscope.UnsupportedError):
        sepscope.f_sigma("relu", 0.1, 0.2)
    with pytest.raises(sepscope.Error):
        sepscope.measure(np.zeros((2, 2)), [0])


def test_greedy_maxls_verifies():
    a, b = blobs(gap=0.5, seed=3)
    res = sepscope.greedy_maxls(a, b)
    assert res["verified"]
    assert len(res["kept_a"]) + len(res["kept_b"]) + len(res["removed"]) == len(a) + len(b)


def test_activations_and_grid():
    assert sepscope.act_eval("sigmoid", 0.0) == (0.5, 0.25, 0.0)
    assert sepscope.f_sigma("tanh", 0.3, 0.3) == 0.0
    grid = sepscope.f_sigma_grid("sigmoid", -2.0, 2.0, 0.5)
    assert grid.shape == (64, 4)


def test_width_study_is_seeded():
    a, b = blobs(gap=1.0, n=20, seed=4)
    first = sepscope.width_study(a, b, [4, 16], trials=10, seed=3)
    again = sepscope.width_study(a, b, [4, 16], trials=10, seed=3)
    assert first == again
    assert all(0.0 <= row["fraction"] <= 1.0 for row in first)
    depth = sepscope.depth_study(a, b, [0, 1], width=4, trials=10, seed=3)
    assert depth["rows"][0]["fraction"] == 0.0
    one, width4 = depth["rows"][1], first[0]
    assert (one["increase_count"], one["degenerate_count"]) == (width4["increase_count"], width4["degenerate_count"])


def test_synthetic_and_spearman():
    pts, labels = sepscope.make_synthetic("rings", n_per_class=50, seed=1)
    assert pts.shape == (100, 2)
    assert sorted(set(labels)) == [0, 1]
    assert sepscope.spearman([1, 2, 3, 4], [2, 4, 6, 9]) == pytest.approx(1.0)


def test_binary_round_trip_and_cli():
    base = os.environ.get("SEPSCOPE_TEST_TMP") or tempfile.mkdtemp()
    os.makedirs(base, exist_ok=True)
    a, b = blobs(seed=5)
    pts = np.vstack([a, b])
    sepscope.write_matrix(os.path.join(base, "p.lsmx"), pts)
    sepscope.write_labels(os.path.join(base, "l.lsmy"), [0] * len(a) + [1] * len(b))
    np.testing.assert_array_equal(sepscope.load_matrix(os.path.join(base, "p.lsmx")), pts)
    code, out, err = sepscope.run_cli(
        ["--out", base, "--deterministic", "measure", "--data", os.path.join(base, "p.lsmx"),
         "--labels", os.path.join(base, "l.lsmy")])
    assert code == 0, err
    with open(os.path.join(base, "measure.json")) as f:
        assert json.load(f)[0]["ls1"] == 1.0
    assert sepscope.run_cli(["measure", "--data", os.path.join(base, "missing.csv")])[0] == 1
