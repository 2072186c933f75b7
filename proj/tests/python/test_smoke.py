import json

import numpy as np
import pytest

import overlapfree


@pytest.fixture(scope="module")
def clusters():
    rng = np.random.default_rng(0)
    centers = rng.uniform(100, 700, size=(5, 2))
    labels = rng.integers(0, 5, size=3000)
    return centers[labels] + rng.normal(scale=25.0, size=(3000, 2))


def test_layout_is_overlap_free_and_bijective(clusters):
    out = overlapfree.layout(clusters)
    pos = out["positions"]
    assert pos.shape == clusters.shape
    assert overlapfree.check_mutual_exclusion(pos, out["r_pack"]) == []
    assert out["d_k"] == pytest.approx(min(1.0, 3 / out["num_max"]))
    assert np.all(out["r_draw"] == out["r_pack1"])


def test_transcribe_counts(clusters):
    t = overlapfree.transcribe(clusters, k=4)
    src = t["source_index"]
    assert sorted(src[src >= 0]) == list(range(len(clusters)))
    assert len(src) >= len(clusters)


def test_pack_three_equal_circles():
    pos = overlapfree.pack(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]), np.ones(3))
    d = np.linalg.norm(pos[:, None, :] - pos[None, :, :], axis=-1)
    assert d[np.triu_indices(3, 1)] == pytest.approx([2.0, 2.0, 2.0])


def test_tangent_position():
    x, y = overlapfree.tangent_position(1.0, (0.0, 0.0), 1.0, (2.0, 0.0), 1.0)
    assert (x, y) == pytest.approx((1.0, 3 ** 0.5))
    with pytest.raises(ValueError):
        overlapfree.tangent_position(1.0, (0.0, 0.0), 1.0, (0.0, 0.0), 1.0)


def test_metrics_identity(clusters):
    m = overlapfree.metrics(clusters, clusters)
    assert m["displacement"] == pytest.approx(0.0, abs=1e-12)
    assert m["knn"] == pytest.approx(1.0)
    assert m["density"] == pytest.approx(0.0, abs=1e-12)
    assert m["overall"] == pytest.approx(1.0)


def test_metrics_of_a_layout(clusters):
    out = overlapfree.layout(clusters)
    m = overlapfree.metrics(clusters, out["positions"])
    rng = np.random.default_rng(1)
    shuffled = rng.permutation(out["positions"])
    assert m["overall"] > overlapfree.metrics(clusters, shuffled)["overall"] + 0.5


def test_layout_json_is_deterministic(clusters):
    a = overlapfree.layout_json(clusters, seed=3)
    b = overlapfree.layout_json(clusters, seed=3)
    assert a == b
    doc = json.loads(a)
    assert len(doc["nodes"]) == len(clusters)


def test_curve_vectors_round_trip():
    vectors = json.loads(overlapfree.curve_test_vectors(120, 5))["vectors"]
    assert len(vectors) == 120
    for v in vectors[:40]:
        c = v["curve"]
        r = overlapfree.evaluate_curve(
            json.dumps(c), c["size"], c["k"], c["num_max"], np.array([v["density"]]), np.array([v["local_density"]])
        )
        assert r[0] == pytest.approx(v["r_draw"], rel=1e-12)


def test_bad_input_raises():
    with pytest.raises(ValueError):
        overlapfree.layout(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        overlapfree.layout(np.zeros((4, 2)), size=-1.0)
