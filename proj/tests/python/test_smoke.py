import math

import numpy as np
import pytest

import segbound as sb


def test_parse_and_features():
    d = sb.parse_libsvm("+1 1:0.5 3:-2\n-1 2:1\n")
    assert d.dim == 3
    assert len(d) == 2
    np.testing.assert_allclose(d.features(), [[0.5, 0, -2], [0, 1, 0]])
    assert list(d.labels()) == [1, -1]
    assert sb.parse_libsvm(d.to_libsvm()).to_libsvm() == d.to_libsvm()


def test_parse_error_is_raised():
    with pytest.raises(sb.ParseError):
        sb.parse_libsvm("+1 2:1 1:1")


def test_one_dimensional_optima():
    d = sb.parse_libsvm("+1 1:1")
    assert abs(sb.train(sb.LossKind.SquaredHinge, d, C=2.0).w[0] - 0.5) < 1e-7
    w = sb.train(sb.LossKind.Logistic, d, C=1.0).w[0]
    assert abs(w - 1.0 / (1.0 + math.exp(w))) < 1e-9


def test_regions_contain_retrained_model():
    data = sb.augment_bias(sb.make_two_gaussians(260, 4, 2.0, seed=3))
    text = data.to_libsvm().splitlines()
    base = sb.parse_libsvm("\n".join(text[:200]))
    pool = sb.parse_libsvm("\n".join(text[200:230]))
    test = sb.parse_libsvm("\n".join(text[230:]))
    mod = sb.plan_modification(base, pool, 0.1, seed=4)
    assert mod.n_added + mod.n_removed == 20

    kind = sb.LossKind.Logistic
    w0 = sb.train(kind, base, C=1.0)
    w1 = sb.retrain_oracle(kind, base, mod, C=1.0)
    regions = sb.build_regions(w0, base, mod, sb.HalfSpaceMode.Exact)
    assert np.linalg.norm(w1.w - regions.sphere.q) <= regions.sphere.r + 1e-8
    seg = regions.segment
    assert seg is not None
    assert -1.0 <= seg.psi <= 1.0

    bounds = sb.coefficient_sensitivity(seg, base.dim)
    for j, iv in enumerate(bounds.per_coordinate):
        assert iv.lower - 1e-8 <= w1.w[j] <= iv.upper + 1e-8

    report = sb.label_sensitivity(seg, test)
    truth = [1 if s >= 0 else -1 for s in test.features() @ w1.w]
    agreement = sb.certified_agreement(report, truth)
    assert agreement is None or agreement == 1.0
    assert 0.0 <= report.error_ratio <= 1.0


def test_segment_region_unit_circle():
    seg = sb.SegmentRegion(np.zeros(2), 1.0, np.array([1.0, 0.0]), 0.0)
    iv = sb.segment_test(seg, np.array([1.0, 0.0]))
    assert iv.lower == pytest.approx(-1.0)
    assert abs(iv.upper) < 1e-15
    sphere = sb.sphere_test(seg.sphere, np.array([1.0, 0.0]))
    assert sphere.width == pytest.approx(2.0)


def test_run_experiment_csv():
    csv = sb.run_experiment(
        "loss = logistic\nc = 1\npup = 0.05\ntrials = 2\n"
        "synthetic_n = 100\nsynthetic_dim = 3\ntiming = false\n"
    )
    lines = csv.strip().splitlines()
    assert lines[0].startswith("loss,C,p_up,trial,method")
    assert len(lines) == 1 + 2 * 3
