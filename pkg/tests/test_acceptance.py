"""Acceptance gate: one test per shipped guarantee, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -v -s` to see the verdict lines.
"""

import functools
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from genecluster import (
    Dataset,
    ExpressionMatrix,
    NormalizationParams,
    PipelineConfig,
    SilhouetteReport,
    cluster_pipeline,
    compact_cluster,
    dependency,
    discretize,
    ecia_initialize,
    generate_synthetic,
    kmeans,
    mean_dependency,
    min_max_normalize,
    positive_region,
    random_initialize,
    run_pipeline,
    silhouette_scores,
    usqr_reduct,
    write_matrix,
)
from genecluster.clustering import Centroids, ClusterAssignment
from genecluster.roughset import InformationTable

from helpers import (
    bump_matrix,
    oracle_dependency,
    oracle_positive_region,
    random_table_values,
    table_ids,
)


def criterion(num, label):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                print(f"\nACCEPTANCE {num} FAIL: {label}")
                raise
            print(f"\nACCEPTANCE {num} PASS: {label}")
            return result

        return wrapper

    return deco


def seeded_tables(count):
    rng = np.random.default_rng(100)
    tables = []
    for _ in range(count):
        values = random_table_values(rng, max_objects=8, max_attributes=6, categories=3)
        oids, aids = table_ids(values)
        tables.append((values, InformationTable(oids, aids, values), rng))
    return tables


@criterion(1, "positive region and dependency match the brute-force oracle on 100 tables")
def test_criterion_1_roughset_oracle_equivalence():
    start = time.perf_counter()
    for values, table, rng in seeded_tables(100):
        n_attr = values.shape[1]
        subset_size = int(rng.integers(0, n_attr + 1))
        subset = sorted(rng.choice(n_attr, size=subset_size, replace=False).tolist())
        attrs = tuple(f"a{j + 1}" for j in subset)
        for y in range(n_attr):
            got_region = positive_region(table, attrs, f"a{y + 1}")
            want_region = oracle_positive_region(values, subset, y)
            assert frozenset(got_region) == want_region
            got_dep = dependency(table, attrs, f"a{y + 1}")
            want_dep = oracle_dependency(values, subset, y)
            assert got_dep == want_dep
            assert isinstance(got_dep, Fraction)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"oracle sweep took {elapsed:.2f}s"


@criterion(2, "greedy selection reaches full mean dependency exactly, in bounded rounds")
def test_criterion_2_usqr_contract():
    for values, table, rng in seeded_tables(100):
        r = usqr_reduct(table)
        full = mean_dependency(table, table.attribute_ids)
        assert mean_dependency(table, r.selected) == full  # exact rationals
        assert len(r.trace) <= table.n_attributes
        means = [round_.mean_dependency for round_ in r.trace]
        assert all(b >= a for a, b in zip(means, means[1:]))
        # planted duplicate columns can never all be needed
        doubled = np.hstack([values, values])
        oids, aids = table_ids(doubled)
        rd = usqr_reduct(InformationTable(oids, aids, doubled))
        assert len(rd.selected) < doubled.shape[1]


@criterion(3, "normalization hits both endpoints, keeps ranks; codes stay in {-1,0,1}")
def test_criterion_3_normalize_discretize():
    rng = np.random.default_rng(101)
    for new_min, new_max in ((0.0, 1.0), (0.25, 0.75), (-1.0, 2.0)):
        values = rng.normal(size=(40, 9))
        m = ExpressionMatrix(
            tuple(f"g{i}" for i in range(40)),
            tuple(f"t{j}" for j in range(9)),
            values,
        )
        norm = min_max_normalize(m, NormalizationParams(new_min, new_max))
        for j in range(9):
            col = norm.values[:, j]
            assert col.min() == new_min  # exact, not approximate
            assert col.max() == new_max
            order = np.argsort(values[:, j], kind="stable")
            assert (np.diff(col[order]) >= 0).all()
        codes = discretize(norm)
        assert set(np.unique(codes.values)) <= {-1, 0, 1}
    worked = ExpressionMatrix(
        ("g1",), ("t1", "t2", "t3", "t4"), [[0.5, 0.3, 0.3, 0.8]]
    )
    assert discretize(worked).values.tolist() == [[1, -1, 0, 1]]


@criterion(4, "deterministic seeding hand traces: centroids [2,5] / wcss 4, and [-2,0,2] -> [0]")
def test_criterion_4_ecia_hand_traces():
    d = Dataset(tuple("abcdef"), np.array([[1.0], [2.0], [3.0], [4.0], [5.0], [6.0]]))
    init = ecia_initialize(d, 2)
    assert np.allclose(init.vectors, [[2.0], [5.0]], atol=1e-9)
    a = kmeans(d, init, mode="exact")
    assert a.labels.tolist() == [0, 0, 0, 1, 1, 1]
    assert abs(a.wcss - 4.0) <= 1e-9
    neg = Dataset(("x", "y", "z"), np.array([[-2.0], [0.0], [2.0]]))
    assert np.allclose(ecia_initialize(neg, 1).vectors, [[0.0]], atol=1e-9)


@criterion(5, "10 deterministic pipeline runs on a 300x17 matrix are byte-identical")
def test_criterion_5_pipeline_determinism():
    start = time.perf_counter()
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "matrix.tsv"
        write_matrix(bump_matrix(genes=300, conditions=17), path)
        blobs = {
            run_pipeline(PipelineConfig(str(path))).to_json(include_timings=False)
            for _ in range(10)
        }
    assert len(blobs) == 1
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"10 runs took {elapsed:.2f}s"


@criterion(6, "exact-mode wcss never increases; convergence is verified stable")
def test_criterion_6_lloyd_monotonicity():
    rng = np.random.default_rng(102)
    for trial in range(50):
        n = int(rng.integers(5, 201))
        m = int(rng.integers(1, 18))
        k = int(rng.integers(1, min(n, 11)))
        d = Dataset(
            tuple(f"p{i}" for i in range(n)), rng.normal(scale=2.0, size=(n, m))
        )
        init = (
            ecia_initialize(d, k)
            if trial % 2
            else random_initialize(d, k, seed=trial)
        )
        a = kmeans(d, init, mode="exact")
        wcss = [h.wcss for h in a.history]
        assert all(b <= x + 1e-9 for x, b in zip(wcss, wcss[1:]))
        if a.converged:
            diff = d.points[:, None, :] - a.centroids.vectors[None, :, :]
            relabeled = np.sqrt((diff**2).sum(axis=2)).argmin(axis=1)
            assert np.array_equal(relabeled, a.labels)


def _silhouette_of(points, labels, k):
    d = Dataset(tuple(f"p{i}" for i in range(len(points))), points)
    a = ClusterAssignment(
        labels=np.asarray(labels, dtype=np.int64),
        nearest_dist=np.zeros(len(labels)),
        centroids=Centroids(np.zeros((k, 1)), "ecia"),
        iterations=0,
        converged=True,
        wcss=0.0,
        history=(),
    )
    return silhouette_scores(d, a)


@criterion(7, "silhouettes bounded, oracle-exact, scale invariant; hand case verified")
def test_criterion_7_silhouette():
    from helpers import oracle_silhouette

    # hand case: two tight pairs far apart; edge and inner points differ
    r = _silhouette_of(np.array([[0.0], [1.0], [10.0], [11.0]]), [0, 0, 1, 1], 2)
    got = [s for _, _, s in r.per_point]
    assert np.allclose(
        got, [9.5 / 10.5, 8.5 / 9.5, 8.5 / 9.5, 9.5 / 10.5], atol=1e-9
    )
    rng = np.random.default_rng(103)
    for _ in range(40):
        n = int(rng.integers(4, 13))
        m = int(rng.integers(1, 4))
        k = int(rng.integers(2, min(n, 5)))
        pts = rng.normal(size=(n, m))
        labels = rng.integers(0, k, size=n)
        labels[:k] = np.arange(k)
        rep = _silhouette_of(pts, labels, k)
        scores = np.array([s for _, _, s in rep.per_point])
        assert (scores >= -1.0 - 1e-12).all() and (scores <= 1.0 + 1e-12).all()
        assert np.allclose(scores, oracle_silhouette(pts, labels), atol=1e-12)
        scaled = _silhouette_of(pts * 1000.0, labels, k)
        assert np.allclose(
            scores, [s for _, _, s in scaled.per_point], atol=1e-9
        )


@pytest.mark.xfail(
    strict=True,
    reason="the four hand-case scores are not all equal: the two inner points"
    " score 8.5/9.5, not 9.5/10.5 (difference ~1e-2, far beyond 1e-9)",
)
@criterion(7, "literal hand-case clause: ALL four scores equal 9.5/10.5 (known unattainable)")
def test_criterion_7_literal_all_equal_clause():
    r = _silhouette_of(np.array([[0.0], [1.0], [10.0], [11.0]]), [0, 0, 1, 1], 2)
    got = [s for _, _, s in r.per_point]
    assert np.allclose(got, [9.5 / 10.5] * 4, atol=1e-9)


@criterion(8, "report reproduces the published table shapes, accounting and argmax rule")
def test_criterion_8_table_structure():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "matrix.tsv"
        write_matrix(bump_matrix(genes=300, conditions=17), path)
        report = run_pipeline(PipelineConfig(str(path)))
    g_before, t_before = report.shape_before
    g_after, t_after = report.shape_after
    assert g_after <= g_before and t_after == t_before  # selection only drops genes
    assert sum(c.size for c in report.clusters) == g_after
    for c in report.clusters:
        if c.size > 0:
            assert c.mean_silhouette is not None
    best = max(
        (c for c in report.clusters if c.mean_silhouette is not None),
        key=lambda c: c.mean_silhouette,
    )
    assert report.compact_cluster == best.label
    # published per-cluster mean patterns, injected directly
    serum = [0.629, 0.532, 0.439, 0.347, 0.301, 0.397, 0.309]
    yeast = [0.621, 0.597, 0.584, 0.471, 0.421, 0.327, 0.697]
    for means, want in ((serum, 0), (yeast, 6)):
        rep = SilhouetteReport(
            (), tuple((j, 3, v) for j, v in enumerate(means)), float(np.mean(means)), -1
        )
        assert compact_cluster(rep) == want


@criterion(9, "noise-free planted clusters are recovered exactly up to relabeling")
def test_criterion_9_recovery():
    for genes, conditions, p, seed in ((60, 10, 4, 11), (90, 6, 5, 12), (40, 8, 1, 13)):
        m, labels = generate_synthetic(genes, conditions, p, seed=seed)
        a = cluster_pipeline(m, p)
        mapping = {}
        reverse = {}
        for got, want in zip(a.labels.tolist(), labels.tolist()):
            assert mapping.setdefault(got, want) == want
            assert reverse.setdefault(want, got) == got
        assert len(mapping) == p
