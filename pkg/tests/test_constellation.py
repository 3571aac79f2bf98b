"""Codebook enumeration and the inverse norm power sum: brute-force
oracles, frozen regressions, invariance properties, and determinism."""

import math
import random

import numpy as np
import pytest

from latticesec.constellation import (
    TABLE1_ROWS,
    TABLE2_ROWS,
    SumReport,
    TableRow,
    carve_lowest_energy,
    enumerate_codebook,
    inverse_norm_power_sum,
    reports_to_csv,
    table_sweep,
)
from latticesec.errors import DiversityError, DomainError

# Frozen full-precision regressions for the shipped lattices, computed by
# this implementation and cross-checked against the published
# 6-significant-digit table values where those are reliable.
L1_S = {
    1: 1249545.6185517854,
    2: 3515786.767707168,
    3: 6094837.5397813935,
    4: 7659816.215786889,
}
L2_S = {
    1: 2837058.9849108425,
    2: 6460370.5284180185,
    3: 11649485.316265877,
    10: 36828681.6986842,
}
L3_TABLE2 = {
    # m: (size, p_max, p_ave, s_value)
    8: (79, 3.626028089755895, 2.6577758632568806, 1891949.6040485608),
    7: (2405, 35.56960888046257, 20.327726703592607, 7130240.828380058),
    12: (2401, 24.00085259409852, 15.241097660065165, 8572911.565456519),
    14: (50975, 195.97818485109235, 106.62799193311898, 17234509.75807331),
    20: (208411, 399.8990978987929, 217.31130845275564, 24071625.91483873),
}


def test_codebook_counts():
    eye = np.eye(4)
    assert sum(1 for _ in enumerate_codebook(eye, 1)) == 81
    assert sum(1 for _ in enumerate_codebook(eye, 1, p_lim=0.5)) == 1
    assert sum(1 for _ in enumerate_codebook(eye, 2)) == 625


def test_codebook_lex_order_and_zero():
    pts = list(enumerate_codebook(np.eye(2), 1))
    zs = [z for z, _ in pts]
    assert zs == sorted(zs)
    assert zs[0] == (-1, -1)
    assert (0, 0) in zs


def test_spherical_cut(lambda3):
    count = sum(1 for _ in enumerate_codebook(lambda3.generator, 8, p_lim=4.0))
    assert count == 79


def test_brute_force_oracle_n2():
    th = 0.7
    rot = np.array([[math.cos(th), math.sin(th)],
                    [-math.sin(th), math.cos(th)]]) * 1.3
    rep = inverse_norm_power_sum(rot, 2, p_lim=5.0, exponent=2)
    s = energy = p_max = 0.0
    size = 0
    for z1 in range(-2, 3):
        for z2 in range(-2, 3):
            x = np.array([z1, z2], float) @ rot
            q = float(x @ x)
            if q > 5.0:
                continue
            size += 1
            energy += q
            if (z1, z2) != (0, 0):
                p_max = max(p_max, q)
                s += 1.0 / (abs(x[0]) * abs(x[1])) ** 2
    assert rep.size == size
    assert rep.p_max == pytest.approx(p_max, rel=1e-12)
    assert rep.p_ave == pytest.approx(energy / size, rel=1e-12)
    assert rep.s_value == pytest.approx(s, rel=1e-12)


def test_orthonormal_closed_forms(lambda1, lambda2):
    for spec in (lambda1, lambda2):
        for m in (1, 2, 3):
            rep = inverse_norm_power_sum(spec.generator, m)
            assert rep.size == (2 * m + 1) ** 4
            assert rep.p_max == pytest.approx(4.0 * m * m, rel=1e-12)
            assert rep.p_ave == pytest.approx(4.0 * m * (m + 1) / 3.0, rel=1e-12)


def test_p_ave_includes_the_zero_word(lambda2):
    rep = inverse_norm_power_sum(lambda2.generator, 1)
    # 80 nonzero words of mean energy 27/10 average to 8/3 over all 81
    assert rep.p_ave == pytest.approx(8.0 / 3.0, rel=1e-12)
    assert rep.size == 81


def test_frozen_sums_lambda1(lambda1):
    for m, s in L1_S.items():
        rep = inverse_norm_power_sum(lambda1.generator, m, lattice_name="lambda1")
        assert rep.s_value == pytest.approx(s, rel=1e-12)


def test_frozen_sums_lambda2(lambda2):
    for m, s in L2_S.items():
        rep = inverse_norm_power_sum(lambda2.generator, m, lattice_name="lambda2")
        assert rep.s_value == pytest.approx(s, rel=1e-12)


def test_frozen_table2_rows(lambda3):
    rows = {row.m: row for row in TABLE2_ROWS}
    for m, (size, p_max, p_ave, s) in L3_TABLE2.items():
        row = rows[m]
        if row.target_size is not None:
            rep = carve_lowest_energy(lambda3.generator, row.m, row.target_size)
        else:
            rep = inverse_norm_power_sum(lambda3.generator, row.m, p_lim=row.p_lim)
        assert rep.size == size
        assert rep.p_max == pytest.approx(p_max, rel=1e-12)
        assert rep.p_ave == pytest.approx(p_ave, rel=1e-12)
        assert rep.s_value == pytest.approx(s, rel=1e-12)


def test_carve_against_direct_selection(lambda3):
    # independent reimplementation of the lowest-energy carve at m=1
    rep = carve_lowest_energy(lambda3.generator, 1, 11)
    pts = list(enumerate_codebook(lambda3.generator, 1))
    keyed = sorted(pts, key=lambda zx: (float(zx[1] @ zx[1]), zx[0]))
    chosen = keyed[:11]
    s = math.fsum(
        1.0 / np.prod(np.abs(x)) ** 3 for z, x in chosen if any(z))
    assert rep.size == 11
    assert rep.s_value == pytest.approx(s, rel=1e-12)
    assert rep.p_max == pytest.approx(
        max(float(x @ x) for z, x in chosen if any(z)), rel=1e-12)


def test_carve_selects_by_energy(lambda3):
    full = inverse_norm_power_sum(lambda3.generator, 2)
    carved = carve_lowest_energy(lambda3.generator, 2, 100)
    assert carved.size == 100
    assert carved.p_max <= full.p_max
    assert carved.target_size == 100


def test_monotonicity_random_configs(lambda1, lambda2, lambda3):
    rng = random.Random(987654321)
    specs = (lambda1, lambda2, lambda3)
    for _ in range(20):
        spec = rng.choice(specs)
        m = rng.randint(1, 3)
        p_lim = rng.uniform(2.0, 30.0)
        small = inverse_norm_power_sum(spec.generator, m, p_lim=p_lim)
        grown_m = inverse_norm_power_sum(spec.generator, m + 1, p_lim=p_lim)
        grown_p = inverse_norm_power_sum(spec.generator, m, p_lim=2.0 * p_lim)
        assert small.s_value <= grown_m.s_value
        assert small.s_value <= grown_p.s_value
        assert small.size <= min(grown_m.size, grown_p.size)


def test_sign_permutation_invariance(lambda3):
    rng = random.Random(13572468)
    base = inverse_norm_power_sum(lambda3.generator, 2, p_lim=9.0)
    entries = lambda3.generator.entries
    for _ in range(10):
        perm = rng.sample(range(4), 4)
        signs = [rng.choice((-1.0, 1.0)) for _ in range(4)]
        twisted = entries[:, perm] * np.array(signs)
        rep = inverse_norm_power_sum(twisted, 2, p_lim=9.0)
        assert rep.size == base.size
        assert rep.s_value == pytest.approx(base.s_value, rel=1e-12)
        assert rep.p_max == pytest.approx(base.p_max, rel=1e-12)
        assert rep.p_ave == pytest.approx(base.p_ave, rel=1e-12)


def test_workers_are_bit_identical(lambda3):
    reports = [
        inverse_norm_power_sum(lambda3.generator, 9, p_lim=64.0, jobs=jobs,
                               lattice_name="lambda3")
        for jobs in (1, 2, 8)
    ]
    csvs = {reports_to_csv([r], full_precision=True) for r in reports}
    assert len(csvs) == 1
    assert reports[0] == reports[1] == reports[2]


def test_diversity_failure_reported():
    with pytest.raises(DiversityError) as err:
        inverse_norm_power_sum(np.eye(2), 1)
    assert "coefficient vector" in str(err.value)
    with pytest.raises(DiversityError):
        carve_lowest_energy(np.eye(2), 1, 9)


def test_argument_validation(lambda3):
    gen = lambda3.generator
    with pytest.raises(DomainError):
        inverse_norm_power_sum(gen, 0)
    with pytest.raises(DomainError):
        inverse_norm_power_sum(gen, 1, p_lim=0.0)
    with pytest.raises(DomainError):
        inverse_norm_power_sum(gen, 1, exponent=0)
    with pytest.raises(DomainError):
        inverse_norm_power_sum(gen, 1, jobs=0)
    with pytest.raises(DomainError):
        carve_lowest_energy(gen, 1, 0)
    with pytest.raises(DomainError):
        carve_lowest_energy(gen, 1, 82)
    with pytest.raises(DomainError):
        inverse_norm_power_sum(np.zeros((2, 3)), 1)


def test_sum_report_guards():
    with pytest.raises(DomainError):
        SumReport("x", 2, 1, p_lim=4.0, size=5, p_max=9.0, p_ave=1.0,
                  s_value=1.0)
    with pytest.raises(DomainError):
        SumReport("x", 2, 1, p_lim=math.inf, size=5, p_max=1.0, p_ave=1.0,
                  s_value=0.0)


def test_csv_shape(lambda2):
    rep = inverse_norm_power_sum(lambda2.generator, 1, lattice_name="lambda2")
    text = reports_to_csv([rep])
    lines = text.splitlines()
    assert lines[0] == "lattice,m,p_lim,size,p_max,p_ave,s_value"
    assert lines[1] == "lambda2,1,inf,81,4.00,2.67,2.83706e+06"
    assert text.endswith("\n")


def test_csv_carve_row(lambda3):
    rep = carve_lowest_energy(lambda3.generator, 1, 11, lattice_name="lambda3")
    line = reports_to_csv([rep]).splitlines()[1]
    assert line.startswith("lambda3,1,,11,")


def test_table_row_defaults():
    row = TableRow(m=3)
    assert math.isinf(row.p_lim) and row.target_size is None
    assert len(TABLE1_ROWS) == 10
    assert len(TABLE2_ROWS) == 11


def test_table_sweep_row_order(lambda3):
    reports = table_sweep(lambda3, [TableRow(1), TableRow(2, p_lim=4.0)])
    assert [r.m for r in reports] == [1, 2]
    assert reports[0].lattice_name == "lambda3"
    assert math.isinf(reports[0].p_lim) and reports[1].p_lim == 4.0
