import numpy as np
import pytest

from magicnoise import (
    Dimension,
    DimensionMismatchError,
    NoThresholdError,
    OptimizerConfig,
    PhaseOneResult,
    PolytopeCertificate,
    ThresholdResult,
    canonical_mub_frame,
    crit_threshold,
    decode_frame,
    depolarize,
    gross_representation_values,
    kd_threshold,
    magic_state,
    maximally_mixed,
    mub_frame_stabilizer_check,
    omega,
    polytope_threshold,
    random_state,
    stabilizer_polytope_membership,
    stabilizer_states,
    standard_operational_set,
    wigner_threshold,
)
from magicnoise import thresholds as thresholds_module

FAST = OptimizerConfig(restarts=4, max_iterations=150, seed=3)


class TestThresholdResultType:
    def test_rejects_bad_kind(self):
        with pytest.raises(ValueError):
            ThresholdResult("magic", 0.5, False, {}, (), 1e-6)

    def test_rejects_out_of_range_p(self):
        with pytest.raises(ValueError):
            ThresholdResult("wigner", 1.5, False, {}, (), 1e-6)


class TestWignerThreshold:
    def test_strange_value(self, strange):
        res = wigner_threshold(strange)
        assert res.kind == "wigner"
        assert not res.upper_bound
        assert abs(res.p - 0.75) < 1e-9
        assert abs(res.certificate["w_min"] + 1.0 / 3.0) < 1e-12
        assert res.certificate["negative_points"] == [[0, 0]]

    def test_norrell_value(self, norrell):
        res = wigner_threshold(norrell)
        assert abs(res.p - 0.6) < 1e-9
        assert abs(res.certificate["w_min"] + 1.0 / 6.0) < 1e-12

    def test_stabilizer_state_is_zero(self, d3):
        rho = magic_state("custom", d3, custom_vec=[1, 0, 0])
        assert wigner_threshold(rho).p == 0.0

    def test_maximally_mixed_is_zero(self, d3):
        assert wigner_threshold(maximally_mixed(d3)).p == 0.0

    def test_grid_check_agrees(self, strange):
        res = wigner_threshold(strange)
        assert abs(res.certificate["grid_check"] - res.p) <= res.tol + 1e-9

    def test_scan_trace_is_sorted_and_nonincreasing(self, strange):
        res = wigner_threshold(strange)
        ps = [p for p, _ in res.scan]
        ws = [w for _, w in res.scan]
        assert ps == sorted(ps)
        assert all(b <= a + 1e-12 for a, b in zip(ws, ws[1:]))
        assert any(abs(p - res.p) < 1e-12 for p in ps)

    def test_certificate_reverifies(self, strange, d3, gross3):
        res = wigner_threshold(strange)
        rep = np.array(res.certificate["representation_re"])
        rebuilt = np.array(
            [
                np.trace(
                    f.entries @ depolarize(strange, res.p).entries
                ).real
                for f in gross3.analysis
            ]
        )
        assert np.abs(rep - rebuilt).max() < 1e-9
        witness = np.abs(np.minimum(0.0, rebuilt)).sum()
        assert abs(witness - res.certificate["witness"]) < 1e-9
        assert res.certificate["witness"] <= 1e-9

    def test_dimension_mismatch(self, strange):
        with pytest.raises(DimensionMismatchError):
            wigner_threshold(strange, dim=Dimension(5))

    def test_representation_values_helper(self, strange):
        vals = gross_representation_values(strange)
        assert vals.shape == (9,)
        assert abs(vals.min() + 1.0 / 3.0) < 1e-12
        assert abs(vals.sum() - 1.0) < 1e-12


class TestPolytopeMembership:
    def test_maximally_mixed_uniform_certificate(self, d3):
        cert = stabilizer_polytope_membership(maximally_mixed(d3))
        assert cert is not None
        assert cert.coefficients.shape == (12,)
        assert cert.coefficients.min() >= -1e-10
        assert abs(cert.coefficients.sum() - 1.0) < 1e-8
        # reconstruction is what's guaranteed; coefficients may be any
        # convex decomposition degenerate with the uniform one
        projs = np.stack([op.entries for op in stabilizer_states(d3).states])
        recon = np.tensordot(cert.coefficients, projs, axes=1)
        assert np.abs(recon - np.eye(3) / 3).max() < 1e-8

    def test_strange_state_is_outside(self, strange):
        assert stabilizer_polytope_membership(strange) is None

    def test_heavily_depolarized_strange_is_inside(self, strange):
        assert stabilizer_polytope_membership(depolarize(strange, 0.99)) is not None

    def test_boundary_flip(self, strange):
        assert stabilizer_polytope_membership(depolarize(strange, 0.74)) is None
        assert stabilizer_polytope_membership(depolarize(strange, 0.76)) is not None

    def test_every_stabilizer_state_is_inside(self, d3):
        for op in stabilizer_states(d3).states:
            cert = stabilizer_polytope_membership(op)
            assert cert is not None
            assert cert.residual < 1e-8

    def test_indeterminate_band_warns(self, strange, monkeypatch):
        fake = PhaseOneResult(
            x=np.full(12, 1.0 / 12.0), objective=1e-9, iterations=1
        )
        monkeypatch.setattr(thresholds_module, "phase_one", lambda a, b: fake)
        with pytest.warns(RuntimeWarning, match="indeterminate"):
            assert stabilizer_polytope_membership(strange) is None


class TestPolytopeThreshold:
    def test_strange_coincides_with_wigner(self, strange):
        res = polytope_threshold(strange, tol=1e-6)
        assert res.kind == "polytope"
        assert not res.upper_bound
        assert abs(res.p - 0.75) <= 2e-6
        assert res.certificate["coincidence_with_wigner"] == "CONFIRMED"

    def test_norrell_coincides_with_wigner(self, norrell):
        res = polytope_threshold(norrell, tol=1e-6)
        assert abs(res.p - 0.6) <= 2e-6
        assert res.certificate["coincidence_with_wigner"] == "CONFIRMED"

    def test_stabilizer_state_threshold_is_zero(self, d3):
        rho = magic_state("custom", d3, custom_vec=[0, 1, 0])
        res = polytope_threshold(rho, tol=1e-4)
        assert res.p <= 1e-4

    @pytest.mark.parametrize("seed", range(6))
    def test_containment_for_random_states(self, seed, d3):
        rho = random_state(d3, seed)
        tol = 1e-5
        p_stab = polytope_threshold(rho, tol=tol).p
        p_w = wigner_threshold(rho).p
        assert p_w <= p_stab + 2 * tol

    def test_certificate_reverifies(self, strange, d3):
        res = polytope_threshold(strange, tol=1e-6)
        c = np.array(res.certificate["coefficients"])
        projs = np.stack([op.entries for op in stabilizer_states(d3).states])
        recon = np.tensordot(c, projs, axes=1)
        target = depolarize(strange, res.p).entries
        assert np.abs(recon - target).max() < 1e-8
        assert abs(c.sum() - 1.0) < 1e-8
        assert c.min() >= -1e-10

    def test_scan_records_each_evaluation(self, strange):
        res = polytope_threshold(strange, tol=1e-3)
        # one endpoint probe + ceil(log2(1/1e-3)) midpoints
        assert len(res.scan) == 1 + 10


class TestKDThreshold:
    def test_strange_state_scope_is_near_zero(self, strange):
        res = kd_threshold(strange, config=FAST, tol=1e-3)
        assert res.kind == "kd"
        assert res.upper_bound
        assert res.seed == FAST.seed
        assert res.p <= 2e-3
        assert res.certificate["objective"] <= 1e-9
        assert res.certificate["ordering_satisfied"]
        assert res.certificate["diagnostics"] == []

    def test_exactly_one_ordering_outcome(self, strange):
        res = kd_threshold(strange, config=FAST, tol=1e-3)
        gap = "POTENTIAL_GAP" in res.certificate["diagnostics"]
        assert res.certificate["ordering_satisfied"] != gap

    def test_certificate_reverifies(self, strange):
        res = kd_threshold(strange, config=FAST, tol=1e-3)
        frame = decode_frame(strange.dim, np.array(res.certificate["frame_params"]))
        opset = standard_operational_set(strange, res.p)
        value = omega(res.p, frame, opset, scope="state")
        assert abs(value - res.certificate["objective"]) < 1e-9
        assert abs(value - res.certificate["witness_recheck"]) < 1e-9

    def test_mixed_state_certificate_is_canonical_frame(self, d3):
        res = kd_threshold(maximally_mixed(d3), config=FAST, tol=1e-3)
        assert res.p <= 1e-3
        frame = decode_frame(d3, np.array(res.certificate["frame_params"]))
        canon = canonical_mub_frame(d3)
        for got, want in zip(frame.analysis, canon.analysis):
            assert np.abs(got.entries - want.entries).max() < 1e-9

    def test_defining_basis_state_is_zero_threshold(self, d3):
        rho = magic_state("custom", d3, custom_vec=[0, 0, 1])
        res = kd_threshold(rho, config=FAST, tol=1e-3)
        assert res.p <= 1e-3

    def test_subtheory_scope_has_no_threshold(self, strange):
        quick = OptimizerConfig(restarts=2, max_iterations=60, seed=1)
        with pytest.raises(NoThresholdError):
            kd_threshold(strange, config=quick, scope="subtheory", tol=0.25)

    def test_scan_matches_bisection_budget(self, strange):
        res = kd_threshold(strange, config=FAST, tol=1e-2)
        assert len(res.scan) == 1 + 7  # endpoint + ceil(log2(100))


class TestCritThreshold:
    def test_takes_minimum_family(self, strange):
        res = crit_threshold(strange, config=FAST, tol=1e-3)
        assert res.kind == "crit"
        assert res.upper_bound
        assert res.certificate["family"] == "kd"
        per = res.certificate["per_family"]
        assert abs(per["gross"] - 0.75) < 1e-9
        assert res.p == per["kd"]
        assert res.p <= per["gross"]

    def test_gross_only_equals_wigner(self, strange):
        res = crit_threshold(strange, families=("gross",))
        assert res.p == wigner_threshold(strange).p
        assert res.certificate["family"] == "gross"
        assert res.seed is None

    def test_family_alias(self, strange):
        res = crit_threshold(
            strange, families=("kd-parametrized",), config=FAST, tol=1e-2
        )
        assert res.certificate["family"] == "kd"

    def test_unknown_family_rejected(self, strange):
        with pytest.raises(ValueError):
            crit_threshold(strange, families=("gross", "fancy"))

    def test_empty_families_rejected(self, strange):
        with pytest.raises(ValueError):
            crit_threshold(strange, families=())

    def test_all_families_failing_raises(self, strange):
        quick = OptimizerConfig(restarts=2, max_iterations=60, seed=1)
        with pytest.raises(NoThresholdError):
            crit_threshold(
                strange,
                families=("kd",),
                config=quick,
                scope="subtheory",
                tol=0.25,
            )


class TestMubFrameStabilizerCheck:
    def test_qutrit_report(self, d3):
        report = mub_frame_stabilizer_check(d3)
        assert len(report["per_state"]) == 12
        assert report["defining_max_penalty"] < 1e-12
        assert report["verdict"] in ("CONFIRMED", "REFUTED")
        defining = [e for e in report["per_state"] if e["defining_basis"]]
        others = [e for e in report["per_state"] if not e["defining_basis"]]
        assert len(defining) == 6 and len(others) == 6

    def test_qutrit_beyond_defining_bases_penalty(self, d3):
        report = mub_frame_stabilizer_check(d3)
        # the other six stabilizer states carry imaginary weight 2/sqrt(3)
        assert abs(report["beyond_defining_max_penalty"] - 2.0 / np.sqrt(3.0)) < 1e-9
        assert report["verdict"] == "REFUTED"

    @pytest.mark.parametrize("d", [5, 7])
    def test_larger_dimensions_defining_bases_still_classical(self, d):
        report = mub_frame_stabilizer_check(Dimension(d))
        assert report["defining_max_penalty"] < 1e-12
        assert len(report["per_state"]) == d * (d + 1)
