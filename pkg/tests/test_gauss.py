import math
from pathlib import Path

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from xchannel import (
    ChannelParams,
    JointCovariance,
    SignalingParams,
    SingularCovarianceError,
    assemble,
    conditional_mutual_information,
    mutual_information,
)
from xchannel.gauss import LABELS, covariance_violations

GOLDEN_DIR = Path(__file__).parent / "golden"


def make_channel(**kw):
    base = dict(alpha12=0.8, alpha21=0.2, n1=1.0, n2=1.0, p1=10.0, p2=10.0)
    base.update(kw)
    return ChannelParams(**base)


@st.composite
def valid_points(draw):
    ch = ChannelParams(
        alpha12=draw(st.floats(0.0, 1.5)),
        alpha21=draw(st.floats(0.0, 1.5)),
        n1=draw(st.floats(0.5, 2.0)),
        n2=draw(st.floats(0.5, 2.0)),
        p1=draw(st.floats(0.1, 1e3)),
        p2=draw(st.floats(0.1, 1e3)),
    )
    sig = SignalingParams.from_splits(
        ch,
        split1=draw(st.floats(0.05, 0.95)),
        beta=draw(st.floats(0.05, 1.0)),
        split2=draw(st.floats(0.05, 0.95)),
        gamma1=draw(st.floats(-1.5, 1.5)),
        gamma2=draw(st.floats(-1.5, 1.5)),
    )
    return ch, sig


class TestAssemble:
    def test_degenerate_scheme_is_independent_inputs(self):
        # beta=1, gammas 0: direct encoding is its own base variable
        ch = make_channel()
        sig = SignalingParams(p11=4.0, p12=6.0, p21=3.0, p22=7.0, beta=1.0)
        lin, cov = assemble(ch, sig)
        np.testing.assert_allclose(
            lin.coefficients[0], [1, 0, 0, 0, 0, 0], atol=0
        )
        expected_y1 = 4.0 + 6.0 + 0.2**2 * (3.0 + 7.0) + 1.0
        assert cov.var("Y1") == pytest.approx(expected_y1, rel=1e-15)

    def test_decoupled_channels_cross_covariance(self):
        ch = make_channel(alpha12=0.0, alpha21=0.0)
        sig = SignalingParams(p11=4.0, p12=6.0, p21=3.0, p22=7.0, beta=1.0)
        _, cov = assemble(ch, sig)
        assert cov.sigma[LABELS.index("Y1"), LABELS.index("Y2")] == 0.0

    def test_noise_coefficients_pinned(self):
        ch = make_channel()
        sig = SignalingParams.from_splits(ch, 0.5, 0.8, 0.5, gamma1=0.3, gamma2=0.4)
        lin, _ = assemble(ch, sig)
        iy1, iy2 = LABELS.index("Y1"), LABELS.index("Y2")
        assert lin.coefficients[iy1, 4] == 1.0 and lin.coefficients[iy1, 5] == 0.0
        assert lin.coefficients[iy2, 5] == 1.0 and lin.coefficients[iy2, 4] == 0.0
        assert np.all(lin.base_variances >= 0)

    def test_transmit_rows_kept_for_diagnostics(self):
        ch = make_channel()
        sig = SignalingParams.from_splits(ch, 0.5, 0.8, 0.5)
        lin, _ = assemble(ch, sig)
        base = lin.base_variances
        assert float(lin.x1_row @ (base * lin.x1_row)) == pytest.approx(
            ch.p1, rel=1e-12
        )
        # reinforcement brings Tx2 exactly back to its full budget
        assert float(lin.x2_row @ (base * lin.x2_row)) == pytest.approx(
            ch.p2, rel=1e-12
        )

    def test_golden_covariance(self, golden_point):
        ch, sig = golden_point
        _, cov = assemble(ch, sig)
        golden = np.loadtxt(GOLDEN_DIR / "covariance_golden.txt")
        np.testing.assert_allclose(cov.sigma, golden, rtol=1e-12, atol=1e-14)

    def test_invalid_point_rejected(self):
        ch = make_channel()
        sig = SignalingParams(p11=0.0, p12=10.0, p21=2.0, p22=3.0, beta=0.5)
        with pytest.raises(Exception, match="theta undefined"):
            assemble(ch, sig)

    @settings(max_examples=150, deadline=None)
    @given(point=valid_points())
    def test_psd_and_noise_floor(self, point):
        ch, sig = point
        _, cov = assemble(ch, sig)
        assert covariance_violations(cov, ch.n1, ch.n2) == []


class TestMutualInformation:
    def test_independent_components_zero(self):
        ch = make_channel(alpha12=0.0, alpha21=0.0)
        sig = SignalingParams(p11=4.0, p12=6.0, p21=3.0, p22=7.0, beta=1.0)
        _, cov = assemble(ch, sig)
        assert mutual_information(cov, ["M11"], ["Y2"]) == 0.0

    def test_half_bit_case(self):
        # Y = M12 + N with Var(M12) = N gives exactly 1/2 log2 2 = 0.5 bit
        n = 3.0
        sigma = np.eye(6)
        i_m12, i_y1 = LABELS.index("M12"), LABELS.index("Y1")
        sigma[i_m12, i_m12] = n
        sigma[i_y1, i_y1] = 2 * n
        sigma[i_m12, i_y1] = sigma[i_y1, i_m12] = n
        cov = JointCovariance(sigma=sigma)
        assert mutual_information(cov, ["M12"], ["Y1"]) == pytest.approx(0.5, abs=1e-12)

    def test_zero_variance_component_carries_nothing(self):
        ch = make_channel()
        sig = SignalingParams(p11=10.0, p12=0.0, p21=5.0, p22=5.0, beta=1.0)
        _, cov = assemble(ch, sig)
        assert mutual_information(cov, ["M11"], ["M12"]) == 0.0

    def test_label_and_index_addressing_agree(self, golden_point):
        ch, sig = golden_point
        _, cov = assemble(ch, sig)
        by_label = mutual_information(cov, ["M11", "M21"], ["Y1"])
        by_index = mutual_information(cov, [0, 1], [4])
        assert by_label == by_index

    def test_overlapping_sets_rejected(self, golden_point):
        ch, sig = golden_point
        _, cov = assemble(ch, sig)
        with pytest.raises(ValueError):
            mutual_information(cov, ["M11"], ["M11", "Y1"])
        with pytest.raises(ValueError):
            mutual_information(cov, [], ["Y1"])

    def test_perfectly_correlated_components_singular(self):
        # p11 = 0 with gamma1 != 0 makes M11 a copy of M12
        ch = make_channel()
        sig = SignalingParams(
            p11=0.0, p12=10.0, p21=5.0, p22=5.0, beta=1.0, gamma1=0.7
        )
        _, cov = assemble(ch, sig)
        with pytest.raises(SingularCovarianceError):
            mutual_information(cov, ["M11"], ["M12"])

    @settings(max_examples=150, deadline=None)
    @given(point=valid_points())
    def test_nonnegative_and_symmetric(self, point):
        ch, sig = point
        _, cov = assemble(ch, sig)
        fwd = mutual_information(cov, ["M11", "M21"], ["Y1"])
        rev = mutual_information(cov, ["Y1"], ["M11", "M21"])
        assert fwd >= 0.0
        assert fwd == pytest.approx(rev, rel=1e-12, abs=1e-15)


class TestConditionalMutualInformation:
    def test_independent_conditioning_is_noop(self):
        ch = make_channel(alpha12=0.0, alpha21=0.0)
        sig = SignalingParams(p11=4.0, p12=6.0, p21=3.0, p22=7.0, beta=1.0)
        _, cov = assemble(ch, sig)
        # M22 is independent of (M12, Y2)... use Rx1 side: M21/M22 do not
        # reach Y1 here, so conditioning on M21 changes nothing
        plain = mutual_information(cov, ["M11"], ["Y1"])
        conditional = conditional_mutual_information(cov, ["M11"], ["Y1"], ["M21"])
        assert conditional == pytest.approx(plain, abs=1e-12)

    def test_empty_conditioning_reduces_to_mi(self, golden_point):
        ch, sig = golden_point
        _, cov = assemble(ch, sig)
        assert conditional_mutual_information(
            cov, ["M12"], ["Y2"], []
        ) == pytest.approx(mutual_information(cov, ["M12"], ["Y2"]), abs=1e-15)

    def test_degenerate_independent_input_formula(self):
        # gamma1 = 0, beta = 1: I(M21; Y1 | M11) has a hand-derived value
        ch = make_channel(alpha12=0.8, alpha21=0.3, p1=9.0, p2=12.0)
        sig = SignalingParams(p11=4.0, p12=5.0, p21=7.0, p22=5.0, beta=1.0)
        _, cov = assemble(ch, sig)
        got = conditional_mutual_information(cov, ["M21"], ["Y1"], ["M11"])
        a21 = ch.alpha21
        expected = 0.5 * math.log2(
            1.0 + a21**2 * sig.p21 / (a21**2 * sig.p22 + sig.p12 + ch.n1)
        )
        assert got == pytest.approx(expected, abs=1e-12)

    def test_chain_rule_at_golden_point(self, golden_point):
        ch, sig = golden_point
        _, cov = assemble(ch, sig)
        joint = mutual_information(cov, ["M11", "M21"], ["Y1"])
        chained = mutual_information(cov, ["M11"], ["Y1"]) + \
            conditional_mutual_information(cov, ["M21"], ["Y1"], ["M11"])
        assert joint == pytest.approx(chained, abs=1e-9)

    @settings(max_examples=150, deadline=None)
    @given(point=valid_points())
    def test_chain_rule_random(self, point):
        ch, sig = point
        _, cov = assemble(ch, sig)
        joint = mutual_information(cov, ["M12", "M22"], ["Y2"])
        chained = mutual_information(cov, ["M12"], ["Y2"]) + \
            conditional_mutual_information(cov, ["M22"], ["Y2"], ["M12"])
        assert joint == pytest.approx(chained, abs=1e-9)

    @settings(max_examples=100, deadline=None)
    @given(point=valid_points(), scale=st.floats(0.01, 100.0))
    def test_joint_scaling_leaves_mi_unchanged(self, point, scale):
        ch, sig = point
        _, cov = assemble(ch, sig)
        scaled_ch = ChannelParams(
            alpha12=ch.alpha12, alpha21=ch.alpha21,
            n1=scale * ch.n1, n2=scale * ch.n2,
            p1=scale * ch.p1, p2=scale * ch.p2,
        )
        scaled_sig = SignalingParams(
            p11=scale * sig.p11, p12=scale * sig.p12,
            p21=scale * sig.p21, p22=scale * sig.p22,
            beta=sig.beta, gamma1=sig.gamma1, gamma2=sig.gamma2,
        )
        _, cov2 = assemble(scaled_ch, scaled_sig)
        base = mutual_information(cov, ["M11", "M21"], ["Y1"])
        scaled = mutual_information(cov2, ["M11", "M21"], ["Y1"])
        assert scaled == pytest.approx(base, abs=1e-9)
