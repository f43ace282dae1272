import json
from pathlib import Path

import pytest

from xchannel import ChannelParams, SignalingParams, with_star_gammas

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def golden_data() -> dict:
    return json.loads((GOLDEN_DIR / "bounds_golden.json").read_text())


@pytest.fixture(scope="session")
def golden_point(golden_data):
    """Reference channel/signaling pair with both DPC coefficients starred."""
    pt = golden_data["point"]
    channel = ChannelParams(
        alpha12=float(pt["alpha12"]),
        alpha21=float(pt["alpha21"]),
        n1=float(pt["n1"]),
        n2=float(pt["n2"]),
        p1=float(pt["p1"]),
        p2=float(pt["p2"]),
    )
    sig = SignalingParams(
        p11=float(pt["p11"]),
        p12=float(pt["p12"]),
        p21=float(pt["p21"]),
        p22=float(pt["p22"]),
        beta=float(pt["beta"]),
    )
    return channel, with_star_gammas(channel, sig)


@pytest.fixture(scope="session")
def reference_channel():
    """The comparison setup used throughout: cross gains (0.8, 0.2), 10 dB."""
    return ChannelParams(alpha12=0.8, alpha21=0.2, n1=1.0, n2=1.0, p1=10.0, p2=10.0)
