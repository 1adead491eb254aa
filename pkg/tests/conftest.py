import numpy as np
import pytest

from lmg_otto import CouplingPair, EngineParams, ScalingMode

# Default operating point used throughout the suite (couplings in units
# of the cold x coupling, temperatures likewise).
GXH, GYH, GXL, GYL = 1.01, 0.01, 1.0, 0.02
TH, TL = 0.4, 0.1


@pytest.fixture(scope="session")
def paper_params():
    return EngineParams(
        hot=CouplingPair(GXH, GYH),
        cold=CouplingPair(GXL, GYL),
        t_hot=TH,
        t_cold=TL,
        mode=ScalingMode.NON_EXTENSIVE,
    )


@pytest.fixture(scope="session")
def paper_params_extensive(paper_params):
    return paper_params.with_mode(ScalingMode.EXTENSIVE)


@pytest.fixture(scope="session")
def default_sweep(paper_params):
    """Both-mode sweep over N = 1..60 at the default operating point."""
    from lmg_otto import sweep_cycle

    return sweep_cycle(
        paper_params, 1, 60,
        modes=(ScalingMode.NON_EXTENSIVE, ScalingMode.EXTENSIVE),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
