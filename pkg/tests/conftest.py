import pytest

from patchrf.microstrip import PatchGeometry, Substrate, fringing_extension

F0 = 2.45e9


@pytest.fixture(scope="session")
def epoxy():
    """Glass-epoxy substrate of the 2.45 GHz reference design."""
    return Substrate(epsilon_r=4.32, h=1.52e-3, tan_delta=0.018, t=35e-6, sigma=1.83e7)


@pytest.fixture(scope="session")
def patch_2g45(epoxy):
    """The 35 mm x 28.95 mm patch tuned for 2.45 GHz."""
    return PatchGeometry(
        w=35e-3, l=28.95e-3, delta_l=fringing_extension(35e-3, epoxy), f0=F0
    )
