import numpy as np
import pytest

from fermidq.algebra import GrassmannAlgebra, GrassmannElement
from fermidq.scenario import hamiltonian_split, oscillator_hamiltonian
from fermidq.star import build_star_product, nac_form


@pytest.fixture
def theta_algebra():
    return GrassmannAlgebra(["th1", "th2", "th3", "th4"])


@pytest.fixture
def phase_algebra():
    return GrassmannAlgebra(
        ["th1", "th2", "th3", "th4", "pi1", "pi2", "pi3", "pi4"]
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20220530)


def random_element(algebra, rng, parity=None, density=0.7):
    """Random element; ``parity`` 0/1 restricts to even/odd grades."""
    data = {}
    for mask in range(algebra.dimension):
        if parity is not None and (mask.bit_count() & 1) != parity:
            continue
        if rng.random() < density:
            data[mask] = complex(rng.standard_normal(), rng.standard_normal())
    if not data:
        data = {(1 if parity else 0): 1.0 + 0j}
    return GrassmannElement(algebra, data)


def nac_setup(hbar=1.0, c=0.3, d=-0.2, omega=1.0):
    """Standard two-oscillator setup: algebra, product, H+, H-."""
    algebra = GrassmannAlgebra(["th1", "th2", "th3", "th4"])
    product = build_star_product(nac_form(algebra, hbar, c, d))
    h_plus, h_minus = hamiltonian_split(algebra, omega)
    return algebra, product, h_plus, h_minus


def hamiltonian(algebra, omega=1.0):
    return oscillator_hamiltonian(algebra, omega)
