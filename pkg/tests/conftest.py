from fractions import Fraction

import pytest

from smpverify import (
    DISTINGUISHED_PHI,
    KappaContext,
    Scalar,
    build_polygon,
    eigenvectors_from_products,
    example_alt,
    example_main,
    example_main_special,
    normalize,
)


@pytest.fixture(scope="session")
def ctx11():
    return KappaContext(Fraction(11, 10))


@pytest.fixture(scope="session")
def main_exact(ctx11):
    return example_main_special(ctx11)


@pytest.fixture(scope="session")
def norm_exact(main_exact):
    return normalize(main_exact)


@pytest.fixture(scope="session")
def vw_exact(norm_exact):
    return eigenvectors_from_products(norm_exact)


@pytest.fixture(scope="session")
def poly_exact(norm_exact, vw_exact):
    v, w = vw_exact
    return build_polygon(norm_exact, v, w, Scalar.exact(Fraction(5, 4)))


@pytest.fixture(scope="session")
def main_float():
    return example_main(1.331, DISTINGUISHED_PHI)


@pytest.fixture(scope="session")
def alt_float():
    return example_alt(1.331, DISTINGUISHED_PHI)
