import numpy as np
import pytest

from conftest import ZETA_FIXTURE
from rmtlab.zeta import ZeroTableError, ZetaZeros, load_zeros, zeta_normalized_spacings

FIRST_TEN = ["14.134725142", "21.022039639", "25.010857580", "30.424876126", "32.935061588",
             "37.586178159", "40.918719012", "43.327073281", "48.005150881", "49.773832478"]


def test_two_zeros(tmp_path):
    path = tmp_path / "z.txt"
    path.write_text("14.134725\n21.022040\n")
    z = load_zeros(path, 0.0)
    assert z.gammas.size == 2
    delta = zeta_normalized_spacings(z)
    expected = 6.887315 / (2 * np.pi) * np.log(14.134725 / (2 * np.pi))
    assert delta == pytest.approx([expected], rel=1e-12)
    assert delta[0] == pytest.approx(0.8887, abs=5e-4)


def test_round_trip(tmp_path):
    path = tmp_path / "z.txt"
    path.write_text("\n".join(FIRST_TEN) + "\n\n")
    z = load_zeros(path)
    assert [f"{g:.9f}" for g in z.gammas] == FIRST_TEN


def test_unit_log_density():
    gap = 0.1
    start = 2 * np.pi * np.e
    z = ZetaZeros(start + gap * np.arange(3))
    assert zeta_normalized_spacings(z)[0] == pytest.approx(gap / (2 * np.pi))


def test_offset_enters_density():
    z = ZetaZeros([10.0, 11.0], offset=5.0)
    assert zeta_normalized_spacings(z)[0] == pytest.approx(np.log(15 / (2 * np.pi)) / (2 * np.pi))


def test_bad_files(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("\n\n")
    with pytest.raises(ZeroTableError):
        load_zeros(empty)
    bad = tmp_path / "bad.txt"
    bad.write_text("14.1\nabc\n")
    with pytest.raises(ZeroTableError, match=":2:"):
        load_zeros(bad)
    unsorted = tmp_path / "unsorted.txt"
    unsorted.write_text("21.0\n14.1\n")
    with pytest.raises(ZeroTableError):
        load_zeros(unsorted)


def test_domain_errors():
    with pytest.raises(ValueError):
        zeta_normalized_spacings(ZetaZeros([1.0, 2.0]))
    with pytest.raises(ValueError):
        zeta_normalized_spacings(ZetaZeros([20.0]))
    with pytest.raises(ValueError):
        ZetaZeros([20.0, 21.0], offset=-1.0)


@pytest.mark.skipif(not ZETA_FIXTURE.exists(), reason="zero table not present")
def test_fixture_unfolding():
    z = load_zeros(ZETA_FIXTURE)
    assert z.gammas.size == 10 ** 4
    assert z.gammas[0] == pytest.approx(14.134725142, abs=1e-8)
    delta = zeta_normalized_spacings(z)
    assert delta.size == z.gammas.size - 1
    assert np.all(delta > 0)
    assert abs(delta.mean() - 1) <= 0.02
