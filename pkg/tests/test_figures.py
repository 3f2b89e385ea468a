import numpy as np
import pytest

from expanding_space import figures


@pytest.mark.parametrize("number", figures.FIGURE_NUMBERS)
def test_figure_passes_its_checks(number):
    fig = figures.figure(number)
    assert fig.filename == f"figure{number}.csv"
    assert figures.check_figure(number, fig.columns) == []
    lengths = {len(v) for v in fig.columns.values()}
    assert len(lengths) == 1


def test_unknown_figure():
    with pytest.raises(ValueError):
        figures.figure(10)


def test_checks_catch_violations():
    cols = dict(figures.figure(6).columns)
    cols["entropy_nats"] = cols["entropy_nats"][::-1].copy()
    cols["ln_entropy"] = cols["ln_entropy"] ** 2
    failures = figures.check_figure(6, cols)
    assert any("entropy decreases" in f for f in failures)
    assert any("not affine" in f for f in failures)


def test_comparison_starts_certain():
    fig1 = figures.figure(1).columns
    assert fig1["t"][0] == 1.0
    for name in figures.COMPARISON_SPECS:
        assert fig1[f"p_{name}"][0] == 1.0


def test_figure8_covers_second_regime():
    cols = figures.figure(8).columns
    assert cols["t"][0] == 23.0 and cols["t"][-1] == 35.0


def test_time_grid():
    assert np.array_equal(figures.time_grid(0, 10, 1), np.arange(11.0))
    assert len(figures.time_grid(0, 1, 0.1)) == 11
    assert figures.time_grid(0, 1.05, 0.5).tolist() == [0.0, 0.5, 1.0]
    with pytest.raises(ValueError):
        figures.time_grid(0, 1, -0.1)
    with pytest.raises(ValueError):
        figures.time_grid(1, 1, 0.1)


def test_affine_deviation():
    x = np.linspace(0, 1, 5)
    assert figures.affine_deviation(x, 3 * x + 1) < 1e-15
    assert figures.affine_deviation(x, x**2) == pytest.approx(0.25)
