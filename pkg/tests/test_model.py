import pytest

from rabichiral.model import EpsilonSplit, ModelParams, as_epsilon, detuning, validate


def test_validate_resonance_ok():
    assert validate(ModelParams(omega_a=1.0, g=0.5)).valid


def test_validate_ratio_too_small():
    r = validate(ModelParams(omega_a=3.0, g=0.1))
    assert not r.valid
    assert [v.field for v in r.violations] == ["omega_c/omega_a"]


def test_validate_negative_coupling():
    r = validate(ModelParams(g=-0.1))
    assert [v.field for v in r.violations] == ["g"]


def test_validate_reports_every_violation():
    r = validate(ModelParams(omega_a=3.0, g=-1.0))
    assert len(r.violations) == 2


@pytest.mark.parametrize(
    "wa, wc, eps, expected",
    [(1.0, 1.0, 0.0, 0.0), (1.0, 1.0, 0.5, 1.0), (1.0, 0.8, 0.1, 0.38)],
)
def test_detuning_examples(wa, wc, eps, expected):
    assert detuning(ModelParams(omega_a=wa, omega_c=wc), eps).delta_eps == pytest.approx(expected, abs=1e-15)


def test_delta0_is_exact():
    p = ModelParams(omega_a=1.37, omega_c=1.0)
    d = detuning(p, 0.0)
    assert d.delta_eps == d.delta_0 == 1.37 - 1.0


@pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5])
def test_epsilon_range(bad):
    with pytest.raises(ValueError):
        EpsilonSplit(bad)
    with pytest.raises(ValueError):
        as_epsilon(bad)


def test_epsilon_split_accepted():
    assert as_epsilon(EpsilonSplit(0.25)) == 0.25
