import numpy as np
import pytest

from heatadequacy import synthetic, weather
from heatadequacy.errors import InvalidParams
from heatadequacy.synthetic import SynthParams


def quiet(**kw):
    base = dict(elec_temp_slope=0.0, elec_trend_mw_per_year=0.0, diurnal_amplitude_mw=0.0,
                weekday_amplitude_mw=0.0, elec_noise_mw=0.0, n_winters=1)
    base.update(kw)
    return SynthParams(**base)


def test_deterministic():
    a = synthetic.generate_synthetic(SynthParams(n_winters=1, seed=4))
    b = synthetic.generate_synthetic(SynthParams(n_winters=1, seed=4))
    c = synthetic.generate_synthetic(SynthParams(n_winters=1, seed=5))
    np.testing.assert_array_equal(a.electricity.values, b.electricity.values)
    np.testing.assert_array_equal(a.wind.onshore, b.wind.onshore)
    np.testing.assert_array_equal(a.gas.values, b.gas.values)
    assert not np.array_equal(a.electricity.values, c.electricity.values)


def test_constant_without_signal():
    d = synthetic.generate_synthetic(quiet())
    assert np.all(d.electricity.values == d.electricity.values[0])


@pytest.mark.parametrize("kw", [{"n_winters": 0}, {"n_zones": 0}, {"elec_temp_slope": 10.0},
                                {"gas_peak_to_mean": 0.9}, {"elec_noise_mw": -1.0},
                                {"temp_persistence": 1.0}])
def test_invalid(kw):
    with pytest.raises(InvalidParams):
        SynthParams(**kw)


def test_layout(synth_data):
    e = synth_data.electricity
    assert str(e.timestamps[0]) == "2013-07-01T00:00:00"
    assert len(e) == len(synth_data.wind) == synth_data.gas.dates.size * 24
    assert len(synth_data.temperatures.zones) == 14
    assert 0.0 <= synth_data.wind.onshore.min() and synth_data.wind.offshore.max() <= 1.0
    assert synth_data.gas.values.min() >= SynthParams().gas_floor_gwh


def test_gas_calibration(synth_data):
    p = SynthParams()
    ratio = synthetic.gas_peak_to_mean(synth_data, p.start_year, p.n_winters)
    assert ratio == pytest.approx(p.gas_peak_to_mean, rel=0.10)
    annual_twh = synth_data.gas.values.mean() * 365.25 / 1000
    assert annual_twh == pytest.approx(p.gas_annual_twh, rel=0.01)


def test_gas_peakier_than_electricity(synth_data):
    p = SynthParams()
    m = synthetic.season_mask(synth_data.gas.dates, p.start_year, p.n_winters)
    ed = weather.daily_demand(synth_data.electricity, "mean").values[m]
    g = synth_data.gas.values[m]
    assert g.max() / g.mean() > ed.max() / ed.mean()


def test_planted_slope_recovered(synth_data):
    t = weather.composite_temperature(synth_data.temperatures)
    d = weather.daily_demand(synth_data.electricity, "mean")
    fit = weather.fit_temperature_regression(d, t)
    assert abs(fit.k_t - SynthParams().elec_temp_slope) <= 3 * fit.se_kt


def test_wind_weakly_tied_to_temperature(synth_data):
    t = weather.composite_temperature(synth_data.temperatures).values
    w = synth_data.wind.onshore.reshape(-1, 24).mean(axis=1)
    assert abs(np.corrcoef(t, w)[0, 1]) < 0.2
    on = synth_data.wind.onshore
    off = synth_data.wind.offshore
    assert np.corrcoef(on, off)[0, 1] > 0.5
