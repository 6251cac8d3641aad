"""Reference-system baselines: unit reduction, config loading, band pairing."""

import pytest

from posenergy.baselines import (
    BaselineRecord,
    baseline_per_tx,
    load_baselines,
    per_second_energy,
    summarize,
)
from posenergy.ingestion import bundled
from posenergy.units import EnergyQuantity


VISA = BaselineRecord("visa", 2021, EnergyQuantity(646_000, "GJ"), 1736.0)
BTC_LOWER = BaselineRecord("bitcoin-lower", 2022, EnergyQuantity(50.41, "TWh"), 2.56)
BTC_UPPER = BaselineRecord("bitcoin-upper", 2022, EnergyQuantity(134.24, "TWh"), 2.56)


class TestPerSecondEnergy:
    def test_visa(self):
        # 646,000 GJ over a 365-day year
        assert per_second_energy(VISA) == pytest.approx(5.690146, abs=5e-7)

    def test_bitcoin_lower(self):
        assert per_second_energy(BTC_LOWER) == pytest.approx(1598.490614, abs=5e-7)

    def test_bitcoin_upper(self):
        assert per_second_energy(BTC_UPPER) == pytest.approx(4256.722476, abs=5e-7)

    def test_closed_form(self):
        # TWh -> kWh is exactly 1e9; the year is exactly 31,536,000 s
        assert per_second_energy(BTC_LOWER) == pytest.approx(
            50.41e9 / 31_536_000, rel=1e-12
        )


class TestBaselinePerTx:
    def test_visa(self):
        assert baseline_per_tx(VISA) == pytest.approx(0.00327773, abs=5e-9)

    def test_bitcoin_lower(self):
        assert baseline_per_tx(BTC_LOWER) == pytest.approx(624.41, abs=0.005)

    def test_bitcoin_upper(self):
        assert baseline_per_tx(BTC_UPPER) == pytest.approx(1662.78, abs=0.005)

    def test_is_rate_over_throughput(self):
        assert baseline_per_tx(VISA) == pytest.approx(
            per_second_energy(VISA) / VISA.tps, rel=1e-12
        )


class TestBaselineRecord:
    def test_rejects_zero_tps(self):
        with pytest.raises(ValueError):
            BaselineRecord("x", 2022, EnergyQuantity(1.0, "TWh"), 0.0)

    def test_rejects_empty_name(self):
        with pytest.raises(ValueError):
            BaselineRecord("", 2022, EnergyQuantity(1.0, "TWh"), 1.0)


class TestLoadBaselines:
    def test_bundled_config(self):
        records = {r.name: r for r in load_baselines(bundled("baselines.cfg"))}
        assert set(records) == {"visa", "bitcoin-lower", "bitcoin-upper"}
        visa = records["visa"]
        assert visa.period_year == 2021
        assert visa.annual_energy.value == 646_000
        assert visa.annual_energy.unit.value == "GJ"
        assert visa.tps == 1736.0
        assert records["bitcoin-upper"].annual_energy.value == 134.24

    def test_missing_file(self):
        with pytest.raises(FileNotFoundError):
            load_baselines("/nonexistent/baselines.cfg")

    def test_missing_key(self, tmp_path):
        cfg = tmp_path / "b.cfg"
        cfg.write_text("[visa]\nyear = 2021\namount = 646000\nunit = GJ\n")
        with pytest.raises(ValueError, match="tps"):
            load_baselines(cfg)

    def test_extra_keys_ignored(self, tmp_path):
        cfg = tmp_path / "b.cfg"
        cfg.write_text(
            "[visa]\nyear = 2021\namount = 646000\nunit = GJ\ntps = 1736\nnote = ESG report\n"
        )
        assert len(load_baselines(cfg)) == 1


class TestSummarize:
    def test_pairs_lower_upper(self):
        bands = summarize([BTC_LOWER, BTC_UPPER, VISA])
        names = [b.name for b in bands]
        assert names == ["bitcoin", "visa"]
        btc = bands[0]
        assert btc.kwh_per_tx_lower == pytest.approx(624.41, abs=0.005)
        assert btc.kwh_per_tx_upper == pytest.approx(1662.78, abs=0.005)
        assert btc.kwh_per_tx_mid == pytest.approx(1143.6, abs=0.05)
        assert btc.period_year == 2022

    def test_single_record_degenerate(self):
        (band,) = summarize([VISA])
        assert band.kwh_per_tx_lower == band.kwh_per_tx_upper
        assert band.kwh_per_second_lower == band.kwh_per_second_upper

    def test_kw_properties(self):
        (band,) = summarize([VISA])
        # kWh/s * 3600 s/h = kW
        assert band.kw_lower == pytest.approx(per_second_energy(VISA) * 3600, rel=1e-12)
        assert band.kw_lower == pytest.approx(20_484.53, abs=0.005)

    def test_incomplete_pair_rejected(self):
        with pytest.raises(ValueError, match="incomplete"):
            summarize([BTC_LOWER])

    def test_disagreeing_pair_rejected(self):
        other = BaselineRecord("bitcoin-upper", 2022, EnergyQuantity(134.24, "TWh"), 3.0)
        with pytest.raises(ValueError, match="disagrees"):
            summarize([BTC_LOWER, other])

    def test_sorted_output(self):
        bands = summarize([VISA, BTC_LOWER, BTC_UPPER])
        assert [b.name for b in bands] == ["bitcoin", "visa"]
