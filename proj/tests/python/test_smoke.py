import json
import math
import os
import subprocess

import pytest

import extremes

SCHEMA = os.environ.get("EXTREMES_SCHEMA")
CLI = os.environ.get("EXTREMES_CLI")


def test_return_level_matches_published_parameters():
    p = extremes.GevParams(26.4, 2.1, -0.32)
    assert extremes.return_level(p, 100.0) == pytest.approx(31.5, abs=0.3)
    cold = extremes.GevParams(-41.9, 7.2, -0.37, extremes.Orientation.MINIMA)
    assert extremes.return_level(cold, 20.0) == pytest.approx(-54.9, abs=0.3)


def test_distribution_functions():
    p = extremes.GevParams(0.0, 1.0, 0.0)
    assert extremes.cdf(p, 0.0) == pytest.approx(math.exp(-1.0))
    assert extremes.cdf(p, 1.3) + extremes.survival(p, 1.3) == pytest.approx(1.0)
    assert extremes.quantile(p, extremes.cdf(p, 0.7)) == pytest.approx(0.7)
    with pytest.raises(Exception):
        extremes.GevParams(0.0, -1.0, 0.0)


def test_fit_recovers_a_large_sample():
    truth = extremes.GevParams(1.0, 2.0, -0.2)
    x = extremes.sample(truth, 3000, 7)
    ml = extremes.fit_ml(x)
    pwm = extremes.fit_pwm(x)
    assert ml.converged
    for f in (ml, pwm):
        assert f.params.mu == pytest.approx(1.0, abs=0.15)
        assert f.params.xi == pytest.approx(-0.2, abs=0.05)


def test_pwm_moments():
    assert extremes.pwm_moments([1.0, 2.0, 3.0]) == (2.0, 4.0 / 3.0, 1.0)


def test_bootstrap_and_block_extremes():
    daily = extremes.generate_daily(60, amplitude=10.0, phi=0.5, seed=3)
    assert len(daily) == 60 * 365
    maxima = extremes.annual_maxima(daily)
    minima = extremes.annual_minima(daily)
    assert len(maxima) == 60 and len(minima) == 59
    assert len(extremes.multi_year_extremes(maxima, 5)) == 12
    boot = extremes.bootstrap_fit(maxima, n_replicates=50, return_periods=[50.0])
    assert boot["n_failed"] == 0
    assert boot["envelope_mu"]["lower"] < boot["envelope_mu"]["upper"]


def test_run_command_and_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    with open(SCHEMA) as fh:
        schema = json.load(fh)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    code, _, err = extremes.run_command(
        ["simulate", "--years", "110", "--seed", "2", "--csv", str(a), "--csv-b", str(b),
         "--delta-mean", "1", "--out", str(tmp_path / "sim.json")])
    assert code == 0, err
    commands = [
        ["fit", "--input", str(a), "--bootstrap", "30"],
        ["return-levels", "--params=0,1,-0.1"],
        ["change", "--a", str(a), "--b", str(b), "--bootstrap", "30", "--compare-block", "5"],
        ["qq", "--input", str(a)],
        ["block-diagnostic", "--input", str(a), "--bootstrap", "20"],
        ["segment-experiment", "--a", str(a), "--b", str(b), "--L", "50"],
    ]
    docs = [json.loads((tmp_path / "sim.json").read_text())]
    for args in commands:
        code, out, err = extremes.run_command(args)
        assert code == 0, err
        docs.append(json.loads(out))
    for doc in docs:
        assert doc["schema"] == "v1"
        jsonschema.validate(doc, schema)


def test_segment_experiment_binding():
    a = extremes.generate_daily(40, amplitude=8.0, seed=1)
    b = extremes.generate_daily(40, mean=1.0, amplitude=8.0, seed=2)
    exp = extremes.segment_experiment(a, b, segment_years=20)
    assert exp["n_pairs"] == 2


@pytest.mark.skipif(not CLI, reason="command-line tool path not set")
def test_executable_is_deterministic(tmp_path):
    csv = tmp_path / "s.csv"
    subprocess.run([CLI, "simulate", "--years", "30", "--csv", str(csv)], check=True, capture_output=True)
    runs = [subprocess.run([CLI, "fit", "--input", str(csv), "--bootstrap", "20", "--threads", t],
                           check=True, capture_output=True).stdout for t in ("1", "2")]
    assert runs[0] == runs[1]
    bad = subprocess.run([CLI, "fit", "--input", str(csv), "--L", "30"], capture_output=True)
    assert bad.returncode != 0
