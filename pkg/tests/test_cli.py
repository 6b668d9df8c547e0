import json
import os
from fractions import Fraction as F

import pytest

from cpowers.cli import RunSpec, cache_key, main, parse_exponent, run
from cpowers.realcore import AlgebraicLogExponent, NumericBallExponent, RationalExponent


def test_parse_exponent_forms():
    assert isinstance(parse_exponent("1/2"), RationalExponent)
    assert parse_exponent("1/2").descriptor() == "rational:1/2"
    assert parse_exponent("3").descriptor() == "rational:3/1"
    assert parse_exponent("sqrt2").descriptor() == "ball:sqrt2"
    assert parse_exponent("pi/4").descriptor() == "ball:pi*1/4"
    assert isinstance(parse_exponent("ball:0.5000000010±1e-30"), NumericBallExponent)
    assert isinstance(parse_exponent("ball:0.75+-0.001"), NumericBallExponent)
    alg = parse_exponent("alglog:2:-1,-1,0,1:13/10,7/5")
    assert isinstance(alg, AlgebraicLogExponent)
    digits = parse_exponent("digits:10:corollary")
    assert digits.descriptor().startswith("digits:10:corollary")
    with pytest.raises(Exception):
        parse_exponent("nonsense!!")


def test_run_energy_and_exit_codes(tmp_path):
    spec = RunSpec("energy", {"c": "sqrt2", "N": "12"})
    status, payload = run(spec)
    assert status == 0
    body = json.loads(payload)
    assert body["nontrivial"] == 0 and body["certified"] is True

    bad = RunSpec("energy", {"c": "sqrt2"})  # missing N
    status, payload = run(bad)
    assert status == 2

    unknown = RunSpec("nope", {})
    assert run(unknown)[0] == 2


def test_cache_key_contract():
    a = RunSpec("energy", {"c": "sqrt2", "N": "12"}, precision=128, threads=1)
    b = RunSpec("energy", {"c": "sqrt2", "N": "12"}, precision=128, threads=8)
    assert cache_key(a) == cache_key(b)  # threads excluded
    c = RunSpec("energy", {"c": "sqrt2", "N": "12"}, precision=256)
    assert cache_key(a) != cache_key(c)  # precision included
    d = RunSpec("energy", {"c": "sqrt2", "N": "13"})
    assert cache_key(a) != cache_key(d)
    e = RunSpec("energy", {"c": "sqrt2", "N": "12"}, output="csv")
    assert cache_key(a) != cache_key(e)
    f = RunSpec("energy", {"c": "sqrt2", "N": "12"}, cache_dir="/tmp/x")
    assert cache_key(a) == cache_key(f)  # cache location excluded


def test_cache_replays_bytes(tmp_path):
    spec = RunSpec("energy", {"c": "sqrt2", "N": "10"}, cache_dir=str(tmp_path))
    s1, p1 = run(spec)
    cached = list(tmp_path.glob("*.json"))
    assert len(cached) == 1
    s2, p2 = run(spec)
    assert (s1, p1) == (s2, p2)
    # tamper with the cache: replay must reflect the stored bytes
    cached[0].write_bytes(b"sentinel\n")
    s3, p3 = run(spec)
    assert p3 == b"sentinel\n"


def test_determinism_across_threads_and_runs():
    for sub, params in [
        ("energy", {"c": "sqrt2", "N": "16"}),
        ("sporadic", {"n": "2"}),
        ("negative", {"n": "1", "N": "25"}),
        ("expsum", {"which": "fourth-moment", "c": "sqrt2", "N": "12"}),
    ]:
        runs = [run(RunSpec(sub, dict(params), threads=t))[1] for t in (1, 8, 1)]
        assert runs[0] == runs[1] == runs[2]


def test_csv_output():
    status, payload = run(RunSpec("energy", {"c": "1/2", "N": "8"}, output="csv"))
    assert status == 0
    lines = payload.decode().strip().split("\n")
    assert lines[0].startswith("N,c_descriptor,energy")
    assert len(lines) == 2
    status, payload = run(
        RunSpec("rational", {"a": "1", "q": "2", "sweep": "10,20"}, output="csv")
    )
    assert status == 0
    assert payload.decode().count("\n") == 3


def test_sporadic_subcommand():
    status, payload = run(RunSpec("sporadic", {"n": "2"}))
    body = json.loads(payload)
    assert body["quadruple"] == [16, 1, 8, 4]
    status, payload = run(RunSpec("sporadic", {"n": "2", "kind": "three-ap"}))
    assert json.loads(payload)["quadruple"] == [16, 1, 8, 8]
    status, _ = run(RunSpec("sporadic", {"n": "1"}))
    assert status == 2  # degenerate construction -> invalid parameters


def test_negative_subcommand_examples():
    body = json.loads(run(RunSpec("negative", {"n": "1", "N": "5"}))[1])
    assert body["count"] == 9
    body = json.loads(run(RunSpec("negative", {"n": "2", "N": "50"}))[1])
    assert body["count"] == 50
    assert body["classification_complete"] is False  # (5,35,7,7) is real


def test_bounds_subcommand_exact_big_integer():
    body = json.loads(
        run(RunSpec("bounds", {"which": "psi", "A": "1", "N": "2", "s": "1", "q": "1", "c8": "1"}))[1]
    )
    assert body["magnitude"]["log"]["exact"] == str(-(2**600))


def test_digits_subcommand_with_query():
    body = json.loads(
        run(RunSpec("digits", {"mode": "corollary", "count": "3", "query": "10000"}))[1]
    )
    assert body["positions"][1] == 10000
    assert body["query"]["digit"] == 1


def test_dissociate_and_verify_form_subcommands():
    body = json.loads(
        run(RunSpec("dissociate", {"set": "2,3,5", "c": "1/2"}))[1]
    )
    assert body["verdict"] == "dissociated"
    body = json.loads(run(RunSpec("dissociate", {"set": "16,8,4", "mult-indep": "true"}))[1])
    assert body["verdict"] == "dependent"
    body = json.loads(
        run(RunSpec("verify-form", {"coeffs": "1,1,1,-4", "points": "2,3,5,7", "c": "1/2"}))[1]
    )
    assert body["verdict"] == "nonvanishing"


def test_recheck_certificate_roundtrip(tmp_path):
    _, payload = run(RunSpec("dissociate", {"set": "2,3,5", "c": "1/2"}))
    cert_path = tmp_path / "cert.json"
    cert_path.write_bytes(payload)
    body = json.loads(run(RunSpec("recheck-certificate", {"file": str(cert_path)}))[1])
    assert body["matches"] is True


def test_figure_rendering(tmp_path):
    fig = tmp_path / "sweep.png"
    status, _ = run(
        RunSpec("rational", {"a": "1", "q": "2", "sweep": "20,50,100", "figure": str(fig)})
    )
    assert status == 0
    assert fig.exists() and fig.stat().st_size > 1000
    fig2 = tmp_path / "lv.png"
    status, _ = run(
        RunSpec("expsum", {"which": "large-values", "c": "sqrt2", "N": "8", "V": "8,4,2", "figure": str(fig2)})
    )
    assert status == 0 and fig2.exists()


def test_unresolved_exits_status_3():
    # wide exponent ball: adjacent difference values can never be separated
    status, payload = run(
        RunSpec("expsum", {"which": "window", "c": "ball:0.5+-0.01", "N": "9", "y": "2"})
    )
    assert status == 3 and payload.startswith(b"unresolved")


def test_uncertified_report_still_exits_zero():
    status, payload = run(RunSpec("energy", {"c": "ball:0.5+-0.01", "N": "9"}))
    assert status == 0
    assert json.loads(payload)["certified"] is False


def test_main_entrypoint(capsys, tmp_path):
    rc = main(["energy", "--c", "sqrt2", "--N", "8"])
    assert rc == 0
    out = capsys.readouterr().out
    assert '"certified":true' in out


def test_env_var_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("POWERSET_CACHE_DIR", str(tmp_path))
    from cpowers.cli import spec_from_args

    spec = spec_from_args(["energy", "--c", "sqrt2", "--N", "6"])
    assert spec.cache_dir == str(tmp_path)
