import json

import pytest

from supercong.cli import _parse_instance, _parse_int_range, _parse_primes, main
from supercong.verifier import CLAIMS, Claim, ClaimInstance


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestParsing:
    def test_ranges(self):
        assert _parse_int_range("1..4") == (1, 2, 3, 4)
        assert _parse_int_range("2,5,9") == (2, 5, 9)

    def test_primes_filtered(self):
        assert _parse_primes("8..14") == (11, 13)
        assert _parse_primes("4,5,6,7") == (5, 7)

    def test_instance(self):
        assert _parse_instance("p=11,r=2,m=1") == {"p": 11, "r": 2, "m": 1}
        assert _parse_instance("p=11,alphas=2,b=1") == {"p": 11, "alphas": (2,), "b": 1}
        assert _parse_instance("p=11,alphas=1+1+2") == {"p": 11, "alphas": (1, 1, 2)}
        with pytest.raises(ValueError):
            _parse_instance("p=")


class TestVerifyCommand:
    def test_pass_exit_zero(self, capsys):
        rc, out, _ = run(capsys, ["verify", "--claims", "EQ-1.1", "--primes", "5..13"])
        assert rc == 0
        assert "## EQ-1.1" in out  # md to stdout by default

    def test_unknown_claim_exit_two(self, capsys):
        rc, _, err = run(capsys, ["verify", "--claims", "NOPE"])
        assert rc == 2 and "unknown claim id" in err

    def test_usage_error_exit_two(self, capsys):
        assert run(capsys, ["verify", "--format", "yaml"])[0] == 2
        assert run(capsys, ["frobnicate"])[0] == 2

    def test_injected_false_claim_exit_one(self, capsys, monkeypatch):
        claim = Claim(
            "TEST-FALSE",
            "0 == 1 (mod p)",
            lambda inst: None,
            lambda inst, ctx: (0, 1, inst.p, ""),
            lambda grid: iter([ClaimInstance("TEST-FALSE", 5)]),
        )
        monkeypatch.setitem(CLAIMS, "TEST-FALSE", claim)
        rc, out, _ = run(capsys, ["verify", "--claims", "TEST-FALSE", "--format", "csv"])
        assert rc == 1
        assert ",fail," in out

    def test_injected_error_claim_exit_two(self, capsys, monkeypatch):
        def broken(inst, ctx):
            raise ValueError("boom")

        claim = Claim(
            "TEST-ERR",
            "n/a",
            lambda inst: None,
            broken,
            lambda grid: iter([ClaimInstance("TEST-ERR", 5)]),
        )
        monkeypatch.setitem(CLAIMS, "TEST-ERR", claim)
        assert run(capsys, ["verify", "--claims", "TEST-ERR"])[0] == 2

    def test_conjecture_finding_does_not_fail_exit(self, capsys):
        rc, out, _ = run(
            capsys,
            ["verify", "--claims", "CONJ-5.1-w10", "--primes", "11..11", "--m", "1",
             "--format", "csv"],
        )
        assert rc == 0
        assert ",finding," in out

    def test_skip_only_run_exits_zero(self, capsys):
        rc, out, _ = run(
            capsys,
            ["verify", "--claims", "THM-1.1-ii", "--primes", "11..11", "--r", "1..1",
             "--m", "1", "--format", "csv"],
        )
        assert rc == 0 and ",skip," in out

    def test_instance_mode_and_replay_round_trip(self, capsys):
        rc, out, _ = run(
            capsys,
            ["verify", "--claims", "LEM-3.1", "--instance", "p=11,n=3,alphas=1+1+1,b=1",
             "--format", "json"],
        )
        assert rc == 0
        rows = json.loads(out)["reports"]
        assert len(rows) == 1 and rows[0]["status"] == "pass"
        rc2, out2, _ = run(capsys, rows[0]["replay"].split()[1:])
        assert rc2 == 0
        assert json.loads(out2)["reports"] == rows

    def test_deterministic_output_files(self, capsys, tmp_path):
        argv = ["verify", "--claims", "EQ-1.1,LEM-3.3,LEM-3.4", "--primes", "11..13",
                "--format", "json"]
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run(capsys, argv + ["--out", str(a)])[0] == 0
        assert run(capsys, argv + ["--out", str(b)])[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_timings_break_nothing_but_add_field(self, capsys):
        rc, out, _ = run(
            capsys,
            ["verify", "--claims", "EQ-1.1", "--primes", "5..5", "--format", "json",
             "--timings"],
        )
        assert rc == 0
        assert "elapsed_ms" in json.loads(out)["reports"][0]

    def test_cache_second_run_evaluates_nothing(self, capsys, tmp_path):
        cache = tmp_path / "cache.csv"
        argv = ["verify", "--claims", "EQ-1.1", "--primes", "5..31",
                "--cache", str(cache), "--stats", "--format", "csv"]
        rc, out1, err1 = run(capsys, argv)
        assert rc == 0 and "comp_sum evaluations: 9 " in err1  # nine primes in 5..31
        rc, out2, err2 = run(capsys, argv)
        assert rc == 0 and "comp_sum evaluations: 0 " in err2
        assert out1 == out2

    def test_cache_env_var_default(self, capsys, tmp_path, monkeypatch):
        cache = tmp_path / "env_cache.csv"
        monkeypatch.setenv("SUPERCONG_CACHE", str(cache))
        run(capsys, ["verify", "--claims", "EQ-1.1", "--primes", "5..7"])
        assert cache.exists()

    def test_parallel_jobs_match_sequential(self, capsys, tmp_path):
        base = ["verify", "--claims", "EQ-1.1,LEM-3.5", "--primes", "11..19",
                "--format", "csv"]
        a, b = tmp_path / "seq.csv", tmp_path / "par.csv"
        run(capsys, base + ["--out", str(a)])
        run(capsys, base + ["--out", str(b), "--jobs", "2"])
        assert a.read_bytes() == b.read_bytes()


class TestComputeCommand:
    def test_bernoulli(self, capsys):
        assert run(capsys, ["compute", "bernoulli", "--k", "4"])[1].strip() == "-1/30"
        assert run(capsys, ["compute", "bernoulli", "--k", "4", "--mod-p", "11"])[1].strip() == "4"

    def test_bernoulli_pole_is_error(self, capsys):
        rc, _, err = run(capsys, ["compute", "bernoulli", "--k", "10", "--mod-p", "11"])
        assert rc == 2 and "PoleError" in err

    def test_mhs(self, capsys):
        rc, out, _ = run(capsys, ["compute", "mhs", "--N", "4", "--s", "1", "--p", "101", "--r", "1"])
        assert rc == 0 and out.strip() == "61"
        rc, out, _ = run(
            capsys,
            ["compute", "mhs", "--N", "9", "--s", "1", "--p", "5", "--r", "1", "--restricted"],
        )
        assert rc == 0

    def test_s_and_r(self, capsys):
        rc, out, _ = run(capsys, ["compute", "s", "--n", "7", "--m", "1", "--p", "11", "--r", "2"])
        assert rc == 0 and out.strip().isdigit()
        rc, out, _ = run(capsys, ["compute", "r", "--n", "7", "--m", "2", "--p", "11"])
        assert rc == 0

    def test_count(self, capsys):
        rc, out, _ = run(capsys, ["compute", "count", "--n", "3", "--a", "1", "--m", "1", "--p", "5"])
        assert rc == 0 and out.strip() == "15"

    def test_u(self, capsys):
        rc, out, _ = run(capsys, ["compute", "u", "--b", "1", "--alphas", "1,1", "--p", "7", "--r", "2"])
        assert rc == 0 and out.strip() == "35"


class TestSearchCommand:
    def test_q3_text(self, capsys):
        rc, out, _ = run(capsys, ["search", "--family", "qd", "--d", "3", "--primes", "7..31"])
        assert rc == 0
        assert "status: found" in out and "candidate: -2" in out

    def test_q9_json_with_report(self, capsys):
        rc, out, _ = run(
            capsys,
            ["search", "--family", "qd", "--d", "9", "--primes", "11..31", "--format",
             "json", "--report"],
        )
        assert rc == 0
        doc = json.loads(out)
        assert doc["status"] == "not-found-up-to-bound"
        assert doc["bound"] > 0 and len(doc["observations"]) > 0

    def test_c_family(self, capsys):
        rc, out, _ = run(
            capsys,
            ["search", "--family", "c", "--d", "7", "--m", "2", "--primes", "11..31"],
        )
        assert rc == 0 and "candidate: 3" in out


class TestOracleCommand:
    def test_agreement(self, capsys):
        rc, out, _ = run(capsys, ["oracle", "--n", "3", "--m", "1", "--p", "5"])
        assert rc == 0 and "agree" in out

    def test_bounded_and_target(self, capsys):
        rc, out, _ = run(capsys, ["oracle", "--n", "7", "--m", "2", "--p", "5", "--bounded"])
        assert rc == 0
        rc, out, _ = run(capsys, ["oracle", "--n", "2", "--m", "1", "--p", "3", "--target", "4"])
        assert rc == 0

    def test_scale_guard_is_cli_error(self, capsys):
        rc, _, err = run(capsys, ["oracle", "--n", "7", "--m", "1", "--p", "61"])
        assert rc == 2 and "ScaleGuardError" in err
