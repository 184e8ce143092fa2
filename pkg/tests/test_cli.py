import json
import re

import pytest

from noncong.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_expand_hauptmodul_head(capsys):
    code, out, _ = run(capsys, "expand", "--series", "t", "--terms", "3")
    assert code == 0
    assert out.strip() == "1, -8, 32"


def test_expand_cuspform_starts_at_q(capsys):
    code, out, _ = run(capsys, "expand", "--series", "h1", "--terms", "4")
    assert code == 0
    assert out.strip() == "0, 1, -4/3, -40/9"


def test_expand_newform_json(capsys):
    code, out, _ = run(capsys, "expand", "--series", "f", "--terms", "8", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["coefficients"][1] == "1"
    assert data["coefficients"][5] == "6*sqrt(2)"
    assert data["coefficients"][7] == "sqrt(-3)"


def test_expand_rejects_unknown_series():
    with pytest.raises(SystemExit) as info:
        main(["expand", "--series", "bogus", "--terms", "3"])
    assert info.value.code == 2


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_newform_passes(capsys):
    code, out, _ = run(capsys, "newform", "--nmax", "200")
    assert code == 0
    assert "c_35 = 6*sqrt(-6)" in out
    assert "0 violations" in out


def test_frobpoly_golden_prime(capsys):
    code, out, _ = run(capsys, "frobpoly", "--prime", "13", "--a", "2")
    assert code == 0
    assert "table row: match" in out
    assert "sqrt(-3)" in out


def test_frobpoly_inert_surface_four(capsys):
    code, out, _ = run(capsys, "frobpoly", "--prime", "11", "--a", "4")
    assert code == 0


def test_tables_full_table_one(capsys):
    code, out, _ = run(capsys, "tables", "--a", "2", "--primes", "5..59")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("Table1/")]
    assert len(lines) == 15
    assert all(",pass," in l for l in lines)


def test_tables_writes_delimited_and_figure(tmp_path, capsys):
    code, _, err = run(
        capsys, "tables", "--a", "2", "--primes", "5..11",
        "--out", str(tmp_path), "--format", "md",
    )
    assert code == 0
    assert (tmp_path / "tables.md").exists()
    assert (tmp_path / "trace-weil.png").stat().st_size > 1000
    assert "trace-weil.png" in err


def test_tables_json_shape(capsys):
    code, out, _ = run(capsys, "tables", "--a", "4", "--primes", "13,37", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert [r["claim"] for r in data["rows"]] == ["Table2/p=13", "Table2/p=37"]


def test_tables_skips_primes_off_table(capsys):
    code, out, err = run(capsys, "tables", "--a", "2", "--primes", "61")
    assert code == 0
    assert "skipping p=61" in err


def test_asd_check_text_and_json(capsys):
    code, out, _ = run(capsys, "asd-check", "--prime", "5")
    assert code == 0
    assert "matched:" in out

    code, out, _ = run(capsys, "asd-check", "--prime", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert len(data["pairings"]) == 4
    assert len(data["matching"]) == 2
    assert all(p["checked"] == 148 for p in data["pairings"])


def test_asd_check_rejects_level_prime(capsys):
    code, _, err = run(capsys, "asd-check", "--prime", "3")
    assert code == 1
    assert "level prime" in err


def test_qm_check(capsys):
    code, out, _ = run(capsys, "qm-check")
    assert code == 0
    assert "residual" in out
    assert "FAIL" not in out


def test_isogeny_check_default_primes(capsys):
    code, out, _ = run(capsys, "isogeny-check")
    assert code == 0
    assert out.count("-> ok") == 3


def test_isogeny_check_seed_determinism(capsys):
    _, first, _ = run(capsys, "isogeny-check", "--seed", "7", "--format", "json")
    _, second, _ = run(capsys, "isogeny-check", "--seed", "7", "--format", "json")
    assert first == second


def test_isogeny_check_rejects_bad_residue(capsys):
    code, _, err = run(capsys, "isogeny-check", "--primes", "19")
    assert code == 1
    assert "1 mod 4" in err


def test_twist_check_subset(capsys):
    code, out, _ = run(capsys, "twist-check", "--primes", "5..19")
    assert code == 0
    assert len(out.strip().splitlines()) == 6
    assert "FAIL" not in out


def test_verify_all_with_cache(tmp_path, capsys):
    cache = tmp_path / "cache"
    out_dir = tmp_path / "out"
    code, out, _ = run(
        capsys, "verify-all", "--cache-dir", str(cache), "--out", str(out_dir),
    )
    assert code == 0
    assert "overall: PASS (123 rows)" in out
    assert (out_dir / "report.csv").exists()
    assert (out_dir / "trace-weil.png").exists()
    assert (out_dir / "asd-margins.png").exists()

    # cached rerun must reproduce every verdict and witness
    code2, out2, _ = run(capsys, "verify-all", "--cache-dir", str(cache))
    assert code2 == 0

    def strip(text):
        return [
            re.sub(r"\(\d+\.\d+s\)", "", line)
            for line in text.splitlines()
            if line.startswith("PASS")
        ]

    assert strip(out) == strip(out2)


def test_cache_tampering_detected(tmp_path, capsys):
    cache = tmp_path / "cache"
    code, *_ = run(capsys, "tables", "--a", "2", "--primes", "5", "--cache-dir", str(cache))
    assert code == 0
    path = cache / "count_a2_p5_deg1.json"
    data = json.loads(path.read_text())
    data["contributions"][0] += 1
    data["total"] += 1
    path.write_text(json.dumps(data))
    code, _, err = run(
        capsys, "tables", "--a", "2", "--primes", "5",
        "--cache-dir", str(cache), "--no-cache",
    )
    assert code == 1
    assert "transparency" in err


def test_parser_lists_all_subcommands():
    parser = build_parser()
    subactions = [
        a for a in parser._actions if a.__class__.__name__ == "_SubParsersAction"
    ]
    names = set(subactions[0].choices)
    assert names == {
        "expand", "newform", "frobpoly", "tables", "asd-check",
        "qm-check", "isogeny-check", "twist-check", "verify-all",
    }
