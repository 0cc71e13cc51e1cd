import pytest

from smpverify.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBounds:
    def test_table_shows_certified_value(self, capsys):
        code, out, _ = run(
            capsys, "bounds", "--family", "main", "--c", "11/10", "--max-n", "6"
        )
        assert code == 0
        rows = out.splitlines()
        assert rows[0].split()[:3] == ["n", "rho_bar_n", "rho_n"]
        n3 = rows[3].split()
        assert n3[0] == "3" and n3[1] == "1.21"
        assert "AAB;ABB" in rows[3]

    def test_polygon_norm_column_is_flat(self, capsys):
        code, out, _ = run(
            capsys,
            "bounds", "--family", "main", "--c", "11/10",
            "--max-n", "4", "--norm", "polygon", "--mu", "5/4",
        )
        assert code == 0
        for line in out.splitlines()[1:5]:
            assert line.split()[2] == "1.21"

    def test_zero_cap_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["bounds", "--family", "main", "--c", "11/10", "--max-n", "0"])
        assert exc.value.code == 2

    def test_csv_output(self, capsys, tmp_path):
        path = tmp_path / "bounds.csv"
        code, _, _ = run(
            capsys, "bounds", "--c", "11/10", "--max-n", "3", "--csv", str(path)
        )
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "n,rho_bar_n,rho_n,maximizers"
        assert lines[3].startswith("3,1.21,")


class TestCertify:
    def test_exact_certified(self, capsys):
        code, out, _ = run(
            capsys, "certify", "--family", "main", "--c", "11/10", "--mu", "5/4"
        )
        assert code == 0
        assert "rho_bar = 121/100" in out

    def test_escaping_scale_fails_with_named_check(self, capsys):
        code, out, _ = run(
            capsys, "certify", "--family", "main", "--c", "11/10", "--mu", "34/25"
        )
        assert code == 1
        assert "inclusions" in out and "b3" in out

    def test_alt_float_certified(self, capsys):
        code, out, _ = run(
            capsys,
            "certify", "--family", "alt", "--kappa", "1.331", "--mu", "1.07",
        )
        assert code == 0
        assert "certified" in out

    def test_decimal_mu_downgrades_with_warning(self, capsys):
        code, out, err = run(
            capsys, "certify", "--family", "main", "--c", "11/10", "--mu", "1.25"
        )
        assert code == 0
        assert "backend=float" in out
        assert "warning" in err

    def test_kv_report(self, capsys, tmp_path):
        path = tmp_path / "report.txt"
        code, out, _ = run(
            capsys,
            "certify", "--c", "11/10", "--mu", "5/4",
            "--kv", "--report", str(path),
        )
        assert code == 0
        assert "certified = true" in out
        text = path.read_text()
        assert "rho_bar = 121/100" in text
        assert "inclusion.a4.h = " in text

    def test_conflicting_parameter_flags(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["certify", "--c", "11/10", "--kappa", "1.3", "--mu", "5/4"])
        assert exc.value.code == 2

    def test_missing_parameters(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["certify", "--mu", "5/4"])
        assert exc.value.code == 2


class TestScan:
    def test_main_kappa_max(self, capsys):
        code, out, _ = run(capsys, "scan", "--family", "main")
        assert code == 0
        line = [l for l in out.splitlines() if l.startswith("kappa_max")][0]
        assert abs(float(line.split("=")[1]) - 1.447892) < 1e-5

    def test_alt_kappa_max(self, capsys):
        code, out, _ = run(capsys, "scan", "--family", "alt")
        assert code == 0
        line = [l for l in out.splitlines() if l.startswith("kappa_max")][0]
        assert abs(float(line.split("=")[1]) - 1.528580) < 1e-5

    def test_threshold_listing(self, capsys):
        code, out, _ = run(capsys, "scan", "--family", "main", "--kappa", "1.331")
        assert code == 0
        assert "mu1 = 1.21" in out
        assert "admissible mu interval" in out
        mu2_line = [l for l in out.splitlines() if "mu2 =" in l][0]
        assert abs(float(mu2_line.split("=")[1]) - 1.299757) < 1e-6

    def test_exact_threshold_listing(self, capsys):
        code, out, _ = run(capsys, "scan", "--family", "main", "--c", "11/10")
        assert code == 0
        assert "mu1 = 121/100" in out


class TestPermutable:
    def test_main_family(self, capsys):
        code, out, _ = run(capsys, "permutable", "--family", "main", "--c", "11/10")
        assert code == 0
        assert "permutable (trace/det criterion): True" in out
        assert "tau verified: True" in out

    def test_reducible_custom_pair(self, capsys, tmp_path):
        path = tmp_path / "pair.txt"
        path.write_text("# reducible pair\n2 0 0 3\n1 1 0 1\n")
        code, out, _ = run(capsys, "permutable", "--family", "custom",
                           "--matrices", str(path))
        assert code == 1
        assert "criterion inapplicable (reducible)" in out

    def test_mismatched_determinants(self, capsys, tmp_path):
        path = tmp_path / "pair.txt"
        path.write_text("0 -1000/1331 1331/1000 -1\n0 -2000/1331 2662/1000 -2\n")
        code, out, _ = run(capsys, "permutable", "--family", "custom",
                           "--matrices", str(path))
        assert code == 1
        assert "permutable (trace/det criterion): False" in out


class TestFigure:
    def test_writes_svg(self, capsys, tmp_path):
        path = tmp_path / "out.svg"
        code, out, _ = run(
            capsys,
            "figure", "--family", "main", "--c", "11/10",
            "--mu", "5/4", "--output", str(path),
        )
        assert code == 0
        assert path.read_text().startswith("<?xml")

    def test_float_failure_case_renders(self, capsys, tmp_path):
        path = tmp_path / "bad.svg"
        code, _, _ = run(
            capsys,
            "figure", "--kappa", "1.331", "--mu", "1.04", "--output", str(path),
        )
        assert code == 0 and path.exists()


class TestCustomCertify:
    def test_custom_exact_pair_with_context(self, capsys, tmp_path):
        path = tmp_path / "pair.txt"
        path.write_text(
            "# zero-corner pair at c = 11/10, with its swap similarity\n"
            "0 -1000/1331 1331/1000 -1\n"
            "0 -1331/1000 1000/1331 -1\n"
            "-1331000/2771561 1 -1 1331000/2771561\n"
        )
        code, out, _ = run(
            capsys,
            "certify", "--family", "custom", "--matrices", str(path),
            "--c", "11/10", "--mu", "5/4",
        )
        assert code == 0
        assert "rho_bar = 121/100" in out


class TestDeterminism:
    def test_identical_invocations_identical_stdout(self, capsys):
        argv = ["scan", "--family", "main", "--kappa", "1.331"]
        code1 = main(list(argv))
        out1 = capsys.readouterr().out
        code2 = main(list(argv))
        out2 = capsys.readouterr().out
        assert (code1, out1) == (code2, out2)


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert "35/35 checks passed" in out
    assert "FAIL" not in out
