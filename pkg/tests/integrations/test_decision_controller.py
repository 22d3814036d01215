import json

import pytest


class TestDecide:
    def test_a4_over_f4(self, run_cli) -> None:
        result = run_cli("decide", "--field", "F:4", "--group", "A:4")
        assert result.exit_code == 0
        assert result.stdout.strip() == "EdOne (Theorem 1.5 via A4 ≅ G(3,2^2))"

    def test_c5_over_q(self, run_cli) -> None:
        result = run_cli("decide", "--field", "Q", "--group", "C:5")
        assert result.exit_code == 1
        assert result.stdout.strip() == "EdAtLeastTwo (Theorem 1.3: ζ₅+ζ₅⁻¹ ∉ K)"

    @pytest.mark.parametrize(
        "field,group,exit_code",
        [("F:2", "A:4", 1), ("F:4", "A:4", 0), ("F:2", "A:5", 1), ("F:4", "A:5", 0)],
    )
    def test_alternating_groups(self, run_cli, field: str, group: str, exit_code: int) -> None:
        assert run_cli("decide", "--field", field, "--group", group).exit_code == exit_code

    def test_trivial_group(self, run_cli) -> None:
        result = run_cli("decide", "--field", "Q", "--group", "1")
        assert result.exit_code == 0
        assert result.stdout.startswith("EdZero")

    def test_json(self, run_cli) -> None:
        result = run_cli("decide", "--field", "F:2", "--group", "D:2", "--json")
        assert result.exit_code == 1
        payload = result.json()
        assert payload["kind"] == "EdAtLeastTwo"
        assert payload["canonical"] == "D:2"
        assert payload["reason"]["theorem"] == "Theorem 1.4"
        failed = [c for c in payload["reason"]["checks"] if not c["value"]]
        assert failed == [
            {"predicate": "cardinality_at_least", "args": [4], "value": False, "text": "|K| < 4"}
        ]

    def test_json_is_deterministic(self, run_cli) -> None:
        first = run_cli("decide", "--field", "F:4", "--group", "A:5", "--json").stdout
        second = run_cli("decide", "--field", "F:4", "--group", "A:5", "--json").stdout
        assert first == second

    def test_field_parse_error(self, run_cli) -> None:
        result = run_cli("decide", "--field", "F:12", "--group", "C:3")
        assert result.exit_code == 2
        assert "NonPrimePower" in result.stderr

    def test_invalid_gnpr(self, run_cli) -> None:
        result = run_cli("decide", "--field", "F:8", "--group", "G:3,2,3")
        assert result.exit_code == 2
        assert "InvalidGnprParams" in result.stderr

    def test_json_errors(self, run_cli) -> None:
        result = run_cli("decide", "--field", "F:12", "--group", "C:3", "--json")
        assert result.exit_code == 2
        error = json.loads(result.stderr.strip().splitlines()[-1])["errors"][0]
        assert error["title"] == "NonPrimePower"

    def test_missing_option(self, run_cli) -> None:
        with pytest.raises(SystemExit) as e:
            run_cli("decide", "--field", "Q")
        assert e.value.code == 2


class TestCertifyAndVerify:
    def test_certificate_written_by_certify_verifies(self, run_cli, tmp_path) -> None:
        path = tmp_path / "a4.json"
        result = run_cli("certify", "--field", "F:4", "--group", "A:4", "--out", str(path))
        assert result.exit_code == 0
        document = json.loads(path.read_text(encoding="utf-8"))
        assert document["descriptor"] == "A:4"
        assert document["canonical"] == "G:3,2,2"
        assert [g["label"] for g in document["generators"]] == ["sigma_1_1", "sigma_1_2", "tau"]
        assert document["verification"]["order_ok"]

        verified = run_cli("verify", str(path))
        assert verified.exit_code == 0
        assert verified.stdout.startswith("order_ok=True iso_ok=True faithful_ok=True")

    def test_certificate_on_stdout(self, run_cli) -> None:
        result = run_cli("certify", "--field", "Q", "--group", "C:3")
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["generators"] == [{"label": "sigma", "matrix": [0, -1, 1, -1]}]
        assert document["realization"]["kind"] == "Rationals"

    def test_certify_is_byte_deterministic(self, run_cli, tmp_path) -> None:
        first, second = tmp_path / "first.json", tmp_path / "second.json"
        run_cli("certify", "--field", "Q(eta:5)", "--group", "D:5", "--out", str(first))
        run_cli("certify", "--field", "Q(eta:5)", "--group", "D:5", "--out", str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_certify_negative_verdict(self, run_cli) -> None:
        result = run_cli("certify", "--field", "Q", "--group", "C:5")
        assert result.exit_code == 1
        assert "NotEdOne" in result.stderr

    def test_tampered_certificate(self, run_cli, tmp_path) -> None:
        path = tmp_path / "c3.json"
        run_cli("certify", "--field", "Q", "--group", "C:3", "--out", str(path))
        document = json.loads(path.read_text(encoding="utf-8"))
        document["generators"][0]["matrix"] = [1, 0, 0, 1]
        path.write_text(json.dumps(document), encoding="utf-8")

        result = run_cli("verify", str(path), "--json")
        assert result.exit_code == 3
        assert result.json()["order_ok"] is False

    def test_certificate_moved_to_another_field(self, run_cli, tmp_path) -> None:
        path = tmp_path / "c4.json"
        run_cli("certify", "--field", "F:5", "--group", "C:4", "--out", str(path))
        document = json.loads(path.read_text(encoding="utf-8"))
        document["spec"] = "Q"
        path.write_text(json.dumps(document), encoding="utf-8")

        result = run_cli("verify", str(path), "--json")
        assert result.exit_code == 3
        report = result.json()
        assert report["order_ok"] and report["iso_ok"] and report["faithful_ok"]
        assert report["field_ok"] is False

    def test_natural_sl2_f3_certificate_is_rejected(self, run_cli, tmp_path) -> None:
        path = tmp_path / "sl2_3.json"
        document = {
            "spec": "F:3",
            "descriptor": "SL2:3",
            "realization": {"kind": "PrimeField", "p": 3, "k": 1},
            "generators": [
                {"label": "u", "matrix": [1, 1, 0, 1]},
                {"label": "l", "matrix": [1, 0, 1, 1]},
            ],
        }
        path.write_text(json.dumps(document), encoding="utf-8")
        result = run_cli("verify", str(path), "--json")
        assert result.exit_code == 3
        report = result.json()
        assert report["order_ok"] and report["iso_ok"]
        assert report["faithful_ok"] is False

    def test_verify_cap(self, run_cli, tmp_path) -> None:
        path = tmp_path / "a5.json"
        run_cli("certify", "--field", "F:4", "--group", "A:5", "--out", str(path))
        result = run_cli("verify", str(path), "--cap", "10")
        assert result.exit_code == 3
        assert "CapExceeded" in result.stderr

    def test_missing_certificate(self, run_cli, tmp_path) -> None:
        result = run_cli("verify", str(tmp_path / "missing.json"))
        assert result.exit_code == 2

    def test_malformed_certificate(self, run_cli, tmp_path) -> None:
        path = tmp_path / "broken.json"
        path.write_text(json.dumps({"spec": "Q", "descriptor": "C:3"}), encoding="utf-8")
        assert run_cli("verify", str(path)).exit_code == 2
